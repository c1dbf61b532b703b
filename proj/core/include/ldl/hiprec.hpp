#pragma once

#include <string>
#include <vector>

namespace ldl::hp {

// 30 significant digits; double keeps what it can.
inline constexpr long double euler_gamma = 0.577215664901532860606512090082L;
inline constexpr long double log_2pi = 1.83787706640934548356065947281L;
inline constexpr long double log_2 = 0.693147180559945309417232121458L;
inline constexpr long double log_3 = 1.09861228866810969139524523692L;
inline constexpr long double gamma_1_3 = 2.67893853470774763365569294097L;
inline constexpr long double gamma_1_4 = 3.62560990822190831193068515587L;
inline constexpr long double log_gamma_1_3 = 0.985420646927767069187174036978L;
inline constexpr long double log_gamma_1_4 = 1.28802252469807745737061044022L;

struct SelfTestRow {
    std::string name;
    std::string literal;
    std::string recomputed;
    double rel_error = 0.0;
    bool ok = false;
};

// Recomputes every literal from an independent series in 50-digit binary
// floating point and compares the decimal strings to 20 digits.
std::vector<SelfTestRow> literal_self_test();
bool literals_ok();  // cached result of literal_self_test()

} // namespace ldl::hp
