#include "ldl/hiprec.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <mutex>

namespace ldl::hp {

namespace {

using mpf = boost::multiprecision::cpp_bin_float_50;

// Literal strings as embedded above, kept textual so the comparison is not
// limited by long double.
struct Lit { const char* name; const char* text; };
constexpr Lit kLits[] = {
    {"euler_gamma", "0.577215664901532860606512090082"},
    {"log_2pi", "1.83787706640934548356065947281"},
    {"log_2", "0.693147180559945309417232121458"},
    {"log_3", "1.09861228866810969139524523692"},
    {"gamma_1_3", "2.67893853470774763365569294097"},
    {"gamma_1_4", "3.62560990822190831193068515587"},
    {"log_gamma_1_3", "0.985420646927767069187174036978"},
    {"log_gamma_1_4", "1.28802252469807745737061044022"},
};

// atanh(1/n) = sum 1/((2k+1) n^{2k+1})
mpf atanh_inv(unsigned n) {
    mpf x = mpf(1) / n, x2 = x * x, term = x, s = 0;
    for (unsigned k = 0; k < 400; ++k) {
        mpf t = term / (2 * k + 1);
        s += t;
        if (t < mpf("1e-55")) break;
        term *= x2;
    }
    return s;
}

// arctan(1/n)
mpf atan_inv(unsigned n) {
    mpf x = mpf(1) / n, x2 = x * x, term = x, s = 0;
    for (unsigned k = 0; k < 400; ++k) {
        mpf t = term / (2 * k + 1);
        s += (k % 2 ? -t : t);
        if (t < mpf("1e-55")) break;
        term *= x2;
    }
    return s;
}

mpf log2_() { return 2 * atanh_inv(3); }               // 2 = (1+1/3)/(1-1/3)
mpf log3_() { return log2_() + 2 * atanh_inv(5); }     // 3/2 = (1+1/5)/(1-1/5)
mpf pi_() { return 16 * atan_inv(5) - 4 * atan_inv(239); }

// log of a positive mpf via argument reduction by powers of 2 and atanh.
mpf log_(mpf x) {
    int e = 0;
    while (x > 2) { x /= 2; ++e; }
    while (x < 1) { x *= 2; --e; }
    mpf y = (x - 1) / (x + 1), y2 = y * y, term = y, s = 0;
    for (unsigned k = 0; k < 2000; ++k) {
        mpf t = term / (2 * k + 1);
        s += t;
        if (t < mpf("1e-55")) break;
        term *= y2;
    }
    return 2 * s + e * log2_();
}

mpf exp_(mpf x) {
    int n = 0;
    while (abs(x) > mpf("0.5")) { x /= 2; ++n; }
    mpf s = 1, term = 1;
    for (unsigned k = 1; k < 200; ++k) {
        term *= x / k;
        s += term;
        if (abs(term) < mpf("1e-55")) break;
    }
    while (n-- > 0) s *= s;
    return s;
}

// Bernoulli B_{2k}, k = 1..10.
const mpf& bern(int k) {
    static const mpf b[] = {
        mpf(1) / 6, mpf(-1) / 30, mpf(1) / 42, mpf(-1) / 30, mpf(5) / 66,
        mpf(-691) / 2730, mpf(7) / 6, mpf(-3617) / 510, mpf(43867) / 798, mpf(-174611) / 330};
    return b[k - 1];
}

// Euler-Maclaurin: gamma = H_n - log n - 1/(2n) + sum B_{2k} / (2k n^{2k})
mpf euler_gamma_() {
    const unsigned n = 60;
    mpf h = 0;
    for (unsigned k = 1; k <= n; ++k) h += mpf(1) / k;
    mpf s = h - log_(mpf(n)) - mpf(1) / (2 * n);
    mpf nn = mpf(n) * n, pw = nn;
    for (int k = 1; k <= 10; ++k) {
        s += bern(k) / (2 * k * pw);
        pw *= nn;
    }
    return s;
}

// Stirling series for log Gamma at x + N, then shift down.
mpf log_gamma_(mpf x) {
    const unsigned N = 60;
    mpf shift = 0;
    for (unsigned k = 0; k < N; ++k) shift += log_(x + k);
    mpf z = x + N;
    mpf s = (z - mpf("0.5")) * log_(z) - z + log_(2 * pi_()) / 2;
    mpf z2 = z * z, pw = z;
    for (int k = 1; k <= 10; ++k) {
        s += bern(k) / (mpf(2 * k) * (2 * k - 1) * pw);
        pw *= z2;
    }
    return s - shift;
}

std::string fmt(const mpf& v) { return v.str(32, std::ios_base::fixed); }

SelfTestRow compare(const Lit& lit, const mpf& v) {
    SelfTestRow r;
    r.name = lit.name;
    r.literal = lit.text;
    r.recomputed = fmt(v);
    mpf ref(lit.text);
    mpf rel = abs((v - ref) / ref);
    r.rel_error = rel.convert_to<double>();
    r.ok = rel < mpf("1e-20");
    return r;
}

} // namespace

std::vector<SelfTestRow> literal_self_test() {
    mpf pi = pi_();
    mpf lg13 = log_gamma_(mpf(1) / 3);
    mpf lg14 = log_gamma_(mpf(1) / 4);
    std::vector<SelfTestRow> rows;
    rows.push_back(compare(kLits[0], euler_gamma_()));
    rows.push_back(compare(kLits[1], log_(2 * pi)));
    rows.push_back(compare(kLits[2], log2_()));
    rows.push_back(compare(kLits[3], log3_()));
    rows.push_back(compare(kLits[4], exp_(lg13)));
    rows.push_back(compare(kLits[5], exp_(lg14)));
    rows.push_back(compare(kLits[6], lg13));
    rows.push_back(compare(kLits[7], lg14));
    return rows;
}

bool literals_ok() {
    static std::once_flag once;
    static bool ok = false;
    std::call_once(once, [] {
        ok = true;
        for (auto& r : literal_self_test()) ok = ok && r.ok;
    });
    return ok;
}

} // namespace ldl::hp
