#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ldl/constants.hpp"
#include "ldl/family.hpp"
#include "ldl/lower_order.hpp"
#include "ldl/test_functions.hpp"

namespace ldl {

// What evaluate_S needs from a family: per-prime moments, the limit class
// densities (for the modeled tail) and the Atilde constant.
struct MomentModel {
    std::string name;
    std::function<PrimeMoments(u64)> moments;
    std::optional<ExpansionShape> shape;
    std::function<AtildeConstant()> atilde;
    bool paper_family = true;   // false for the idealized cusp model
};

MomentModel family_model(const FamilySpec& fam, std::size_t atilde_primes = 10'000);
// A_0 = p, A_1 = 0, A_2 = p^2 and no bad fibres: the Sato-Tate idealization.
MomentModel cusp_model(std::size_t atilde_primes = 1'000'000);

enum class TailModel { none, pnt };
const char* to_string(TailModel t);

struct EvaluateOptions {
    std::optional<u64> prime_limit;   // default: the required limit
    TailModel tail = TailModel::none;
};

struct SPiece {
    std::string name;
    double value = 0, main = 0, sieve = 0;
    double tail_bound = 0;
    double modeled_tail = 0;   // part of value supplied by the tail model
};

struct SDecomposition {
    std::string family;
    std::string phi;
    double sigma = 0;
    double log_R = 0;
    u64 prime_limit = 0;
    u64 largest_prime = 0;
    TailModel tail = TailModel::none;
    double log_required_limit = 0;
    std::vector<SPiece> pieces;   // S_A', S_0, S_1, S_2, S_Atilde
    double total = 0;
    double tail_bound = 0;
    double main_coefficient = 0;          // coefficient of phi(0)
    double main_term_estimate = 0;        // main_coefficient * phi(0)
    double lower_order_coefficient = 0;   // (total - main) log R / (2 phihat(0))
    u64 atilde_largest_prime = 0;
};

// log of the smallest prime limit that exhausts the support of every
// phihat-weighted sum (up to terms covered by the reported bound).
double log_required_limit(const MomentModel& m, const TestFunctionPair& f, double log_R);

SDecomposition evaluate_S(const MomentModel& m, const TestFunctionPair& f, double log_R,
                          const EvaluateOptions& opt = {});
SDecomposition evaluate_S(const FamilySpec& fam, const TestFunctionPair& f, double log_R,
                          const EvaluateOptions& opt = {});
// One prime pass shared by several log R values.
std::vector<SDecomposition> evaluate_S_batch(const MomentModel& m, const TestFunctionPair& f,
                                             const std::vector<double>& log_Rs, const EvaluateOptions& opt = {});

// Residuals total - (main phi(0) + c 2 phihat(0)/L) and the least-squares
// exponent of |residual| against L.
struct AsymptoticFit {
    double c = 0;
    std::vector<double> L, residual, extracted;
    double exponent = 0;
};
AsymptoticFit fit_residuals(const std::vector<SDecomposition>& runs, const TestFunctionPair& f, double c);

nlohmann::json s_decomposition_to_json(const SDecomposition& s);

} // namespace ldl
