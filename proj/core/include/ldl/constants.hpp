#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ldl/family.hpp"
#include "ldl/primes.hpp"

namespace ldl {

struct CatalogEntry {
    std::string name;
    std::string formula;
    std::vector<Method> methods;          // first is the default
    Truncation truncation;                // default truncation
    std::optional<double> paper_value;
    std::optional<double> tolerance;      // stated error, or the agreed reproduction tolerance
    std::string citation;
    std::string family;                   // family-dependent constants only
    std::string part;                     // "main" | "sieve" | ""
};

const std::vector<CatalogEntry>& constant_catalog();
const CatalogEntry& catalog_entry(const std::string& name);   // ErrorKind::catalog
std::vector<std::string> constant_names();

// Catalog defaults apply for whatever is not given.
ConstantResult compute_constant(const std::string& name,
                                std::optional<Truncation> truncation = std::nullopt,
                                std::optional<Method> method = std::nullopt);
// Same, over a caller-supplied table (the truncation is the table itself).
ConstantResult compute_constant(const std::string& name, const PrimeTable& table,
                                std::optional<Method> method = std::nullopt);

// Deviation from the published value, if any.
std::optional<double> paper_delta(const ConstantResult& r);
// |value - paper| <= max(tolerance, tail_bound).
std::optional<bool> reproduces_paper(const ConstantResult& r);

// sum_{p >= 5} Atilde(p) w(p) p^{3/2}(p-1) log p/(p(p+1)^3), w = 1 (main) and
// w = H_sieve (sieve), over the first prime_count primes.
struct AtildeConstant {
    double main = 0.0;
    double sieve = 0.0;
    Truncation truncation;
    u64 largest_prime = 0;
    double tail_bound = 0.0;
};
AtildeConstant family_constant_Atilde(const FamilySpec& fam, std::size_t prime_count);

// Cancellation of the ST pieces: per-prime summand of -gST0 + gST2 - gSTA.
struct CancellationReport {
    bool symbolic_zero = false;
    bool all_primes_zero = false;
    u64 checked_up_to = 0;
    std::optional<u64> first_nonzero_prime;
};
CancellationReport exact_cancellation_check(u64 max_p = 10000, long perturb = 0);

// Export.
nlohmann::json constant_to_json(const ConstantResult& r);
std::string constants_csv_header();
std::string constant_to_csv(const ConstantResult& r);

// ---------------------------------------------------------------------------
// Aggregated lower-order coefficients (coefficient of 2 phihat(0)/log R).

struct LowerOrderPiece {
    std::string name;        // constant key or piece label
    double weight = 1.0;     // contribution = weight * value
    double value = 0.0;
    double main = 0.0;       // H^main part of value (family pieces)
    double sieve = 0.0;      // H^sieve part of value
    Truncation truncation;
    double tail_bound = 0.0;
    Method method = Method::direct_sum;
    std::optional<double> cited_value;
};

enum class AggregateMode {
    published,   // the published bracket, pieces recomputed
    cited,       // the published bracket with the printed piece values
    expansion,   // the five S-pieces of the sieved explicit-formula expansion
};
const char* to_string(AggregateMode m);

struct FamilyLowerOrder {
    std::string family;
    AggregateMode mode = AggregateMode::published;
    std::vector<LowerOrderPiece> pieces;
    double total = 0.0;
    double main_term = 0.0;      // coefficient of phi(0) (expansion mode)
    double tail_bound = 0.0;
    std::optional<double> paper_value;
    std::optional<double> tolerance;
    std::string citation;
};

struct AggregateOptions {
    AggregateMode mode = AggregateMode::published;
    // Override for every prime-sum piece; by default each piece uses its
    // catalog truncation.
    std::optional<Truncation> truncation;
    // Pieces at different truncations are accepted only with this flag.
    bool allow_mixed_truncations = true;
    // expansion mode: prime count for the Atilde sums, and for the closed-form sums.
    std::optional<std::size_t> atilde_primes;
    std::size_t closed_form_primes = 1'000'000;
};

// family: a built-in family name or "cusp_model".
FamilyLowerOrder aggregate_lower_order(const std::string& family, const AggregateOptions& opt = {});
std::vector<std::string> aggregate_families();

// Throws ErrorKind::consistency when truncations differ and mixing is not allowed.
double sum_pieces(const std::vector<LowerOrderPiece>& pieces, bool allow_mixed);

nlohmann::json lower_order_to_json(const FamilyLowerOrder& f);

} // namespace ldl
