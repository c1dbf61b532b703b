#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ldl/polynomial.hpp"

namespace ldl {

// Which closed-form moment set applies.
enum class ClosedForm { none, cm_sextic, cm_quartic_36t, noncm_3x12t };

// y^2 = x^3 + A(T) x + B(T) over Q(T).
struct FamilySpec {
    std::string name;
    IntPoly A;
    IntPoly B;
    std::vector<IntPoly> D_factors;
    int k = 0;                          // sieve exponent; 0 means infinity
    std::vector<u64> forced_zero_primes;

    ClosedForm closed_form = ClosedForm::none;
    i64 quartic_coeff = 0;              // c in A(T) = c (36T+6)(36T+5)

    bool k_infinite() const { return k == 0; }
    bool forced_zero(u64 p) const;
    IntPoly discriminant() const;       // -16 (4A^3 + 27B^2)
    IntPoly D() const;                  // product of D_factors
    std::string equation() const;
};

// Built-in registry.
std::vector<std::string> builtin_family_names();
FamilySpec builtin_family(const std::string& name);   // throws ErrorKind::catalog
bool is_builtin_family(const std::string& name);

// The five reference CM families (B, kappa), in catalog order.
struct CmFamilyId { int B; int kappa; };
std::vector<CmFamilyId> cm_reference_families();
std::string cm_family_name(int B, int kappa);

// JSON config: {"name","A","B","D_factors","k","forced_zero_primes"}.
// Throws ErrorKind::config with the offending field path.
FamilySpec family_from_json(const nlohmann::json& j);
FamilySpec family_from_file(const std::string& path);
nlohmann::json family_to_json(const FamilySpec& f);

// "@path.json" loads a file, anything else is a built-in name.
FamilySpec resolve_family(const std::string& ref);

// Load-time check: no prime 5 <= p <= bound divides two distinct D_factors
// at a common t (i.e. the factors have no common root mod p).
// Returns the first offending prime, if any.
std::optional<u64> check_factor_coprimality(const FamilySpec& f, u64 bound);

} // namespace ldl
