#include "ldl/family.hpp"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>

#include "ldl/error.hpp"
#include "ldl/primes.hpp"

namespace ldl {

bool FamilySpec::forced_zero(u64 p) const {
    return std::find(forced_zero_primes.begin(), forced_zero_primes.end(), p) !=
           forced_zero_primes.end();
}

IntPoly FamilySpec::discriminant() const {
    IntPoly a3 = A * A * A;
    IntPoly b2 = B * B;
    return -16 * (4 * a3 + 27 * b2);
}

IntPoly FamilySpec::D() const {
    IntPoly d{1};
    for (auto& f : D_factors) d = d * f;
    return d;
}

std::string FamilySpec::equation() const {
    std::string s = "y^2 = x^3";
    if (!A.is_zero()) s += " + (" + A.str() + ")x";
    if (!B.is_zero()) s += " + (" + B.str() + ")";
    return s;
}

namespace {

FamilySpec cm_sextic(int B, int kappa) {
    FamilySpec f;
    f.name = cm_family_name(B, kappa);
    IntPoly s{1, 6};
    IntPoly b = kappa == 1 ? s : s * s;
    f.B = (i64)B * b;
    f.D_factors = {s};
    f.k = 3;
    f.forced_zero_primes = {2, 3};
    f.closed_form = ClosedForm::cm_sextic;
    return f;
}

FamilySpec quartic_36t(const std::string& name, i64 c) {
    FamilySpec f;
    f.name = name;
    IntPoly f1{6, 36}, f2{5, 36};
    f.A = c * (f1 * f2);
    f.D_factors = {f1, f2};
    f.k = 3;
    f.forced_zero_primes = {2, 3};
    f.closed_form = ClosedForm::cm_quartic_36t;
    f.quartic_coeff = c;
    return f;
}

FamilySpec noncm() {
    FamilySpec f;
    f.name = "noncm_3x12t";
    f.A = IntPoly{-3};
    f.B = IntPoly{0, 12};
    f.D_factors = {IntPoly{-1, 6}, IntPoly{1, 6}};
    f.k = 0;
    f.forced_zero_primes = {2, 3};
    f.closed_form = ClosedForm::noncm_3x12t;
    return f;
}

} // namespace

std::string cm_family_name(int B, int kappa) {
    std::string n = "cm_b1_kappa" + std::to_string(kappa);
    if (B != 1) n += "_b" + std::to_string(B);
    return n;
}

std::vector<CmFamilyId> cm_reference_families() { return {{1, 1}, {1, 2}, {2, 2}, {3, 2}, {6, 2}}; }

std::vector<std::string> builtin_family_names() {
    std::vector<std::string> v;
    for (int kappa : {1, 2})
        for (int B : {1, 2, 3, 6}) v.push_back(cm_family_name(B, kappa));
    v.push_back("rank1_36t");
    v.push_back("rank0_36t");
    v.push_back("noncm_3x12t");
    return v;
}

bool is_builtin_family(const std::string& name) {
    auto v = builtin_family_names();
    return std::find(v.begin(), v.end(), name) != v.end();
}

FamilySpec builtin_family(const std::string& name) {
    for (int kappa : {1, 2})
        for (int B : {1, 2, 3, 6})
            if (name == cm_family_name(B, kappa)) return cm_sextic(B, kappa);
    if (name == "rank1_36t") return quartic_36t(name, -1);
    // -4 D(T): 2-isogenous to +D(T); this is the curve whose moments match
    // the rank-0 values quoted for B = 2.
    if (name == "rank0_36t") return quartic_36t(name, -4);
    if (name == "noncm_3x12t") return noncm();
    std::string known;
    for (auto& n : builtin_family_names()) known += " " + n;
    throw Error(ErrorKind::catalog, "unknown family '" + name + "'; known:" + known);
}

// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
    throw Error(ErrorKind::config, "family config " + path + ": " + msg);
}

IntPoly poly_at(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array()) bad(path, "expected array of integer coefficients");
    std::vector<i64> c;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer()) bad(path + "[" + std::to_string(i) + "]", "expected integer");
        c.push_back(j[i].get<i64>());
    }
    return IntPoly(c);
}

} // namespace

FamilySpec family_from_json(const nlohmann::json& j) {
    if (!j.is_object()) bad("$", "expected object");
    for (const char* key : {"name", "A", "B", "D_factors", "k"})
        if (!j.contains(key)) bad(std::string("$.") + key, "missing field");
    FamilySpec f;
    if (!j["name"].is_string()) bad("$.name", "expected string");
    f.name = j["name"].get<std::string>();
    f.A = poly_at(j["A"], "$.A");
    f.B = poly_at(j["B"], "$.B");
    if (!j["D_factors"].is_array()) bad("$.D_factors", "expected array");
    for (std::size_t i = 0; i < j["D_factors"].size(); ++i)
        f.D_factors.push_back(poly_at(j["D_factors"][i], "$.D_factors[" + std::to_string(i) + "]"));
    const auto& k = j["k"];
    if (k.is_string()) {
        if (k.get<std::string>() != "inf") bad("$.k", "expected integer >= 3 or \"inf\"");
        f.k = 0;
    } else if (k.is_number_integer() && k.get<i64>() >= 3) {
        f.k = (int)k.get<i64>();
    } else {
        bad("$.k", "expected integer >= 3 or \"inf\"");
    }
    if (j.contains("forced_zero_primes")) {
        const auto& z = j["forced_zero_primes"];
        if (!z.is_array()) bad("$.forced_zero_primes", "expected array");
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (!z[i].is_number_unsigned() || !is_prime(z[i].get<u64>()))
                bad("$.forced_zero_primes[" + std::to_string(i) + "]", "expected prime");
            f.forced_zero_primes.push_back(z[i].get<u64>());
        }
    }
    if (f.discriminant().is_zero()) bad("$", "discriminant is identically zero");
    return f;
}

FamilySpec family_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::config, "cannot open family config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::config, "family config " + path + ": malformed JSON: " + e.what());
    }
    return family_from_json(j);
}

nlohmann::json family_to_json(const FamilySpec& f) {
    nlohmann::json j;
    j["name"] = f.name;
    j["A"] = f.A.coeffs();
    j["B"] = f.B.coeffs();
    j["D_factors"] = nlohmann::json::array();
    for (auto& d : f.D_factors) j["D_factors"].push_back(d.coeffs());
    if (f.k_infinite()) j["k"] = "inf";
    else j["k"] = f.k;
    j["forced_zero_primes"] = f.forced_zero_primes;
    return j;
}

FamilySpec resolve_family(const std::string& ref) {
    if (!ref.empty() && ref[0] == '@') return family_from_file(ref.substr(1));
    return builtin_family(ref);
}

std::optional<u64> check_factor_coprimality(const FamilySpec& f, u64 bound) {
    if (f.D_factors.size() < 2) return std::nullopt;
    auto table = sieve_primes(std::max<u64>(bound, 5));
    for (u64 p : table) {
        if (p < 5) continue;
        std::vector<std::vector<u64>> roots;
        for (auto& d : f.D_factors) roots.push_back(roots_mod_prime_power(d, p, 1, p));
        for (std::size_t i = 0; i < roots.size(); ++i)
            for (std::size_t j = i + 1; j < roots.size(); ++j)
                for (u64 r : roots[i])
                    if (std::find(roots[j].begin(), roots[j].end(), r) != roots[j].end()) return p;
    }
    return std::nullopt;
}

} // namespace ldl
