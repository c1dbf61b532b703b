#include "ldl/constants.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "catalog_data.hpp"
#include "ldl/error.hpp"
#include "ldl/hiprec.hpp"
#include "ldl/lower_order.hpp"
#include "ldl/moments.hpp"
#include "ldl/series.hpp"

namespace ldl {

using nlohmann::json;

namespace {

Method parse_method(const std::string& s) {
    if (s == "direct_sum") return Method::direct_sum;
    if (s == "closed_form") return Method::closed_form;
    if (s == "integral") return Method::integral;
    if (s == "moment_series") return Method::moment_series;
    throw Error(ErrorKind::catalog, "unknown method '" + s + "'");
}

struct Catalog {
    std::vector<CatalogEntry> constants;
    json aggregates;
};

const Catalog& catalog() {
    static const Catalog c = [] {
        Catalog out;
        json j = json::parse(detail::kCatalogJson);
        for (auto& e : j.at("constants")) {
            CatalogEntry ce;
            ce.name = e.at("name");
            ce.formula = e.value("formula", "");
            for (auto& m : e.at("methods")) ce.methods.push_back(parse_method(m));
            auto& t = e.at("truncation");
            ce.truncation = t.contains("primes") ? Truncation::count(t["primes"].get<u64>())
                                                 : Truncation::limit(t.at("limit").get<u64>());
            if (e.contains("paper_value")) ce.paper_value = e["paper_value"].get<double>();
            if (e.contains("tolerance")) ce.tolerance = e["tolerance"].get<double>();
            ce.citation = e.value("citation", "");
            ce.family = e.value("family", "");
            ce.part = e.value("part", "");
            out.constants.push_back(std::move(ce));
        }
        out.aggregates = j.at("aggregates");
        return out;
    }();
    return c;
}

// Prime sum of f(p) over the table with an optional filter.
double table_sum(const PrimeTable& t, const std::function<double(u64)>& f) {
    auto acc = reduce_table<SumAcc>(t.view(), [&](std::span<const u64> ps, SumAcc& a) {
        for (u64 p : ps) a.s.add(f(p));
    });
    return acc.value();
}

int chi3(u64 p) {
    u64 r = p % 12;
    return (r == 1 || r == 11) ? 1 : -1;
}
int chim3(u64 p) { return p % 3 == 1 ? 1 : -1; }

ConstantResult base_result(const std::string& name, const PrimeTable& t, Method m) {
    ConstantResult r;
    r.name = name;
    r.truncation = Truncation::count(t.size());
    r.largest_prime = t.size() ? t.back() : 0;
    r.method = m;
    return r;
}

ConstantResult simple_sum(const std::string& name, const PrimeTable& t,
                          const std::function<double(u64)>& f, double tail_c, u64 phi_b = 1) {
    auto r = base_result(name, t, Method::direct_sum);
    r.value = table_sum(t, f);
    r.tail_bound = power_tail_bound((double)std::max<u64>(r.largest_prime, 2), 2.0, tail_c, phi_b);
    return r;
}

// sum_l M_l P_class(l), P over the primes of the given class
ConstantResult series_sum(const std::string& name, const PrimeTable& t, MomentKind k,
                          std::optional<std::pair<u64, u64>> cls, double weight) {
    auto r = base_result(name, t, Method::moment_series);
    std::vector<u64> ps;
    if (cls) ps = t.residue_class(cls->first, cls->second);
    else ps.assign(t.begin(), t.end());
    // (8/9)^l decay from p = 2; 400 terms reach below 1e-20
    auto v = moment_weighted_p_sum(k, 400, ps);
    r.value = weight * v.value;
    r.tail_bound = weight * v.tail_bound;
    return r;
}

// main and sieve parts come from one pass; catalog entries ask for them separately
AtildeConstant cached_atilde(const std::string& family, std::size_t n) {
    static std::mutex mu;
    static std::map<std::pair<std::string, std::size_t>, AtildeConstant> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        if (auto it = cache.find({family, n}); it != cache.end()) return it->second;
    }
    AtildeConstant a = family_constant_Atilde(builtin_family(family), n);
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(std::make_pair(family, n), a);
    return a;
}

ConstantResult compute_on(const CatalogEntry& e, const PrimeTable& t, Method m) {
    const std::string& n = e.name;
    auto lg = [](u64 p) { return std::log((double)p); };
    if (n == "gamma_pnt") return gamma_pnt(m == Method::closed_form ? m : Method::integral, t);
    if (n == "gamma_pnt_13" || n == "gamma_pnt_14")
        return gamma_pnt_ab(1, n == "gamma_pnt_13" ? 3 : 4, m == Method::closed_form ? m : Method::integral, t);
    if (n == "gamma_st_0")
        return simple_sum(n, t, [&](u64 p) { double P = (double)p; return 2 * lg(p) / (P * (P + 1)); }, 2);
    if (n == "gamma_st_2")
        return simple_sum(n, t, [&](u64 p) {
            double P = (double)p;
            return (4 * P * P + 3 * P + 1) * lg(p) / (P * (P + 1) * (P + 1) * (P + 1));
        }, 4);
    if (n == "gamma_st_atilde") {
        if (m == Method::moment_series) return series_sum(n, t, MomentKind::sato_tate, std::nullopt, 1.0);
        return simple_sum(n, t, [&](u64 p) {
            double P = (double)p;
            return (2 * P + 1) * (P - 1) * lg(p) / (P * (P + 1) * (P + 1) * (P + 1));
        }, 2);
    }
    if (n == "gamma_cm_13" || n == "gamma_cm_14") {
        const u64 b = n == "gamma_cm_13" ? 3 : 4;
        if (m == Method::moment_series) return series_sum(n, t, MomentKind::cm, std::make_pair(u64(1), b), 1.0);
        return simple_sum(n, t, [&](u64 p) {
            if (p % b != 1) return 0.0;
            double P = (double)p;
            return 2 * (3 * P + 1) * lg(p) / ((P + 1) * (P + 1) * (P + 1));
        }, 6, 2);
    }
    if (n == "gamma_cm0_ge5")
        return simple_sum(n, t, [&](u64 p) {
            if (p < 5) return 0.0;
            double P = (double)p;
            return 4 * lg(p) / (P * (P + 1));
        }, 4);
    if (n == "gamma_23") {
        auto r = base_result(n, t, Method::closed_form);
        r.value = (double)(hp::log_2 + 2 * hp::log_3 / 3);
        r.truncation = Truncation::limit(3);
        r.largest_prime = 3;
        r.tail_bound = 0;
        return r;
    }
    if (n == "gamma_cm2_13")
        return simple_sum(n, t, [&](u64 p) {
            if (p % 3 != 1) return 0.0;
            double P = (double)p;
            return 2 * (5 * P * P + 2 * P + 1) * lg(p) / (P * (P + 1) * (P + 1) * (P + 1));
        }, 10, 2);
    if (n == "gamma3_aprime")
        return simple_sum(n, t, [&](u64 p) {
            if (p < 5) return 0.0;
            double P = (double)p, s = lg(p) / (P * P * P - P);
            if (p % 12 == 1) s += lg(p) / (P * P - 1);
            if (p % 12 == 5) s -= lg(p) / (P * P - 1);
            return 2 * s;
        }, 2);
    if (n == "gamma3_0")
        return simple_sum(n, t, [&](u64 p) {
            if (p < 5) return 0.0;
            double P = (double)p;
            return (4 * P - 2) * lg(p) / (P * P * (P + 1));
        }, 4);
    if (n == "gamma3_1")
        return simple_sum(n, t, [&](u64 p) {
            if (p < 5) return 0.0;
            double P = (double)p;
            return (chi3(p) + chim3(p)) * (P - 1) * lg(p) / (P * P * (P + 1) * (P + 1));
        }, 2);
    if (n == "gamma3_2")
        return simple_sum(n, t, [&](u64 p) {
            if (p < 5) return 0.0;
            double P = (double)p;
            int e = chim3(p);
            double A2 = P * P - 2 * P - 2 - P * e;
            double q = (P + 1) * (P + 1) * (P + 1);
            return (A2 * (4 * P * P + 3 * P + 1) / (P * P * P * q) - (2 + e) / (P * P) - 2 / (P * P * P)) * lg(p);
        }, 8);
    if (n == "gamma_cm_sieve_012") {
        FamilySpec fam = builtin_family(e.family);
        return simple_sum(n, t, [&](u64 p) {
            if (p < 5) return 0.0;
            auto mo = prime_moments(fam, p);
            double P = (double)p, q = (P + 1) * (P + 1) * (P + 1);
            return -mo.h_sieve * (2 * mo.A0 / (P * (P + 1)) + mo.A2 / (P * P * P) * ((4 * P * P + 3 * P + 1) / q - 1)) * lg(p);
        }, 1e-6);
    }
    if (!e.family.empty()) {
        auto at = cached_atilde(e.family, t.size());
        auto r = base_result(n, t, Method::direct_sum);
        r.value = e.part == "sieve" ? at.sieve : at.main;
        // H^sieve(p) = nu/(p^k - nu) with nu <= deg D and k >= 2
        const double X = (double)at.largest_prime;
        r.tail_bound = e.part == "sieve" ? at.tail_bound * 8 / (X * X) : at.tail_bound;
        return r;
    }
    throw Error(ErrorKind::catalog, "no evaluator for constant '" + n + "'");
}

void attach_paper(ConstantResult& r, const CatalogEntry& e) {
    r.paper_value = e.paper_value;
    r.paper_citation = e.citation;
}

} // namespace

const std::vector<CatalogEntry>& constant_catalog() { return catalog().constants; }

const CatalogEntry& catalog_entry(const std::string& name) {
    for (auto& e : constant_catalog())
        if (e.name == name) return e;
    std::string known;
    for (auto& e : constant_catalog()) known += " " + e.name;
    throw Error(ErrorKind::catalog, "unknown constant '" + name + "'; known:" + known);
}

std::vector<std::string> constant_names() {
    std::vector<std::string> v;
    for (auto& e : constant_catalog()) v.push_back(e.name);
    return v;
}

namespace {
Method resolve_method(const CatalogEntry& e, std::optional<Method> m) {
    if (!m) return e.methods.front();
    for (Method x : e.methods)
        if (x == *m) return x;
    // the direct evaluation of gamma_pnt-type constants is the integral form
    if (*m == Method::direct_sum)
        for (Method x : e.methods)
            if (x == Method::integral) return x;
    throw Error(ErrorKind::unsupported, std::string("constant '") + e.name + "' has no method " + to_string(*m));
}
} // namespace

ConstantResult compute_constant(const std::string& name, const PrimeTable& table, std::optional<Method> method) {
    const auto& e = catalog_entry(name);
    Method m = resolve_method(e, method);
    if (table.empty()) throw Error(ErrorKind::empty_table, "compute_constant: empty prime table");
    auto r = compute_on(e, table, m);
    attach_paper(r, e);
    return r;
}

ConstantResult compute_constant(const std::string& name, std::optional<Truncation> truncation,
                                std::optional<Method> method) {
    const auto& e = catalog_entry(name);
    Method m = resolve_method(e, method);
    Truncation t = truncation.value_or(e.truncation);
    auto table = primes_for(t);
    if (table.empty()) throw Error(ErrorKind::empty_table, "compute_constant: truncation " + t.label() + " has no primes");
    auto r = compute_on(e, table, m);
    if (r.method != Method::closed_form || r.tail_bound != 0) r.truncation = t;
    attach_paper(r, e);
    return r;
}

std::optional<double> paper_delta(const ConstantResult& r) {
    if (!r.paper_value) return std::nullopt;
    return r.value - *r.paper_value;
}

std::optional<bool> reproduces_paper(const ConstantResult& r) {
    if (!r.paper_value) return std::nullopt;
    const auto& e = catalog_entry(r.name);
    double tol = std::max(e.tolerance.value_or(0.0), r.tail_bound);
    return std::fabs(r.value - *r.paper_value) <= tol;
}

// ---------------------------------------------------------------------------

AtildeConstant family_constant_Atilde(const FamilySpec& fam, std::size_t prime_count) {
    if (prime_count == 0) throw Error(ErrorKind::domain, "family_constant_Atilde: prime_count = 0");
    auto table = first_primes(prime_count);
    struct Acc {
        CompensatedSum main, sieve;
        void merge(const Acc& o) {
            main.add(o.main);
            sieve.add(o.sieve);
        }
    };
    auto acc = reduce_table<Acc>(table.view(), [&](std::span<const u64> ps, Acc& a) {
        for (u64 p : ps) {
            if (p < 5 || fam.forced_zero(p)) continue;
            const double P = (double)p;
            const double w = a_tilde(fam, p) * std::pow(P, 1.5) * (P - 1) * std::log(P) /
                             (P * (P + 1) * (P + 1) * (P + 1));
            a.main.add(w);
            double hs = h_factor(fam, p).sieve;
            if (hs != 0) a.sieve.add(w * hs);
        }
    });
    AtildeConstant r;
    r.main = acc.main.value();
    r.sieve = acc.sieve.value();
    r.truncation = Truncation::count(prime_count);
    r.largest_prime = table.back();
    // per-prime size 8/sqrt(p) * p/(p+1-2 sqrt p) at the cut, as a heuristic remainder
    const double X = (double)r.largest_prime;
    r.tail_bound = 8 / std::sqrt(X) * X / (X + 1 - 2 * std::sqrt(X));
    return r;
}

CancellationReport exact_cancellation_check(u64 max_p, long perturb) {
    CancellationReport r;
    r.symbolic_zero = st_combination_numerator(perturb).empty();
    r.checked_up_to = max_p;
    r.all_primes_zero = true;
    for (u64 p : sieve_primes(std::max<u64>(max_p, 2))) {
        if (!st_combination_summand(p, perturb).is_zero()) {
            r.all_primes_zero = false;
            r.first_nonzero_prime = p;
            break;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

namespace {
std::string fmt(double v) {
    std::ostringstream o;
    o << std::setprecision(17) << v;
    return o.str();
}
} // namespace

json constant_to_json(const ConstantResult& r) {
    json j;
    j["name"] = r.name;
    j["value"] = r.value;
    j["truncation"] = r.truncation.label();
    j["largest_prime"] = r.largest_prime;
    j["tail_bound"] = r.tail_bound;
    j["method"] = to_string(r.method);
    j["paper_value"] = r.paper_value ? json(*r.paper_value) : json(nullptr);
    j["paper_citation"] = r.paper_citation;
    if (auto d = paper_delta(r)) j["paper_delta"] = *d;
    return j;
}

std::string constants_csv_header() {
    return "name,value,truncation,tail_bound,method,paper_value,paper_citation";
}

std::string constant_to_csv(const ConstantResult& r) {
    std::string cit = r.paper_citation;
    for (auto& c : cit)
        if (c == '"') c = '\'';
    return r.name + "," + fmt(r.value) + "," + r.truncation.label() + "," + fmt(r.tail_bound) + "," +
           to_string(r.method) + "," + (r.paper_value ? fmt(*r.paper_value) : std::string()) + ",\"" + cit + "\"";
}

// ---------------------------------------------------------------------------

const char* to_string(AggregateMode m) {
    switch (m) {
    case AggregateMode::published: return "published";
    case AggregateMode::cited: return "cited";
    case AggregateMode::expansion: return "expansion";
    }
    return "?";
}

std::vector<std::string> aggregate_families() {
    std::vector<std::string> v;
    for (auto& a : catalog().aggregates) v.push_back(a.at("family"));
    return v;
}

double sum_pieces(const std::vector<LowerOrderPiece>& pieces, bool allow_mixed) {
    std::optional<Truncation> ref;
    CompensatedSum s;
    for (auto& p : pieces) {
        s.add(p.weight * p.value);
        const bool exact = p.method == Method::closed_form && p.tail_bound == 0;
        if (exact) continue;
        if (!ref) ref = p.truncation;
        else if (!allow_mixed && (ref->kind != p.truncation.kind || ref->value != p.truncation.value))
            throw Error(ErrorKind::consistency, "aggregate mixes truncations " + ref->label() + " and " +
                                                    p.truncation.label() + " (piece " + p.name + ")");
    }
    return s.value();
}

namespace {

LowerOrderPiece piece_from(const std::string& key, double weight, const AggregateOptions& opt, bool cited) {
    LowerOrderPiece p;
    p.name = key;
    p.weight = weight;
    const auto& e = catalog_entry(key);
    p.cited_value = e.paper_value;
    if (cited) {
        if (!e.paper_value) throw Error(ErrorKind::catalog, "no printed value for " + key);
        p.value = *e.paper_value;
        p.truncation = e.truncation;
        p.method = Method::closed_form;
        return p;
    }
    std::optional<Truncation> t = opt.truncation;
    if (e.methods.front() == Method::closed_form && key == "gamma_23") t.reset();
    auto r = compute_constant(key, t);
    p.value = r.value;
    p.truncation = r.truncation;
    p.tail_bound = r.tail_bound;
    p.method = r.method;
    if (e.part == "sieve" || key == "gamma_cm_sieve_012") p.sieve = r.value;
    else p.main = r.value;
    return p;
}

const json* aggregate_meta(const std::string& family) {
    for (auto& a : catalog().aggregates)
        if (a.at("family") == family) return &a;
    return nullptr;
}

} // namespace

FamilyLowerOrder aggregate_lower_order(const std::string& family, const AggregateOptions& opt) {
    FamilyLowerOrder out;
    out.family = family;
    out.mode = opt.mode;
    if (const json* meta = aggregate_meta(family)) {
        out.paper_value = meta->at("paper_value").get<double>();
        if (meta->contains("tolerance")) out.tolerance = (*meta)["tolerance"].get<double>();
        out.citation = meta->value("citation", "");
    }

    if (opt.mode == AggregateMode::expansion) {
        FamilySpec fam = builtin_family(family);
        std::size_t na = opt.atilde_primes.value_or(10'000);
        auto ex = expansion_coefficients(fam, opt.closed_form_primes, na);
        for (auto& e : ex.pieces) {
            LowerOrderPiece p;
            p.name = e.name;
            p.value = e.value;
            p.main = e.main;
            p.sieve = e.sieve;
            p.tail_bound = e.tail_bound;
            p.truncation = e.name == "S_Atilde" ? Truncation::count(na) : Truncation::count(ex.closed_form_primes);
            out.pieces.push_back(p);
        }
        out.total = ex.total;
        out.main_term = ex.main;
        out.tail_bound = ex.tail_bound;
        return out;
    }

    const bool cited = opt.mode == AggregateMode::cited;
    auto add = [&](const std::string& key, double w) { out.pieces.push_back(piece_from(key, w, opt, cited)); };

    if (family == "cusp_model") {
        add("gamma_st_0", -1);
        add("gamma_st_2", 1);
        add("gamma_st_atilde", -1);
        add("gamma_pnt", 1);
        out.main_term = 0.5;
        if (cited) {
            out.total = sum_pieces(out.pieces, true);
        } else {
            // The three ST pieces cancel prime by prime; their combined sum is
            // accumulated from the exact rational summands.
            const auto& pnt = out.pieces.back();
            auto table = primes_for(opt.truncation.value_or(catalog_entry("gamma_st_0").truncation));
            double comb = table_sum(table, [](u64 p) {
                return st_combination_summand(p).to_double() * std::log((double)p);
            });
            out.total = pnt.value + comb;
            (void)sum_pieces(out.pieces, opt.allow_mixed_truncations);
        }
    } else if (family == "noncm_3x12t") {
        for (const char* k : {"gamma3_aprime", "gamma3_0", "gamma3_1", "gamma3_2", "gamma3_atilde"}) add(k, -1);
        add("gamma_23", -0.5);
        add("gamma_pnt", 1);
        out.main_term = 0.5;
        out.total = sum_pieces(out.pieces, cited || opt.allow_mixed_truncations);
    } else {
        int B = 0, kappa = 0;
        for (auto id : cm_reference_families())
            if (cm_family_name(id.B, id.kappa) == family) B = id.B, kappa = id.kappa;
        if (!B) {
            std::string known;
            for (auto& f : aggregate_families()) known += " " + f;
            throw Error(ErrorKind::catalog, "no published aggregate for '" + family + "' (use the expansion mode); known:" + known);
        }
        const std::string bk = std::to_string(B) + "_" + std::to_string(kappa);
        add("gamma_pnt", 2);
        add("gamma_cm0_ge5", -1);
        add("gamma_23", -1);
        add("gamma_pnt_13", -1);
        add("gamma_cm2_13", 1);
        add("gamma_cm_atilde_" + bk, -1);
        add("gamma_cm_sieve_012", -1);
        add("gamma_cm_sieve_" + bk, -1);
        out.main_term = 0.5;
        out.total = sum_pieces(out.pieces, cited || opt.allow_mixed_truncations);
    }
    for (auto& p : out.pieces) out.tail_bound += std::fabs(p.weight) * p.tail_bound;
    return out;
}

json lower_order_to_json(const FamilyLowerOrder& f) {
    json j;
    j["family"] = f.family;
    j["mode"] = to_string(f.mode);
    j["total"] = f.total;
    j["main_term_phi0"] = f.main_term;
    j["tail_bound"] = f.tail_bound;
    j["paper_value"] = f.paper_value ? json(*f.paper_value) : json(nullptr);
    j["paper_citation"] = f.citation;
    json ps = json::array();
    for (auto& p : f.pieces) {
        json q;
        q["name"] = p.name;
        q["weight"] = p.weight;
        q["value"] = p.value;
        q["main"] = p.main;
        q["sieve"] = p.sieve;
        q["truncation"] = p.truncation.label();
        q["tail_bound"] = p.tail_bound;
        q["method"] = to_string(p.method);
        q["cited_value"] = p.cited_value ? json(*p.cited_value) : json(nullptr);
        ps.push_back(q);
    }
    j["pieces"] = ps;
    return j;
}

} // namespace ldl
