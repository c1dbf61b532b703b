#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "ldl/constants.hpp"
#include "ldl/error.hpp"
#include "ldl/explicit_formula.hpp"
#include "ldl/family.hpp"
#include "ldl/moments.hpp"
#include "ldl/parallel.hpp"
#include "ldl/test_functions.hpp"
#include "report.hpp"
#include "verify.hpp"

using namespace ldl;
using namespace ldl::cli;

namespace {

constexpr u64 kDefaultExplicitLimit = 100'000'000;

struct Common {
    OutputSpec out;
    std::optional<unsigned> threads;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.out.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    sub->add_option("--out", c.out.out, "output file (default stdout)");
    sub->add_option("--manifest", c.out.manifest, "write the run manifest to this file");
    sub->add_option("--threads", c.threads, "worker threads (default LDL_THREADS or all cores)")
        ->check(CLI::Range(1u, 1024u));
}

unsigned resolve_threads(const Common& c) {
    if (c.threads) return *c.threads;
    if (const char* e = std::getenv("LDL_THREADS"); e && *e) {
        char* end = nullptr;
        long v = std::strtol(e, &end, 10);
        if (*end || v < 1 || v > 1024) throw Error(ErrorKind::config, std::string("LDL_THREADS='") + e + "' is not a thread count");
        return (unsigned)v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string opt_str(const std::optional<double>& v) { return v ? fmt_double(*v) : std::string(); }

// ---------------------------------------------------------------------------

struct ConstantsArgs {
    std::string name = "all";
    std::optional<u64> prime_limit, first_primes;
    std::string method = "default";
};

std::vector<std::optional<Method>> methods_for(const CatalogEntry& e, const std::string& m, bool single) {
    if (m == "default") return {std::nullopt};
    if (m == "both") {
        std::vector<std::optional<Method>> v;
        for (Method x : e.methods) v.push_back(x);
        return v;
    }
    Method want = m == "direct" ? Method::direct_sum : m == "closed" ? Method::closed_form : Method::moment_series;
    for (Method x : e.methods)
        if (x == want || (want == Method::direct_sum && x == Method::integral)) return {x};
    if (single) throw Error(ErrorKind::unsupported, "constant '" + e.name + "' has no " + m + " method");
    return {};
}

int cmd_constants(const ConstantsArgs& a, const Common& c, RunManifest& man) {
    std::optional<Truncation> t;
    if (a.prime_limit) t = Truncation::limit(*a.prime_limit);
    if (a.first_primes) t = Truncation::count(*a.first_primes);
    if (t && t->value < 2) throw Error(ErrorKind::config, "truncation must include at least one prime");

    std::vector<std::string> names;
    if (a.name == "all") names = constant_names();
    else names = {catalog_entry(a.name).name};

    json rows = json::array();
    std::ostringstream csv;
    csv << constants_csv_header() << '\n';
    TextTable text({"name", "value", "tail_bound", "truncation", "method", "published", "delta"});
    std::set<std::string> truncs;
    for (auto& n : names) {
        const auto& e = catalog_entry(n);
        for (auto m : methods_for(e, a.method, a.name != "all")) {
            ConstantResult r = compute_constant(n, t, m);
            json j = constant_to_json(r);
            if (auto ok = reproduces_paper(r)) j["reproduces_paper"] = *ok;
            rows.push_back(j);
            csv << constant_to_csv(r) << '\n';
            auto d = paper_delta(r);
            text.row({r.name, fmt_double(r.value), fmt_double(r.tail_bound), r.truncation.label(),
                      to_string(r.method), opt_str(r.paper_value), opt_str(d)});
            truncs.insert(r.truncation.label());
        }
    }
    man.truncations.assign(truncs.begin(), truncs.end());
    man.config = {{"name", a.name}, {"method", a.method},
                  {"truncation", t ? json(t->label()) : json(nullptr)}};
    emit(c.out, "constants", json{{"constants", rows}}, c.out.format == "csv" ? csv.str() : text.str(), man);
    return ok;
}

// ---------------------------------------------------------------------------

struct FamilyArgs {
    std::string family;
    u64 prime_limit = 100;
    int r_max = 2;
    bool aggregate = false;
    std::string mode = "published";
    bool verify_closed = false;
    std::optional<std::size_t> atilde_primes;
};

std::string int_str(const mpz_class& z) { return z.get_str(); }

json mpz_json(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

int cmd_family(const FamilyArgs& a, const Common& c, RunManifest& man) {
    FamilySpec fam = resolve_family(a.family);
    if (a.r_max < 0 || a.r_max > 16) throw Error(ErrorKind::config, "--moments must be in [0, 16]");
    const bool builtin = a.family.empty() || a.family[0] != '@';

    json result;
    result["family"] = family_to_json(fam);
    result["truncation"] = Truncation::limit(a.prime_limit).label();
    man.truncations.push_back(Truncation::limit(a.prime_limit).label());
    man.config = {{"family", a.family}, {"prime_limit", a.prime_limit}, {"moments", a.r_max},
                  {"aggregate", a.aggregate}, {"mode", a.mode}, {"verify_closed_forms", a.verify_closed}};

    std::ostringstream csv;
    TextTable text({"p", "r", "good", "bad", "a_tilde", "H", "nu"});
    csv << "p,r,good,bad,a_tilde,h,nu,truncation,tail_bound\n";
    json rows = json::array();
    json mismatches = json::array();
    u64 checked = 0;
    for (u64 p : sieve_primes(std::max<u64>(a.prime_limit, 5))) {
        if (p < 5) continue;
        MomentTable mt = moment_table(fam, p, a.r_max);
        json row{{"p", p}, {"a_tilde", mt.a_tilde}, {"h", mt.h}, {"h_sieve", mt.h_sieve}, {"nu", mt.nu},
                 {"truncation", "exact"}, {"tail_bound", 0}};
        json gm = json::array(), bm = json::array();
        for (int r = 0; r <= a.r_max; ++r) {
            gm.push_back(mpz_json(mt.moments[r]));
            bm.push_back(mpz_json(mt.bad_moments[r]));
            csv << p << ',' << r << ',' << int_str(mt.moments[r]) << ',' << int_str(mt.bad_moments[r]) << ','
                << fmt_double(mt.a_tilde) << ',' << fmt_double(mt.h) << ',' << mt.nu << ",exact,0\n";
            text.row({std::to_string(p), std::to_string(r), int_str(mt.moments[r]), int_str(mt.bad_moments[r]),
                      fmt_double(mt.a_tilde), fmt_double(mt.h), std::to_string(mt.nu)});
            if (!a.verify_closed) continue;
            for (Side s : {Side::good, Side::bad}) {
                if (!has_closed_form(fam, r, s)) continue;
                ++checked;
                const mpz_class& got = s == Side::good ? mt.moments[r] : mt.bad_moments[r];
                mpz_class want = closed_form_moment(fam, p, r, s);
                if (got != want)
                    mismatches.push_back({{"p", p}, {"r", r}, {"side", s == Side::good ? "good" : "bad"},
                                          {"brute", int_str(got)}, {"closed_form", int_str(want)}});
            }
        }
        row["moments"] = gm;
        row["bad_moments"] = bm;
        rows.push_back(row);
    }
    result["moment_tables"] = rows;

    if (a.verify_closed) {
        if (fam.closed_form == ClosedForm::none)
            throw Error(ErrorKind::unsupported, "family " + fam.name + " has no registered closed forms");
        result["closed_form_check"] = {{"checked", checked}, {"mismatches", mismatches}};
    }

    std::string table = c.out.format == "csv" ? csv.str() : text.str();
    if (a.aggregate) {
        if (!builtin) throw Error(ErrorKind::unsupported, "--aggregate needs a built-in family");
        AggregateOptions o;
        o.mode = a.mode == "cited" ? AggregateMode::cited
                 : a.mode == "expansion" ? AggregateMode::expansion
                                         : AggregateMode::published;
        o.atilde_primes = a.atilde_primes;
        FamilyLowerOrder f = aggregate_lower_order(fam.name, o);
        result["aggregate"] = lower_order_to_json(f);
        std::ostringstream ac;
        ac << "name,weight,value,main,sieve,truncation,tail_bound,method,cited_value\n";
        TextTable at({"piece", "weight", "value", "tail_bound", "truncation", "cited"});
        for (auto& p : f.pieces) {
            ac << csv_escape(p.name) << ',' << fmt_double(p.weight) << ',' << fmt_double(p.value) << ','
               << fmt_double(p.main) << ',' << fmt_double(p.sieve) << ',' << p.truncation.label() << ','
               << fmt_double(p.tail_bound) << ',' << to_string(p.method) << ',' << opt_str(p.cited_value) << '\n';
            at.row({p.name, fmt_double(p.weight), fmt_double(p.value), fmt_double(p.tail_bound),
                    p.truncation.label(), opt_str(p.cited_value)});
            man.truncations.push_back(p.truncation.label());
        }
        ac << "total,1," << fmt_double(f.total) << ",,,," << fmt_double(f.tail_bound) << ",,"
           << opt_str(f.paper_value) << '\n';
        at.row({"total", "", fmt_double(f.total), fmt_double(f.tail_bound), "", opt_str(f.paper_value)});
        // the csv hand-off carries one table: the breakdown replaces the moment rows
        table = c.out.format == "csv" ? ac.str() : text.str() + "\n" + at.str();
    }
    emit(c.out, "family", result, table, man);
    if (!mismatches.empty()) {
        std::cerr << "closed-form mismatches: " << mismatches.size() << "\n";
        for (auto& m : mismatches) std::cerr << "  " << m.dump() << "\n";
        return verification;
    }
    return ok;
}

// ---------------------------------------------------------------------------

struct ExplicitArgs {
    std::string family;
    std::string phi = "gaussian_truncated:2";
    std::vector<double> log_R;
    std::optional<u64> prime_limit;
    std::string tail = "auto";
    std::optional<std::size_t> atilde_primes;
    std::optional<double> reference_c;
};

int cmd_explicit(const ExplicitArgs& a, const Common& c, RunManifest& man) {
    TestFunctionPair phi = builtin_test_pair(a.phi);
    for (double L : a.log_R)
        if (!(L > 0)) throw Error(ErrorKind::config, "--logR must be positive");

    MomentModel model = a.family == "cusp_model" ? cusp_model(a.atilde_primes.value_or(1'000'000))
                                                 : family_model(resolve_family(a.family), a.atilde_primes.value_or(10'000));
    double need = 0;
    for (double L : a.log_R) need = std::max(need, log_required_limit(model, phi, L));

    EvaluateOptions opt;
    opt.tail = a.tail == "pnt" ? TailModel::pnt : TailModel::none;
    if (a.prime_limit) {
        opt.prime_limit = *a.prime_limit;
    } else if (need > std::log((double)kDefaultExplicitLimit)) {
        opt.prime_limit = kDefaultExplicitLimit;
        if (a.tail == "auto") opt.tail = TailModel::pnt;
        if (opt.tail == TailModel::none || !model.shape)
            throw IncompleteSupport("support of phihat needs primes up to exp(" + fmt_double(need) +
                                        "); pass --prime-limit or --tail pnt",
                                    std::exp(need));
    }

    auto runs = evaluate_S_batch(model, phi, a.log_R, opt);

    std::optional<double> cref = a.reference_c;
    if (!cref)
        for (auto& f : aggregate_families())
            if (f == model.name) {
                AggregateOptions o;
                o.mode = AggregateMode::cited;
                cref = aggregate_lower_order(f, o).paper_value;
            }

    json result;
    result["family"] = model.name;
    result["phi"] = {{"name", phi.name}, {"sigma", phi.sigma}, {"phi0", phi.phi0}, {"phihat0", phi.phihat0}};
    json rj = json::array();
    std::ostringstream csv;
    csv << "logR,piece,value,main,sieve,modeled_tail,tail_bound,prime_limit,tail_model\n";
    TextTable text({"logR", "piece", "value", "tail_bound", "modeled_tail"});
    for (auto& r : runs) {
        json j = s_decomposition_to_json(r);
        j["R"] = std::exp(r.log_R);
        rj.push_back(j);
        for (auto& p : r.pieces) {
            csv << fmt_double(r.log_R) << ',' << csv_escape(p.name) << ',' << fmt_double(p.value) << ','
                << fmt_double(p.main) << ',' << fmt_double(p.sieve) << ',' << fmt_double(p.modeled_tail) << ','
                << fmt_double(p.tail_bound) << ',' << r.prime_limit << ',' << to_string(r.tail) << '\n';
            text.row({fmt_double(r.log_R), p.name, fmt_double(p.value), fmt_double(p.tail_bound),
                      fmt_double(p.modeled_tail)});
        }
        csv << fmt_double(r.log_R) << ",total," << fmt_double(r.total) << ",,,," << fmt_double(r.tail_bound) << ','
            << r.prime_limit << ',' << to_string(r.tail) << '\n';
        csv << fmt_double(r.log_R) << ",lower_order_coefficient," << fmt_double(r.lower_order_coefficient)
            << ",,,," << fmt_double(r.tail_bound * r.log_R / (2 * phi.phihat0)) << ',' << r.prime_limit << ','
            << to_string(r.tail) << '\n';
        text.row({fmt_double(r.log_R), "total", fmt_double(r.total), fmt_double(r.tail_bound), ""});
        text.row({fmt_double(r.log_R), "lower_order_coefficient", fmt_double(r.lower_order_coefficient), "", ""});
        man.truncations.push_back(Truncation::limit(r.prime_limit).label() + (r.tail == TailModel::pnt ? "+pnt" : ""));
    }
    result["runs"] = rj;
    if (cref && runs.size() >= 2) {
        auto fit = fit_residuals(runs, phi, *cref);
        result["fit"] = {{"reference_c", fit.c}, {"logR", fit.L}, {"residual", fit.residual},
                         {"extracted", fit.extracted}, {"exponent", fit.exponent}};
    }
    json rmt = json::object();
    for (Symmetry s : {Symmetry::U, Symmetry::USp, Symmetry::O, Symmetry::SO_even, Symmetry::SO_odd})
        rmt[to_string(s)] = rmt_prediction(s, phi).value;
    result["rmt"] = rmt;
    result["rmt_outside_support"] = phi.sigma >= 1;
    if (phi.sigma >= 1)
        std::cerr << "warning: sigma >= 1, the random-matrix densities differ from the listed closed forms\n";

    man.config = {{"family", a.family}, {"phi", phi.label()}, {"logR", a.log_R}, {"tail", a.tail},
                  {"prime_limit", a.prime_limit ? json(*a.prime_limit) : json(nullptr)}};
    emit(c.out, "explicit", result, c.out.format == "csv" ? csv.str() : text.str(), man);
    return ok;
}

// ---------------------------------------------------------------------------

int cmd_verify(const std::string& suite, const VerifyOptions& vo, const Common& c, RunManifest& man) {
    auto res = run_verify(suite, vo);
    json arr = json::array();
    std::ostringstream csv;
    csv << "suite,checks,failures,passed,truncation,tail_bound\n";
    TextTable text({"suite", "checks", "failures", "status"});
    bool all = true;
    for (auto& r : res) {
        arr.push_back(suite_to_json(r));
        csv << r.name << ',' << r.checks << ',' << r.failure_count << ',' << (r.passed() ? "true" : "false")
            << ",exact,0\n";
        text.row({r.name, std::to_string(r.checks), std::to_string(r.failure_count), r.passed() ? "pass" : "FAIL"});
        all = all && r.passed();
    }
    man.config = {{"suite", suite}, {"prime_limit", vo.prime_limit}, {"inject_fault", vo.inject_fault}};
    man.truncations.push_back(Truncation::limit(vo.prime_limit).label());
    emit(c.out, "verify", json{{"suites", arr}, {"passed", all}}, c.out.format == "csv" ? csv.str() : text.str(), man);
    if (!all)
        for (auto& r : res)
            for (auto& f : r.failures) std::cerr << r.name << ": " << f << "\n";
    return all ? ok : verification;
}

} // namespace

int main(int argc, char** argv) {
    const auto t0 = std::chrono::steady_clock::now();
    CLI::App app{"Lower-order terms in one-level densities of elliptic curve families"};
    app.require_subcommand(1);

    Common common;
    ConstantsArgs ca;
    FamilyArgs fa;
    ExplicitArgs ea;
    std::string suite = "all";
    VerifyOptions vo;

    auto* sc = app.add_subcommand("constants", "evaluate catalog constants");
    sc->add_option("--name", ca.name, "catalog key or 'all'")->capture_default_str();
    auto* pl = sc->add_option("--prime-limit", ca.prime_limit, "sum over p <= N");
    auto* fp = sc->add_option("--first-primes", ca.first_primes, "sum over the first N primes");
    pl->excludes(fp);
    sc->add_option("--method", ca.method, "default, direct, closed, series or both")
        ->check(CLI::IsMember({"default", "direct", "closed", "series", "both"}))
        ->capture_default_str();
    add_common(sc, common);

    auto* sf = app.add_subcommand("family", "per-prime moments and lower-order aggregates");
    sf->add_option("--family", fa.family, "built-in name or @config.json")->required();
    sf->add_option("--prime-limit", fa.prime_limit, "moment tables for 5 <= p <= N")->capture_default_str();
    sf->add_option("--moments", fa.r_max, "largest moment r")->capture_default_str();
    sf->add_flag("--aggregate", fa.aggregate, "lower-order coefficient breakdown");
    sf->add_option("--mode", fa.mode, "published, cited or expansion")
        ->check(CLI::IsMember({"published", "cited", "expansion"}))
        ->capture_default_str();
    sf->add_option("--atilde-primes", fa.atilde_primes, "prime count for the A-tilde sums");
    sf->add_flag("--verify-closed-forms", fa.verify_closed, "compare brute force with closed forms");
    add_common(sf, common);

    auto* se = app.add_subcommand("explicit", "explicit-formula decomposition S = S_A' + S_0 + S_1 + S_2 + S_A~");
    se->add_option("--family", ea.family, "built-in name, @config.json or cusp_model")->required();
    se->add_option("--phi", ea.phi, "test function name:sigma")->capture_default_str();
    se->add_option("--logR", ea.log_R, "log R (repeatable)")->required()->expected(1, -1);
    se->add_option("--prime-limit", ea.prime_limit, "exact prime sums up to N");
    se->add_option("--tail", ea.tail, "auto, none or pnt")
        ->check(CLI::IsMember({"auto", "none", "pnt"}))
        ->capture_default_str();
    se->add_option("--atilde-primes", ea.atilde_primes, "prime count for the A-tilde constant");
    se->add_option("--reference-c", ea.reference_c, "coefficient for the residual fit");
    add_common(se, common);

    auto* sv = app.add_subcommand("verify", "exact oracle suites");
    sv->add_option("--suite", suite, "all, appendixB, identities, sieve or bias")->capture_default_str();
    sv->add_option("--prime-limit", vo.prime_limit, "prime bound for appendixB")->capture_default_str();
    sv->add_flag("--inject-fault", vo.inject_fault, "perturb the identities (negative control)")->group("");
    add_common(sv, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    RunManifest man;
    man.start = t0;
    man.argv.assign(argv, argv + argc);
    try {
        man.threads = resolve_threads(common);
        set_thread_count(man.threads);
        if (*sc) return cmd_constants(ca, common, man);
        if (*sf) return cmd_family(fa, common, man);
        if (*se) return cmd_explicit(ea, common, man);
        if (*sv) return cmd_verify(suite, vo, common, man);
    } catch (const IncompleteSupport& e) {
        std::cerr << "error: " << e.what() << "\nrequired prime limit: " << fmt_double(e.required_limit()) << "\n";
        return truncation;
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return usage;
}
