#include "ldl/explicit_formula.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include <nlohmann/json.hpp>

#include "ldl/error.hpp"
#include "ldl/moments.hpp"

namespace ldl {

namespace {

constexpr u64 kClassModulus = 24;   // every class density modulus divides this
constexpr double kRemainderC = 16;  // |K_p - w(p)| <= 16/p
constexpr double kZeroPartC = 8;    // phihat(0) summands <= 8 log p/p^2

struct PieceSpec {
    const char* name;
    double factor;
    int j;
    const ClassDensity* density;
};

std::vector<PieceSpec> piece_specs(const std::optional<ExpansionShape>& s) {
    static const ClassDensity none{1, {}};
    if (!s) return {{"S_0", 2.0, 2, &none}, {"S_1", -2.0, 1, &none}, {"S_2", -2.0, 2, &none}};
    std::vector<PieceSpec> v;
    for (auto& w : weighted_pieces(*s)) v.push_back({w.name, w.factor, w.j, w.density});
    return v;
}

// log of the support end for piece j, or 0 when the piece vanishes identically
double piece_log_limit(const MomentModel& m, const PieceSpec& p, double sigma, double L) {
    if (m.shape && !std::strcmp(p.name, "S_1")) {
        if (m.shape->a1_zero) return 0;
        // bounded A_1: terms beyond R^{sigma/2} fall under the remainder bound
        if (!m.shape->a1_linear) return sigma * L / 2;
    }
    return sigma * L / p.j;
}

// Sum_{p} S[p] with phihat-weighted parts for each L.
struct Acc {
    std::size_t nL = 0;
    // [piece][L][part]
    std::vector<CompensatedSum> w;
    // [piece][part] phihat(0) parts: S_A', S_0, S_1, S_2
    CompensatedSum z[4][2];
    CompensatedSum theta[kClassModulus];
    u64 largest = 0;

    void init(std::size_t n) {
        nL = n;
        w.assign(3 * n * 2, {});
    }
    CompensatedSum& at(int piece, std::size_t l, int part) { return w[(piece * nL + l) * 2 + part]; }
    void merge(const Acc& o) {
        if (o.w.empty()) return;
        if (w.empty()) init(o.nL);
        for (std::size_t i = 0; i < w.size(); ++i) w[i].add(o.w[i]);
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 2; ++k) z[i][k].add(o.z[i][k]);
        for (u64 r = 0; r < kClassModulus; ++r) theta[r].add(o.theta[r]);
        largest = std::max(largest, o.largest);
    }
};

} // namespace

const char* to_string(TailModel t) { return t == TailModel::pnt ? "pnt" : "none"; }

MomentModel family_model(const FamilySpec& fam, std::size_t atilde_primes) {
    MomentModel m;
    m.name = fam.name;
    m.moments = [fam](u64 p) { return prime_moments(fam, p); };
    if (has_expansion_shape(fam)) m.shape = expansion_shape(fam);
    m.atilde = [fam, atilde_primes] { return family_constant_Atilde(fam, atilde_primes); };
    return m;
}

MomentModel cusp_model(std::size_t atilde_primes) {
    MomentModel m;
    m.name = "cusp_model";
    m.paper_family = false;
    m.moments = [](u64 p) {
        PrimeMoments r;
        r.A0 = (double)p;
        r.A2 = (double)p * (double)p;
        return r;
    };
    ExpansionShape s;
    s.s0 = {1, {{0, 2.0}}};
    s.s1 = {1, {}};
    s.s2 = {1, {{0, 1.0}}};
    s.a1_linear = false;
    s.a1_zero = true;
    m.shape = s;
    m.atilde = [atilde_primes] {
        auto r = compute_constant("gamma_st_atilde", Truncation::count(atilde_primes), Method::direct_sum);
        AtildeConstant a;
        a.main = r.value;
        a.truncation = r.truncation;
        a.largest_prime = r.largest_prime;
        a.tail_bound = r.tail_bound;
        return a;
    };
    return m;
}

double log_required_limit(const MomentModel& m, const TestFunctionPair& f, double log_R) {
    double need = 0;
    for (auto& p : piece_specs(m.shape)) need = std::max(need, piece_log_limit(m, p, f.sigma, log_R));
    return need;
}

std::vector<SDecomposition> evaluate_S_batch(const MomentModel& m, const TestFunctionPair& f,
                                             const std::vector<double>& log_Rs, const EvaluateOptions& opt) {
    if (!m.moments) throw Error(ErrorKind::dependency, "evaluate_S: no moment source for " + m.name);
    if (log_Rs.empty()) return {};
    for (double L : log_Rs)
        if (!(L > 0) || !std::isfinite(L)) throw Error(ErrorKind::domain, "evaluate_S: log R must be positive");
    if (opt.tail == TailModel::pnt && !m.shape)
        throw Error(ErrorKind::unsupported, "evaluate_S: the pnt tail needs class densities, none known for " + m.name);

    const auto specs = piece_specs(m.shape);
    double need = 0;
    for (double L : log_Rs) need = std::max(need, log_required_limit(m, f, L));

    u64 X;
    if (opt.prime_limit) {
        X = *opt.prime_limit;
    } else {
        if (need > std::log(1e11)) throw Error(ErrorKind::resource, "evaluate_S: required limit exp(" + std::to_string(need) + ") is too large; pass a prime limit with the pnt tail");
        X = (u64)std::ceil(std::exp(need));
    }
    if (X < 5) X = 5;
    if (opt.tail == TailModel::none && std::log((double)X) < need * (1 - 1e-12))
        throw IncompleteSupport("evaluate_S: prime limit " + std::to_string(X) + " below the support of phihat (need exp(" +
                                    std::to_string(need) + "))",
                                std::exp(need));

    const std::size_t nL = log_Rs.size();
    Acc acc = reduce_primes<Acc>(X, [&](std::span<const u64> ps, Acc& a) {
        if (a.w.empty()) a.init(nL);
        for (u64 p : ps) {
            const PrimeMoments mo = m.moments(p);
            const double P = (double)p, lp = std::log(P);
            a.theta[p % kClassModulus].add(lp);
            a.largest = p;
            for (int part = 0; part < 2; ++part) {
                const double h = part ? mo.h_sieve : 1.0;
                if (h == 0) continue;
                const double q = P + 1;
                a.z[0][part].add(mo.bad_geometric * h * lp);
                a.z[1][part].add(2 * mo.A0 * h * lp / (P * P * q));
                a.z[2][part].add(mo.A1 * h * (3 * P + 1) * lp / (P * P * q * q));
                a.z[3][part].add(mo.A2 * h * (4 * P * P + 3 * P + 1) * lp / (P * P * P * q * q * q));
                for (int i = 0; i < 3; ++i) {
                    const double k = piece_kernel(specs[i].name, mo, p, part);
                    if (k == 0) continue;
                    for (std::size_t l = 0; l < nL; ++l) {
                        const double u = specs[i].j * lp / log_Rs[l];
                        if (u >= f.sigma) continue;
                        a.at(i, l, part).add(k * lp / P * f.phihat(u));
                    }
                }
            }
        }
    });
    if (acc.w.empty()) acc.init(nL);

    const AtildeConstant at = m.atilde ? m.atilde() : AtildeConstant{};
    const double Xd = (double)X, lX = std::log(Xd);
    const double zero_tail = kZeroPartC * power_tail_bound(Xd, 2.0);

    std::vector<SDecomposition> out;
    for (std::size_t l = 0; l < nL; ++l) {
        const double L = log_Rs[l];
        SDecomposition d;
        d.family = m.name;
        d.phi = f.name;
        d.sigma = f.sigma;
        d.log_R = L;
        d.prime_limit = X;
        d.largest_prime = acc.largest;
        d.tail = opt.tail;
        d.log_required_limit = log_required_limit(m, f, L);
        d.atilde_largest_prime = at.largest_prime;
        const double c0 = 2 * f.phihat0 / L;

        auto zpart = [&](int i, double sign) {
            SPiece s;
            s.main = sign * c0 * acc.z[i][0].value();
            s.sieve = sign * c0 * acc.z[i][1].value();
            s.tail_bound = c0 * zero_tail;
            return s;
        };
        SPiece ap = zpart(0, -1);
        ap.name = "S_A'";
        SPiece s0 = zpart(1, -1), s1 = zpart(2, 1), s2 = zpart(3, 1);
        s0.name = "S_0";
        s1.name = "S_1";
        s2.name = "S_2";
        SPiece* wp[3] = {&s0, &s1, &s2};

        for (int i = 0; i < 3; ++i) {
            const auto& sp = specs[i];
            SPiece& s = *wp[i];
            s.main += sp.factor / L * acc.at(i, l, 0).value();
            s.sieve += sp.factor / L * acc.at(i, l, 1).value();
            const double lim = piece_log_limit(m, sp, f.sigma, L);
            const double uX = sp.j * lX / L;
            if (lim == 0 || uX >= f.sigma) continue;
            // primes beyond X carry phihat-weight; remainder K - w is O(1/p)
            s.tail_bound += std::fabs(sp.factor) * f.phihat_sup / L * kRemainderC * power_tail_bound(Xd, 2.0);
            if (opt.tail == TailModel::none) continue;
            const double phib = (double)euler_phi(sp.density->b);
            const double gX = f.phihat(uX) / (Xd * L);
            const double integral = f.phihat_tail_integral(uX);
            const double lip = (f.phihat_sup + sp.j * f.phihat_deriv_sup / L) / L;
            for (auto& [a, w] : sp.density->w) {
                if (kClassModulus % sp.density->b)
                    throw Error(ErrorKind::unsupported, "evaluate_S: class modulus does not divide 24");
                double theta = 0;
                for (u64 r = 0; r < kClassModulus; ++r)
                    if (r % sp.density->b == a % sp.density->b) theta += acc.theta[r].value();
                const double E = theta - Xd / phib;
                const double t = sp.factor * w * (integral / (sp.j * phib) - gX * E);
                s.main += t;
                s.modeled_tail += t;
                s.tail_bound += std::fabs(sp.factor * w) * lip * theta_integral_tail_bound(Xd);
            }
        }

        SPiece sa;
        sa.name = "S_Atilde";
        sa.main = -c0 * at.main;
        sa.sieve = -c0 * at.sieve;
        sa.tail_bound = c0 * at.tail_bound;

        d.pieces = {ap, s0, s1, s2, sa};
        CompensatedSum tot;
        for (auto& p : d.pieces) {
            p.value = p.main + p.sieve;
            tot.add(p.value);
            d.tail_bound += p.tail_bound;
        }
        d.total = tot.value();
        if (m.shape)
            for (auto& sp : specs) {
                double ws = 0;
                for (auto& [a, w] : sp.density->w) ws += w;
                d.main_coefficient += sp.factor * ws / (2.0 * sp.j * (double)euler_phi(sp.density->b));
            }
        d.main_term_estimate = d.main_coefficient * f.phi0;
        d.lower_order_coefficient = (d.total - d.main_term_estimate) * L / (2 * f.phihat0);
        out.push_back(std::move(d));
    }
    return out;
}

SDecomposition evaluate_S(const MomentModel& m, const TestFunctionPair& f, double log_R, const EvaluateOptions& opt) {
    return evaluate_S_batch(m, f, {log_R}, opt).front();
}

SDecomposition evaluate_S(const FamilySpec& fam, const TestFunctionPair& f, double log_R, const EvaluateOptions& opt) {
    return evaluate_S(family_model(fam), f, log_R, opt);
}

AsymptoticFit fit_residuals(const std::vector<SDecomposition>& runs, const TestFunctionPair& f, double c) {
    AsymptoticFit fit;
    fit.c = c;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (auto& r : runs) {
        const double res = r.total - (r.main_term_estimate + c * 2 * f.phihat0 / r.log_R);
        fit.L.push_back(r.log_R);
        fit.residual.push_back(res);
        fit.extracted.push_back(r.lower_order_coefficient);
        if (res == 0) continue;
        const double x = std::log(r.log_R), y = std::log(std::fabs(res));
        sx += x, sy += y, sxx += x * x, sxy += x * y;
        ++n;
    }
    if (n >= 2) fit.exponent = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}

nlohmann::json s_decomposition_to_json(const SDecomposition& s) {
    nlohmann::json j;
    j["family"] = s.family;
    j["phi"] = {{"name", s.phi}, {"sigma", s.sigma}};
    j["logR"] = s.log_R;
    j["prime_limit"] = s.prime_limit;
    j["largest_prime"] = s.largest_prime;
    j["tail_model"] = to_string(s.tail);
    j["log_required_limit"] = s.log_required_limit;
    nlohmann::json ps = nlohmann::json::object();
    for (auto& p : s.pieces)
        ps[p.name] = {{"value", p.value}, {"main", p.main}, {"sieve", p.sieve},
                      {"modeled_tail", p.modeled_tail}, {"tail_bound", p.tail_bound}};
    j["pieces"] = ps;
    j["total"] = s.total;
    j["tail_bound"] = s.tail_bound;
    j["main_term_estimate"] = s.main_term_estimate;
    j["lower_order_coefficient"] = s.lower_order_coefficient;
    j["atilde_largest_prime"] = s.atilde_largest_prime;
    return j;
}

} // namespace ldl
