#include "ldl/lower_order.hpp"

#include <cmath>
#include <cstring>

#include "ldl/constants.hpp"
#include "ldl/error.hpp"
#include "ldl/hiprec.hpp"
#include "ldl/moments.hpp"

namespace ldl {

namespace {

int chi3(u64 p) {  // (3/p) for p >= 5
    u64 r = p % 12;
    return (r == 1 || r == 11) ? 1 : -1;
}
int chim3(u64 p) { return p % 3 == 1 ? 1 : -1; }  // (-3/p)
int chi2(u64 p) {
    u64 r = p % 8;
    return (r == 1 || r == 7) ? 1 : -1;
}

} // namespace

PrimeMoments prime_moments(const FamilySpec& fam, u64 p) {
    PrimeMoments m;
    if (fam.forced_zero(p)) return m;  // every fibre bad with a = 0
    m.h_sieve = h_factor(fam, p).sieve;
    const double P = (double)p;
    switch (fam.closed_form) {
    case ClosedForm::cm_sextic:
        if (p < 5) break;
        m.A0 = P - 1;
        m.A2 = p % 3 == 1 ? 2 * P * P - 2 * P : 0;
        return m;
    case ClosedForm::cm_quartic_36t:
        if (p < 5) break;
        m.A0 = P - 2;
        if (p % 4 == 1) {
            if (fam.quartic_coeff == -1) m.A1 = -2 * P;
            else if (fam.quartic_coeff == -4) m.A1 = -2 * P * chi2(p);
            else break;
            m.A2 = 2 * P * (P - 1) - (double)a_e_squared_x3_minus_x(p);
        }
        return m;
    case ClosedForm::noncm_3x12t: {
        if (p < 5) break;
        const int e3 = chi3(p), e = chim3(p);
        m.A0 = P - 2;
        m.A1 = -(e3 + e);
        m.A2 = P * P - 2 * P - 2 - P * e;
        m.bad_geometric = e3 / (P * (P - e3)) + e / (P * (P - e));
        return m;
    }
    case ClosedForm::none: break;
    }
    if (p == 2) throw Error(ErrorKind::unsupported, "prime_moments: p = 2 needs a forced-zero designation");
    MomentHistogram h(fiber_values(fam, p));
    m.A0 = h.moment(0, true).get_d();
    m.A1 = h.moment(1, true).get_d();
    m.A2 = h.moment(2, true).get_d();
    CompensatedSum bg;
    for (int a = -h.amax(); a <= h.amax(); ++a) {
        u64 c = h.count(a, false);
        if (c && a != 0) bg.add((double)c * a / (P * (P - a)));
    }
    m.bad_geometric = bg.value();
    return m;
}

double ClassDensity::at(u64 p) const {
    u64 r = p % b;
    for (auto& [a, v] : w)
        if (a % b == r) return v;
    return 0.0;
}

bool has_expansion_shape(const FamilySpec& fam) {
    switch (fam.closed_form) {
    case ClosedForm::cm_sextic:
    case ClosedForm::noncm_3x12t: return true;
    case ClosedForm::cm_quartic_36t: return fam.quartic_coeff == -1 || fam.quartic_coeff == -4;
    case ClosedForm::none: return false;
    }
    return false;
}

ExpansionShape expansion_shape(const FamilySpec& fam) {
    if (!has_expansion_shape(fam))
        throw Error(ErrorKind::unsupported, "no class-density data for family " + fam.name);
    ExpansionShape s;
    s.s0 = {1, {{0, 2.0}}};
    switch (fam.closed_form) {
    case ClosedForm::cm_sextic:
        s.s1 = {1, {}};
        s.s2 = {3, {{1, 2.0}}};
        s.a1_linear = false;
        s.a1_zero = true;
        break;
    case ClosedForm::cm_quartic_36t:
        s.s1 = fam.quartic_coeff == -1 ? ClassDensity{4, {{1, -2.0}}} : ClassDensity{8, {{1, -2.0}, {5, 2.0}}};
        s.s2 = {4, {{1, 2.0}}};
        break;
    case ClosedForm::noncm_3x12t:
        s.s1 = {1, {}};
        s.s2 = {1, {{0, 1.0}}};
        s.a1_linear = false;
        break;
    case ClosedForm::none: break;
    }
    return s;
}

std::vector<WeightedPiece> weighted_pieces(const ExpansionShape& s) {
    return {{"S_0", 2.0, 2, &s.s0}, {"S_1", -2.0, 1, &s.s1}, {"S_2", -2.0, 2, &s.s2}};
}

double piece_kernel(const char* piece, const PrimeMoments& m, u64 p, bool sieve_part) {
    const double P = (double)p;
    const double h = sieve_part ? m.h_sieve : 1.0;
    if (!std::strcmp(piece, "S_0")) return 2 * m.A0 * h / P;
    if (!std::strcmp(piece, "S_1")) return m.A1 * h / P;
    if (!std::strcmp(piece, "S_2")) return m.A2 * h / (P * P);
    throw Error(ErrorKind::domain, std::string("piece_kernel: ") + piece);
}

// ---------------------------------------------------------------------------

ClassConstants::ClassConstants(std::size_t prime_count) : table_(first_primes(prime_count)) {
    g_all_ = gamma_pnt(Method::closed_form, table_).value;
    g13_ = gamma_pnt_ab(1, 3, Method::closed_form, table_).value / 2;
    g14_ = gamma_pnt_ab(1, 4, Method::closed_form, table_).value / 2;
    tail_ = 2 * power_tail_bound((double)table_.back(), 2.0);
}

double ClassConstants::gamma(u64 a, u64 b) const {
    a %= b;
    if (b == 1) return g_all_;
    const double l2 = (double)hp::log_2 / 2, l3 = (double)hp::log_3 / 3;
    if (b == 3) {
        if (a == 0) return l3;
        if (a == 1) return g13_;
        return g_all_ - g13_ - l3;
    }
    if (b == 4) {
        if (a == 0) return 0.0;
        if (a == 2) return l2;
        if (a == 1) return g14_;
        return g_all_ - g14_ - l2;
    }
    for (auto& [k, v] : cache_)
        if (k == std::make_pair(a, b)) return v;
    double v = class_log_constant(a, b, table_).value;
    cache_.push_back({{a, b}, v});
    return v;
}

// ---------------------------------------------------------------------------

ExpansionCoefficients expansion_coefficients(const FamilySpec& fam, std::size_t closed_form_primes,
                                             std::size_t atilde_primes) {
    const ExpansionShape shape = expansion_shape(fam);
    ClassConstants cc(closed_form_primes);
    const auto& table = cc.table();
    const double X = (double)table.back();

    struct Acc {
        // per piece: main and sieve parts
        CompensatedSum ap[2], s0[2], s1[2], s2[2];
        void merge(const Acc& o) {
            for (int i = 0; i < 2; ++i) {
                ap[i].add(o.ap[i]);
                s0[i].add(o.s0[i]);
                s1[i].add(o.s1[i]);
                s2[i].add(o.s2[i]);
            }
        }
    };
    auto acc = reduce_table<Acc>(table.view(), [&](std::span<const u64> ps, Acc& a) {
        for (u64 p : ps) {
            const PrimeMoments m = prime_moments(fam, p);
            const double P = (double)p, lp = std::log(P);
            for (int part = 0; part < 2; ++part) {
                const double h = part ? m.h_sieve : 1.0;
                if (part && h == 0) continue;
                a.ap[part].add(-m.bad_geometric * h * lp);
                // phihat-weighted remainders: (factor/2) (K_p - w) log p/p
                const double k0 = piece_kernel("S_0", m, p, part) - (part ? 0 : shape.s0.at(p));
                const double k1 = piece_kernel("S_1", m, p, part) - (part ? 0 : shape.s1.at(p));
                const double k2 = piece_kernel("S_2", m, p, part) - (part ? 0 : shape.s2.at(p));
                a.s0[part].add(k0 * lp / P - 2 * m.A0 * h * lp / (P * P * (P + 1)));
                a.s1[part].add(-k1 * lp / P + m.A1 * h * (3 * P + 1) * lp / (P * P * (P + 1) * (P + 1)));
                a.s2[part].add(-k2 * lp / P +
                               m.A2 * h * (4 * P * P + 3 * P + 1) * lp / (P * P * P * (P + 1) * (P + 1) * (P + 1)));
            }
        }
    });

    ExpansionCoefficients out;
    out.family = fam.name;
    out.closed_form_primes = table.size();
    out.atilde_primes = atilde_primes;

    auto class_sum = [&](const ClassDensity& d) {
        double s = 0;
        for (auto& [a, w] : d.w) s += w * cc.gamma(a, d.b);
        return s;
    };
    auto main_part = [&](const WeightedPiece& wp) {
        double s = 0;
        for (auto& [a, w] : wp.density->w) s += w;
        return wp.factor * s / (2.0 * wp.j * (double)euler_phi(wp.density->b));
    };
    for (auto& wp : weighted_pieces(shape)) out.main += main_part(wp);

    // remainder tails: |K - w| <= 12/p and the phihat(0) sums decay like log p/p^2
    const double tail = 16 * power_tail_bound(X, 2.0) + cc.tail_bound();

    auto piece = [&](const char* name, const CompensatedSum* s, double class_part) {
        ExpansionPiece e;
        e.name = name;
        e.main = s[0].value() + class_part;
        e.sieve = s[1].value();
        e.value = e.main + e.sieve;
        e.tail_bound = tail;
        return e;
    };
    out.pieces.push_back(piece("S_A'", acc.ap, 0.0));
    out.pieces.push_back(piece("S_0", acc.s0, class_sum(shape.s0)));
    out.pieces.push_back(piece("S_1", acc.s1, -class_sum(shape.s1)));
    out.pieces.push_back(piece("S_2", acc.s2, -class_sum(shape.s2)));

    AtildeConstant at = family_constant_Atilde(fam, atilde_primes);
    ExpansionPiece pa;
    pa.name = "S_Atilde";
    pa.main = -at.main;
    pa.sieve = -at.sieve;
    pa.value = pa.main + pa.sieve;
    pa.tail_bound = at.tail_bound;
    out.atilde_largest_prime = at.largest_prime;
    out.pieces.push_back(pa);

    CompensatedSum t;
    double tb = 0;
    for (auto& e : out.pieces) {
        t.add(e.value);
        tb += e.tail_bound;
    }
    out.total = t.value();
    out.tail_bound = tb;
    return out;
}

} // namespace ldl
