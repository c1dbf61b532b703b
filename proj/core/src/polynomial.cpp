#include "ldl/polynomial.hpp"

#include <limits>
#include <sstream>

#include "ldl/error.hpp"

namespace ldl {

IntPoly::IntPoly(std::vector<i64> c) : c_(std::move(c)) { trim(); }

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

u64 IntPoly::eval_mod(u64 t, u64 m) const {
    u64 r = 0;
    if (m < (u64(1) << 31)) {
        t %= m;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = (r * t + mod(*it, m)) % m;
        return r;
    }
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        r = (u64)(((u128)r * t + mod(*it, m)) % m);
    return r;
}

i128 IntPoly::eval(i64 t) const {
    i128 r = 0;
    constexpr i128 lim = (i128)1 << 120;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        r = r * t + *it;
        if (r > lim || r < -lim) throw Error(ErrorKind::width, "IntPoly::eval: exceeds 128-bit range");
    }
    return r;
}

IntPoly IntPoly::derivative() const {
    std::vector<i64> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * (i64)i);
    return IntPoly(d);
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<i64> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return IntPoly(c);
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<i64> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(c);
}

IntPoly operator*(i64 k, const IntPoly& a) {
    std::vector<i64> c = a.c_;
    for (auto& x : c) x *= k;
    return IntPoly(c);
}

std::string IntPoly::str(const char* var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        i64 c = c_[i];
        if (c == 0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        i64 ac = c < 0 ? -c : c;
        if (ac != 1 || i == 0) os << ac;
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

std::vector<u64> roots_mod_prime_power(const IntPoly& f, u64 p, int e, std::size_t max_solutions) {
    std::vector<u64> sols;
    for (u64 t = 0; t < p; ++t)
        if (f.eval_mod(t, p) == 0) sols.push_back(t);
    u64 pj = p;
    for (int j = 1; j < e; ++j) {
        if ((u128)pj * p > std::numeric_limits<u64>::max())
            throw Error(ErrorKind::width, "roots_mod_prime_power: modulus exceeds 64 bits");
        u64 pn = pj * p;
        std::vector<u64> next;
        for (u64 s : sols) {
            for (u64 i = 0; i < p; ++i) {
                u64 t = s + i * pj;
                if (f.eval_mod(t, pn) == 0) next.push_back(t);
            }
            if (next.size() > max_solutions)
                throw Error(ErrorKind::resource, "roots_mod_prime_power: too many solutions");
        }
        sols.swap(next);
        pj = pn;
    }
    return sols;
}

} // namespace ldl
