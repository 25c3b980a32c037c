#include "rmk3/ratpoly.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace rmk3 {

void RatPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly::RatPoly(std::vector<BigRat> c) : c_(std::move(c)) { trim(); }

RatPoly RatPoly::constant(BigRat v) { return RatPoly({std::move(v)}); }

RatPoly RatPoly::monomial(BigRat v, int deg) {
    std::vector<BigRat> c(deg + 1, BigRat(0));
    c[deg] = std::move(v);
    return RatPoly(std::move(c));
}

RatPoly RatPoly::from_ints(const std::vector<i64>& c) {
    std::vector<BigRat> v(c.size());
    for (size_t i = 0; i < c.size(); ++i) v[i] = c[i];
    return RatPoly(std::move(v));
}

bool RatPoly::integer_coeffs() const {
    for (const auto& x : c_)
        if (!is_integer(x)) return false;
    return true;
}

const BigRat& RatPoly::coeff(int i) const {
    static const BigRat zero(0);
    if (i < 0 || i >= (int)c_.size()) return zero;
    return c_[i];
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
    std::vector<BigRat> r(std::max(c_.size(), o.c_.size()), BigRat(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return RatPoly(std::move(r));
}

RatPoly RatPoly::operator-(const RatPoly& o) const {
    std::vector<BigRat> r(std::max(c_.size(), o.c_.size()), BigRat(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return RatPoly(std::move(r));
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return RatPoly();
    std::vector<BigRat> r(c_.size() + o.c_.size() - 1, BigRat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return RatPoly(std::move(r));
}

RatPoly RatPoly::scaled(const BigRat& s) const {
    std::vector<BigRat> r = c_;
    for (auto& x : r) x *= s;
    return RatPoly(std::move(r));
}

std::pair<RatPoly, RatPoly> RatPoly::divrem(const RatPoly& d) const {
    if (d.is_zero()) raise(errc::division_by_zero, "polynomial division by zero");
    std::vector<BigRat> rem = c_;
    int dd = d.deg();
    if (deg() < dd) return {RatPoly(), *this};
    std::vector<BigRat> quot(deg() - dd + 1, BigRat(0));
    for (int sh = deg() - dd; sh >= 0; --sh) {
        BigRat c = rem[sh + dd] / d.c_[dd];
        quot[sh] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dd; ++j) rem[sh + j] -= c * d.c_[j];
    }
    return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

std::optional<RatPoly> RatPoly::divide_exact(const RatPoly& d) const {
    auto [q, r] = divrem(d);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

BigRat RatPoly::eval(const BigRat& x) const {
    BigRat acc(0);
    for (int i = deg(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

RatPoly RatPoly::compose_scale(const BigRat& s) const {
    std::vector<BigRat> r = c_;
    BigRat pw(1);
    for (size_t i = 0; i < r.size(); ++i) {
        r[i] *= pw;
        pw *= s;
    }
    return RatPoly(std::move(r));
}

std::vector<BigRat> RatPoly::power_sums(int n) const {
    if (!is_monic()) raise(errc::bad_parameter, "power sums need a monic polynomial");
    int d = deg();
    // e_i = (-1)^i c_{d-i}
    std::vector<BigRat> e(d + 1);
    for (int i = 0; i <= d; ++i) e[i] = (i % 2 ? -c_[d - i] : c_[d - i]);
    std::vector<BigRat> s(n + 1, BigRat(0));
    for (int k = 1; k <= n; ++k) {
        BigRat acc(0);
        for (int j = 1; j <= std::min(k - 1, d); ++j)
            acc += (j % 2 ? e[j] : -e[j]) * s[k - j];
        if (k <= d) acc += (k % 2 ? e[k] : -e[k]) * k;
        s[k] = acc;
    }
    return s;  // s[0] unused
}

RatPoly RatPoly::from_power_sums(const std::vector<BigRat>& s, int n) {
    if ((int)s.size() < n + 1) raise(errc::bad_parameter, "need power sums up to n");
    std::vector<BigRat> e(n + 1);
    e[0] = 1;
    for (int i = 1; i <= n; ++i) {
        BigRat acc(0);
        for (int j = 1; j <= i; ++j) acc += (j % 2 ? s[j] : -s[j]) * e[i - j];
        e[i] = acc / i;
    }
    std::vector<BigRat> c(n + 1);
    for (int i = 0; i <= n; ++i) c[n - i] = (i % 2 ? -e[i] : e[i]);
    return RatPoly(std::move(c));
}

std::string RatPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = deg(); i >= 0; --i) {
        const BigRat& c = c_[i];
        if (c == 0) continue;
        BigRat a = c;
        if (!first) {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool unit = (a == 1 || a == -1) && i > 0;
        if (a == -1 && i > 0) out << "-";
        if (!unit) out << a;
        if (i > 0) {
            if (!unit) out << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

RatPoly cyclotomic(unsigned d) {
    static std::map<unsigned, RatPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto compute = [](auto&& self, unsigned n) -> RatPoly {
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        std::vector<BigRat> xn(n + 1, BigRat(0));
        xn[0] = -1;
        xn[n] = 1;
        RatPoly phi = RatPoly(std::move(xn));
        for (unsigned e = 1; e < n; ++e) {
            if (n % e) continue;
            auto q = phi.divide_exact(self(self, e));
            if (!q) raise(errc::internal_error, "cyclotomic division failed");
            phi = *q;
        }
        cache[n] = phi;
        return phi;
    };
    return compute(compute, d);
}

RatPoly power_charpoly(const RatPoly& poly, unsigned m) {
    if (!poly.is_monic()) raise(errc::bad_parameter, "power_charpoly needs a monic polynomial");
    if (m == 0) raise(errc::bad_parameter, "m must be positive");
    if (m == 1) return poly;
    int n = poly.deg();
    if (n == 0) return poly;
    std::vector<BigRat> s = poly.power_sums(n * (int)m);
    std::vector<BigRat> sm(n + 1, BigRat(0));
    for (int k = 1; k <= n; ++k) sm[k] = s[(size_t)k * m];
    return RatPoly::from_power_sums(sm, n);
}

std::optional<RatPoly> poly_exact_sqrt(const RatPoly& f) {
    int d = f.deg();
    if (d < 0 || d % 2 != 0 || !f.is_monic()) return std::nullopt;
    int h = d / 2;
    // solve g monic of degree h with g^2 = f, coefficient by coefficient from
    // the top, then verify by squaring
    std::vector<BigRat> g(h + 1, BigRat(0));
    g[h] = 1;
    for (int i = h - 1; i >= 0; --i) {
        // coefficient of x^(h+i) in g^2 is 2 g_i plus cross terms of the
        // already-determined coefficients
        BigRat acc(0);
        for (int a = i + 1; a <= h - 1; ++a) {
            int b = h + i - a;
            if (b < i + 1 || b > a) continue;
            acc += (a == b ? g[a] * g[b] : 2 * g[a] * g[b]);
        }
        g[i] = (f.coeff(h + i) - acc) / 2;
    }
    RatPoly root{std::vector<BigRat>(g.begin(), g.end())};
    if (root * root == f) return root;
    return std::nullopt;
}

std::pair<int, BigInt> squarefree_class(const BigRat& r) {
    if (r == 0) raise(errc::bad_parameter, "squarefree class of zero");
    int sign = r < 0 ? -1 : 1;
    BigInt n = numerator(r) * denominator(r);
    if (n < 0) n = -n;
    // strip small square factors, then fall back to u64 factorization
    BigInt kernel = 1;
    for (BigInt d = 2; d * d <= n && d < 100000; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            if (e % 2) kernel *= d;
        }
    }
    if (n > 1) {
        if (n > BigInt(UINT64_MAX))
            raise(errc::budget_exceeded, "squarefree kernel out of factorization range");
        kernel *= squarefree_kernel((u64)n);
    }
    return {sign, kernel};
}

}  // namespace rmk3
