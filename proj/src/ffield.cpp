#include "rmk3/ffield.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <sstream>

namespace rmk3 {

namespace {

// ---------------------------------------------------------------------------
// dense polynomial helpers over F_p (ascending coefficients, i64 residues)
// ---------------------------------------------------------------------------

using Poly = std::vector<i64>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return (int)a.size() - 1; }  // -1 for zero

Poly poly_mul_mod_p(const Poly& a, const Poly& b, i64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

// a mod f, f monic
Poly poly_rem(Poly a, const Poly& f, i64 p) {
    int df = degree(f);
    trim(a);
    while (degree(a) >= df) {
        i64 c = a.back();
        int shift = degree(a) - df;
        if (c) {
            for (int j = 0; j <= df; ++j) {
                a[shift + j] = (a[shift + j] - c * f[j]) % p;
                if (a[shift + j] < 0) a[shift + j] += p;
            }
        }
        a.pop_back();
        trim(a);
    }
    return a;
}

// (quotient, remainder), f need not be monic
std::pair<Poly, Poly> poly_divrem(Poly a, const Poly& f, i64 p) {
    int df = degree(f);
    i64 lc_inv = inv_mod(f.back(), p);
    trim(a);
    Poly q(std::max(0, degree(a) - df + 1), 0);
    while (degree(a) >= df) {
        i64 c = a.back() * lc_inv % p;
        int shift = degree(a) - df;
        q[shift] = c;
        for (int j = 0; j <= df; ++j) {
            a[shift + j] = (a[shift + j] - c * f[j]) % p;
            if (a[shift + j] < 0) a[shift + j] += p;
        }
        trim(a);
    }
    return {q, a};
}

Poly poly_gcd(Poly a, Poly b, i64 p) {
    trim(a); trim(b);
    while (!b.empty()) {
        Poly r = poly_divrem(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly polymod_mul(const Poly& a, const Poly& b, const Poly& f, i64 p) {
    return poly_rem(poly_mul_mod_p(a, b, p), f, p);
}

Poly polymod_pow(Poly base, u64 e, const Poly& f, i64 p) {
    Poly r = {1};
    while (e) {
        if (e & 1) r = polymod_mul(r, base, f, p);
        base = polymod_mul(base, base, f, p);
        e >>= 1;
    }
    return r;
}

// Rabin irreducibility: x^{p^k} = x mod f and gcd(x^{p^{k/l}} - x, f) = 1
// for every prime l | k.
bool is_irreducible(const Poly& f, i64 p) {
    int k = degree(f);
    if (k == 1) return true;
    Poly x = {0, 1};
    // frobenius tower: xq[i] = x^{p^i} mod f
    std::vector<Poly> xq(k + 1);
    xq[0] = x;
    for (int i = 1; i <= k; ++i) xq[i] = polymod_pow(xq[i - 1], (u64)p, f, p);
    if (xq[k] != poly_rem(x, f, p)) return false;
    for (auto [l, e] : factorize((u64)k)) {
        Poly h = xq[k / l];
        // h - x
        if (h.size() < 2) h.resize(2, 0);
        h[1] = (h[1] - 1) % p;
        if (h[1] < 0) h[1] += p;
        trim(h);
        Poly g = poly_gcd(f, h, p);
        if (degree(g) > 0) return false;
    }
    return true;
}

// Lexicographically least monic irreducible of degree k: candidate
// coefficient tuples (c_{k-1}, ..., c_0) are enumerated in ascending order.
Poly least_irreducible(i64 p, int k) {
    if (k == 1) return {0, 1};
    std::vector<i64> digits(k, 0);  // digits[0] = c_{k-1} .. digits[k-1] = c_0
    for (;;) {
        Poly f(k + 1, 0);
        f[k] = 1;
        for (int i = 0; i < k; ++i) f[k - 1 - i] = digits[i];
        if (is_irreducible(f, p)) return f;
        int pos = k - 1;
        while (pos >= 0 && digits[pos] == p - 1) digits[pos--] = 0;
        if (pos < 0) raise(errc::internal_error, "no irreducible polynomial found");
        ++digits[pos];
    }
}

// small integer cyclotomic values, used to split q-1 into u64-sized parts
u128 cyclotomic_at(int d, i64 p) {
    // Phi_d(p) via (p^d - 1) / prod_{e|d, e<d} Phi_e(p)
    u128 num = 1;
    for (int i = 0; i < d; ++i) num *= (u128)p;
    num -= 1;
    for (int e = 1; e < d; ++e)
        if (d % e == 0) num /= cyclotomic_at(e, p);
    return num;
}

std::map<std::pair<i64, int>, std::weak_ptr<const Fq>>& field_cache() {
    static std::map<std::pair<i64, int>, std::weak_ptr<const Fq>> cache;
    return cache;
}
std::mutex& field_cache_mutex() {
    static std::mutex mu;
    return mu;
}

}  // namespace

// ---------------------------------------------------------------------------
// Fq
// ---------------------------------------------------------------------------

Fq::Fq(i64 p, int k, std::vector<i64> modulus) : p_(p), k_(k), modulus_(std::move(modulus)) {
    u128 q = 1;
    q_fits_ = true;
    for (int i = 0; i < k_; ++i) {
        if (q > (u128)-1 / (u128)p_) { q_fits_ = false; break; }
        q *= (u128)p_;
    }
    if (q_fits_) q_ = q;
}

Fq::~Fq() = default;

FieldPtr Fq::make(i64 p, int k) {
    if (p < 2 || !is_prime((u64)p)) raise(errc::not_prime, "p = " + std::to_string(p));
    if (p == 2) raise(errc::even_characteristic, "characteristic 2 is rejected");
    if (p >= (i64(1) << 31)) raise(errc::bad_parameter, "p must be < 2^31");
    if (k < 1 || k > 16) raise(errc::degree_out_of_range, "k = " + std::to_string(k));
    {
        std::lock_guard<std::mutex> lock(field_cache_mutex());
        auto it = field_cache().find({p, k});
        if (it != field_cache().end()) {
            if (auto f = it->second.lock()) return f;
        }
    }
    auto field = std::shared_ptr<const Fq>(new Fq(p, k, least_irreducible(p, k)));
    {
        std::lock_guard<std::mutex> lock(field_cache_mutex());
        field_cache()[{p, k}] = field;
    }
    return field;
}

u128 Fq::q() const {
    if (!q_fits_) raise(errc::budget_exceeded, "p^k exceeds 128 bits");
    return q_;
}

u64 Fq::q64() const {
    if (!q_fits_u64()) raise(errc::budget_exceeded, "p^k exceeds 64 bits");
    return (u64)q_;
}

FqElem Fq::zero() const { return FqElem(shared_from_this(), std::vector<i64>(k_, 0)); }
FqElem Fq::one() const { return from_int(1); }

FqElem Fq::from_int(i64 n) const {
    std::vector<i64> c(k_, 0);
    c[0] = n % p_;
    if (c[0] < 0) c[0] += p_;
    return FqElem(shared_from_this(), std::move(c));
}

FqElem Fq::element(std::vector<i64> coeffs) const {
    for (i64& x : coeffs) {
        x %= p_;
        if (x < 0) x += p_;
    }
    if ((int)coeffs.size() > k_) coeffs = poly_rem(std::move(coeffs), modulus_, p_);
    coeffs.resize(k_, 0);
    return FqElem(shared_from_this(), std::move(coeffs));
}

FqElem Fq::from_index(u64 idx) const {
    std::vector<i64> c(k_, 0);
    for (int i = 0; i < k_; ++i) {
        c[i] = (i64)(idx % (u64)p_);
        idx /= (u64)p_;
    }
    if (idx != 0) raise(errc::bad_parameter, "element index out of range");
    return FqElem(shared_from_this(), std::move(c));
}

u64 Fq::index_of(const FqElem& a) const {
    u64 idx = 0;
    for (int i = k_ - 1; i >= 0; --i) idx = idx * (u64)p_ + (u64)a.coeffs()[i];
    return idx;
}

void Fq::vec_add(std::span<const i64> a, std::span<const i64> b, std::span<i64> out) const {
    for (int i = 0; i < k_; ++i) {
        i64 s = a[i] + b[i];
        out[i] = s >= p_ ? s - p_ : s;
    }
}

void Fq::vec_sub(std::span<const i64> a, std::span<const i64> b, std::span<i64> out) const {
    for (int i = 0; i < k_; ++i) {
        i64 s = a[i] - b[i];
        out[i] = s < 0 ? s + p_ : s;
    }
}

void Fq::vec_neg(std::span<const i64> a, std::span<i64> out) const {
    for (int i = 0; i < k_; ++i) out[i] = a[i] ? p_ - a[i] : 0;
}

void Fq::vec_mul(std::span<const i64> a, std::span<const i64> b, std::span<i64> out) const {
    // schoolbook product, reduced by the monic modulus; entries stay below p
    // so each a[i]*b[j] fits i64 for p < 2^31
    i64 w[31] = {0};
    for (int i = 0; i < k_; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < k_; ++j) w[i + j] = (w[i + j] + a[i] * b[j]) % p_;
    }
    for (int d = 2 * k_ - 2; d >= k_; --d) {
        i64 c = w[d];
        if (!c) continue;
        w[d] = 0;
        for (int j = 0; j < k_; ++j) {
            w[d - k_ + j] = (w[d - k_ + j] - c * modulus_[j]) % p_;
            if (w[d - k_ + j] < 0) w[d - k_ + j] += p_;
        }
    }
    for (int i = 0; i < k_; ++i) out[i] = w[i];
}

void Fq::vec_inv(std::span<const i64> a, std::span<i64> out) const {
    Poly r0 = modulus_, r1(a.begin(), a.end());
    trim(r1);
    if (r1.empty()) raise(errc::division_by_zero, "inverse of zero");
    Poly s0 = {}, s1 = {1};
    while (!r1.empty()) {
        auto [q, r2] = poly_divrem(r0, r1, p_);
        Poly s2 = s0;  // s2 = s0 - q*s1
        Poly qs1 = poly_mul_mod_p(q, s1, p_);
        s2.resize(std::max(s2.size(), qs1.size()), 0);
        for (size_t i = 0; i < qs1.size(); ++i) {
            s2[i] = (s2[i] - qs1[i]) % p_;
            if (s2[i] < 0) s2[i] += p_;
        }
        trim(s2);
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
    }
    // r0 is a nonzero constant; inverse = s0 / r0
    i64 scale = inv_mod(r0[0], p_);
    s0.resize(k_, 0);
    for (int i = 0; i < k_; ++i) out[i] = s0[i] * scale % p_;
}

void Fq::vec_pow(std::span<const i64> a, u128 e, std::span<i64> out) const {
    std::vector<i64> base(a.begin(), a.end()), r(k_, 0);
    r[0] = 1;
    while (e) {
        if (e & 1) vec_mul(r, base, r);
        vec_mul(base, base, base);
        e >>= 1;
    }
    std::copy(r.begin(), r.end(), out.begin());
}

std::vector<std::pair<u64, int>> Fq::factor_q_minus_1() const {
    if (q_fits_u64()) return factorize(q64() - 1);
    if (!q_fits_) raise(errc::budget_exceeded, "q too large to factor");
    // q - 1 = prod_{d | k} Phi_d(p); factor each part separately
    std::map<u64, int> merged;
    for (int d = 1; d <= k_; ++d) {
        if (k_ % d) continue;
        u128 v = cyclotomic_at(d, p_);
        if (v > (u128)UINT64_MAX) raise(errc::budget_exceeded, "cyclotomic part of q-1 exceeds 64 bits");
        for (auto [pr, e] : factorize((u64)v)) merged[pr] += e;
    }
    return {merged.begin(), merged.end()};
}

FqElem Fq::generator() const {
    std::call_once(gen_once_, [this] {
        auto factors = factor_q_minus_1();
        u128 qm1 = q() - 1;
        auto self = shared_from_this();
        for (u64 idx = 2; idx < (u64)1 << 24; ++idx) {
            FqElem cand = from_index(idx);
            bool ok = true;
            for (auto [l, e] : factors) {
                if (cand.pow(qm1 / (u128)l).is_one()) { ok = false; break; }
            }
            if (ok) {
                generator_coeffs_.assign(cand.coeffs().begin(), cand.coeffs().end());
                return;
            }
        }
        raise(errc::internal_error, "generator scan exhausted");
    });
    return FqElem(shared_from_this(), generator_coeffs_);
}

const std::vector<bool>& Fq::square_bitmap() const {
    std::call_once(bitmap_once_, [this] {
        if (!q_fits_u64() || q64() > kCharBitmapMaxQ)
            raise(errc::budget_exceeded, "square bitmap only built for q <= 2^26");
        u64 q = q64();
        square_bitmap_.assign(q, false);
        if (k_ == 1) {
            for (u64 x = 1; x < q; ++x) square_bitmap_[x * x % q] = true;
        } else {
            std::vector<i64> e(k_, 0), sq(k_, 0);
            for (u64 idx = 1; idx < q; ++idx) {
                u64 v = idx;
                for (int i = 0; i < k_; ++i) { e[i] = (i64)(v % (u64)p_); v /= (u64)p_; }
                vec_mul(e, e, sq);
                u64 out = 0;
                for (int i = k_ - 1; i >= 0; --i) out = out * (u64)p_ + (u64)sq[i];
                square_bitmap_[out] = true;
            }
        }
    });
    return square_bitmap_;
}

const LogTables& Fq::log_tables() const {
    std::call_once(log_once_, [this] {
        if (!q_fits_u64() || q64() > kLogTableMaxQ)
            raise(errc::budget_exceeded, "log tables only built for q <= 2^22");
        u64 q = q64();
        LogTables t;
        t.q_minus_1 = (std::uint32_t)(q - 1);
        t.exp_of.resize(q - 1);
        t.log_of.assign(q, LogTables::kNoLog);
        t.zech.assign(q - 1, LogTables::kNoLog);
        FqElem g = generator();
        std::vector<i64> cur(k_, 0);
        cur[0] = 1;
        std::vector<i64> tmp(k_, 0);
        for (u64 i = 0; i + 1 < q; ++i) {
            u64 idx = 0;
            for (int j = k_ - 1; j >= 0; --j) idx = idx * (u64)p_ + (u64)cur[j];
            t.exp_of[i] = (std::uint32_t)idx;
            t.log_of[idx] = (std::uint32_t)i;
            vec_mul(cur, g.coeffs(), tmp);
            cur = tmp;
        }
        for (u64 n = 0; n + 1 < q; ++n) {
            u64 y = t.exp_of[n];
            // packed index of 1 + g^n: bump digit 0 mod p
            u64 c0 = y % (u64)p_;
            u64 y2 = (c0 == (u64)p_ - 1) ? y - c0 : y + 1;
            t.zech[n] = (y2 == 0) ? LogTables::kNoLog : t.log_of[y2];
        }
        log_tables_ = std::move(t);
    });
    return log_tables_;
}

// ---------------------------------------------------------------------------
// FqElem
// ---------------------------------------------------------------------------

FqElem::FqElem(FieldPtr field, std::vector<i64> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    if ((int)c_.size() != field_->k()) raise(errc::internal_error, "element width mismatch");
}

void FqElem::check_same(const FqElem& o) const {
    if (!field_ || !o.field_ || !field_->same_field(*o.field_))
        raise(errc::field_mismatch, "operands live in different fields");
}

bool FqElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](i64 x) { return x == 0; });
}

bool FqElem::is_one() const {
    if (c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](i64 x) { return x == 0; });
}

FqElem FqElem::operator+(const FqElem& o) const {
    check_same(o);
    std::vector<i64> r(c_.size());
    field_->vec_add(c_, o.c_, r);
    return FqElem(field_, std::move(r));
}

FqElem FqElem::operator-(const FqElem& o) const {
    check_same(o);
    std::vector<i64> r(c_.size());
    field_->vec_sub(c_, o.c_, r);
    return FqElem(field_, std::move(r));
}

FqElem FqElem::operator*(const FqElem& o) const {
    check_same(o);
    std::vector<i64> r(c_.size());
    field_->vec_mul(c_, o.c_, r);
    return FqElem(field_, std::move(r));
}

FqElem FqElem::operator-() const {
    std::vector<i64> r(c_.size());
    field_->vec_neg(c_, r);
    return FqElem(field_, std::move(r));
}

FqElem FqElem::inv() const {
    std::vector<i64> r(c_.size());
    field_->vec_inv(c_, r);
    return FqElem(field_, std::move(r));
}

FqElem FqElem::pow(u128 e) const {
    std::vector<i64> r(c_.size());
    field_->vec_pow(c_, e, r);
    return FqElem(field_, std::move(r));
}

FqElem FqElem::frobenius() const { return pow((u128)(u64)field_->p()); }

bool FqElem::operator==(const FqElem& o) const {
    if (!field_ || !o.field_ || !field_->same_field(*o.field_)) return false;
    return c_ == o.c_;
}

int FqElem::cmp(const FqElem& a, const FqElem& b) {
    a.check_same(b);
    for (int i = (int)a.c_.size() - 1; i >= 0; --i) {
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i] ? -1 : 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// characters, roots
// ---------------------------------------------------------------------------

int quadratic_character(const FqElem& a) {
    if (a.is_zero()) return 0;
    const Fq& f = *a.field();
    if (f.q_fits_u64() && f.q64() <= Fq::kCharBitmapMaxQ)
        return f.square_bitmap()[f.index_of(a)] ? 1 : -1;
    FqElem v = a.pow((f.q() - 1) / 2);
    return v.is_one() ? 1 : -1;
}

std::optional<FqElem> sqrt_in_field(const FqElem& a) {
    if (a.is_zero()) return a;
    int chi = quadratic_character(a);
    if (chi < 0) return std::nullopt;
    const FieldPtr& f = a.field();
    u128 q = f->q();
    // Tonelli-Shanks: q - 1 = 2^s * m
    u128 m = q - 1;
    int s = 0;
    while ((m & 1) == 0) { m >>= 1; ++s; }
    FqElem r = a.pow((m + 1) / 2);
    if (s >= 1) {
        // find a non-square by packed-order scan
        FqElem z = f->one();
        for (u64 idx = 2;; ++idx) {
            z = f->from_index(idx);
            if (quadratic_character(z) == -1) break;
        }
        FqElem c = z.pow(m);
        FqElem t = a.pow(m);
        int cap = s;
        while (!t.is_one()) {
            FqElem tt = t;
            int i = 0;
            while (!tt.is_one()) { tt = tt * tt; ++i; }
            FqElem b = c;
            for (int j = 0; j < cap - i - 1; ++j) b = b * b;
            r = r * b;
            c = b * b;
            t = t * c;
            cap = i;
        }
    }
    FqElem neg = -r;
    FqElem root = FqElem::cmp(r, neg) <= 0 ? r : neg;
    if (root * root != a) raise(errc::internal_error, "sqrt verification failed");
    return root;
}

FqElem primitive_nth_root(const FieldPtr& field, u64 n) {
    if (n == 0) raise(errc::bad_parameter, "n = 0");
    u128 qm1 = field->q() - 1;
    if (qm1 % (u128)n != 0)
        raise(errc::order_unavailable, "n does not divide q - 1");
    if (n == 1) return field->one();
    if (n > (1u << 20)) raise(errc::budget_exceeded, "n too large for candidate scan");
    FqElem g = field->generator();
    FqElem h = g.pow(qm1 / (u128)n);
    FqElem best = h;
    FqElem cur = h;
    for (u64 j = 2; j < n; ++j) {
        cur = cur * h;
        if (gcd_u64(j, n) != 1) continue;
        if (FqElem::cmp(cur, best) < 0) best = cur;
    }
    return best;
}

}  // namespace rmk3
