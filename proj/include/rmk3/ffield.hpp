#pragma once

// Exact arithmetic in F_p and F_{p^k}. A field is described by (p, k) and the
// lexicographically least monic irreducible modulus of degree k, so every run
// on every machine works with the same representation. Elements are reduced
// residue vectors; no arbitrary precision in the element hot path.
//
// Large sweeps go through the packed-index tables (discrete log / Zech
// logarithm) that a field builds on demand for q up to kLogTableMaxQ.

#include "rmk3/errors.hpp"
#include "rmk3/numutil.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace rmk3 {

class Fq;
class FqElem;
using FieldPtr = std::shared_ptr<const Fq>;

// Discrete-log tables over packed element indices (index = sum c_i p^i).
// exp_of[i] = packed(g^i) for the deterministic generator g, log_of[packed]
// inverts it (log_of[0] = kNoLog), zech[n] = log(1 + g^n) with kNoLog at the
// unique n where 1 + g^n = 0.
struct LogTables {
    static constexpr std::uint32_t kNoLog = 0xffffffffu;
    std::uint32_t q_minus_1 = 0;
    std::vector<std::uint32_t> exp_of;
    std::vector<std::uint32_t> log_of;
    std::vector<std::uint32_t> zech;

    std::uint32_t add_logs(std::uint32_t la, std::uint32_t lb) const {
        // log of g^la + g^lb
        if (la == kNoLog) return lb;
        if (lb == kNoLog) return la;
        std::uint32_t d = lb >= la ? lb - la : lb + q_minus_1 - la;
        std::uint32_t z = zech[d];
        if (z == kNoLog) return kNoLog;
        std::uint32_t r = la + z;
        if (r >= q_minus_1) r -= q_minus_1;
        return r;
    }
    std::uint32_t mul_logs(std::uint32_t la, std::uint32_t lb) const {
        if (la == kNoLog || lb == kNoLog) return kNoLog;
        std::uint32_t r = la + lb;
        if (r >= q_minus_1) r -= q_minus_1;
        return r;
    }
    // chi(g^l) = +1 iff l even; chi(0) = 0.
    int chi_of_log(std::uint32_t l) const {
        if (l == kNoLog) return 0;
        return (l & 1) ? -1 : 1;
    }
};

class Fq : public std::enable_shared_from_this<Fq> {
public:
    // Largest q for which the square-indicator bitmap is precomputed; above
    // this, quadratic characters fall back to exponentiation.
    static constexpr u64 kCharBitmapMaxQ = 1ull << 26;
    // Largest q for which log/Zech tables may be built (three u32 arrays).
    static constexpr u64 kLogTableMaxQ = 1ull << 22;

    // make_field. p an odd prime < 2^31, 1 <= k <= 16; the modulus is the
    // lexicographically least monic irreducible (coefficients compared from
    // the T^{k-1} one down).
    static FieldPtr make(i64 p, int k);

    i64 p() const { return p_; }
    int k() const { return k_; }
    bool q_fits_u128() const { return q_fits_; }
    u128 q() const;                   // throws when p^k exceeds 128 bits
    bool q_fits_u64() const { return q_fits_ && q_ <= (u128)UINT64_MAX; }
    u64 q64() const;
    std::span<const i64> modulus() const { return modulus_; }  // ascending, monic

    FqElem zero() const;
    FqElem one() const;
    FqElem from_int(i64 n) const;                  // image of the integer n
    FqElem element(std::vector<i64> coeffs) const; // reduced mod p, size <= k
    FqElem from_index(u64 idx) const;
    u64 index_of(const FqElem& a) const;

    // Deterministic generator of F_q^*: the packed-order least element of
    // full multiplicative order. Requires factoring q-1.
    FqElem generator() const;

    const std::vector<bool>& square_bitmap() const;  // size q, lazily built
    const LogTables& log_tables() const;             // lazily built

    bool same_field(const Fq& other) const { return p_ == other.p_ && k_ == other.k_; }

    // raw residue-vector ops (coeff vectors of size k, entries in [0,p))
    void vec_add(std::span<const i64> a, std::span<const i64> b, std::span<i64> out) const;
    void vec_sub(std::span<const i64> a, std::span<const i64> b, std::span<i64> out) const;
    void vec_neg(std::span<const i64> a, std::span<i64> out) const;
    void vec_mul(std::span<const i64> a, std::span<const i64> b, std::span<i64> out) const;
    void vec_inv(std::span<const i64> a, std::span<i64> out) const;
    void vec_pow(std::span<const i64> a, u128 e, std::span<i64> out) const;

    std::vector<std::pair<u64, int>> factor_q_minus_1() const;

    ~Fq();
    Fq(const Fq&) = delete;
    Fq& operator=(const Fq&) = delete;

private:
    Fq(i64 p, int k, std::vector<i64> modulus);

    i64 p_;
    int k_;
    std::vector<i64> modulus_;
    bool q_fits_ = false;
    u128 q_ = 0;

    mutable std::once_flag bitmap_once_, log_once_, gen_once_;
    mutable std::vector<bool> square_bitmap_;
    mutable LogTables log_tables_;
    mutable std::vector<i64> generator_coeffs_;
};

class FqElem {
public:
    FqElem() = default;
    FqElem(FieldPtr field, std::vector<i64> coeffs);

    const FieldPtr& field() const { return field_; }
    std::span<const i64> coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;

    FqElem operator+(const FqElem& o) const;
    FqElem operator-(const FqElem& o) const;
    FqElem operator*(const FqElem& o) const;
    FqElem operator-() const;
    FqElem inv() const;
    FqElem operator/(const FqElem& o) const { return *this * o.inv(); }
    FqElem pow(u128 e) const;
    FqElem frobenius() const;  // a -> a^p

    bool operator==(const FqElem& o) const;
    bool operator!=(const FqElem& o) const { return !(*this == o); }

    // canonical packed-index order (works for any q; compares digits from
    // the most significant down)
    static int cmp(const FqElem& a, const FqElem& b);

private:
    friend class Fq;
    FieldPtr field_;
    std::vector<i64> c_;  // size k, reduced
    void check_same(const FqElem& o) const;
};

// chi(a): 0 for a = 0, +1 for nonzero squares, -1 otherwise.
int quadratic_character(const FqElem& a);

// Deterministic square root (the packed-order smaller of the two), or
// nullopt when a is a non-square. sqrt(0) = 0.
std::optional<FqElem> sqrt_in_field(const FqElem& a);

// Least element of exact multiplicative order n; requires n | q - 1.
FqElem primitive_nth_root(const FieldPtr& field, u64 n);

}  // namespace rmk3
