#pragma once

// Dense univariate polynomials over exact big rationals. Everything the
// charpoly pipeline touches stays in exact arithmetic; floating point only
// appears in clearly-marked advisory checks elsewhere.

#include "rmk3/errors.hpp"
#include "rmk3/numutil.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rmk3 {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline bool is_integer(const BigRat& r) { return denominator(r) == 1; }

class RatPoly {
public:
    RatPoly() = default;                       // zero polynomial
    explicit RatPoly(std::vector<BigRat> c);   // ascending coefficients
    static RatPoly constant(BigRat v);
    static RatPoly monomial(BigRat v, int deg);
    static RatPoly from_ints(const std::vector<i64>& c);

    int deg() const { return (int)c_.size() - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    bool integer_coeffs() const;
    const BigRat& coeff(int i) const;
    const std::vector<BigRat>& coeffs() const { return c_; }

    RatPoly operator+(const RatPoly& o) const;
    RatPoly operator-(const RatPoly& o) const;
    RatPoly operator*(const RatPoly& o) const;
    RatPoly scaled(const BigRat& s) const;
    bool operator==(const RatPoly& o) const { return c_ == o.c_; }

    std::pair<RatPoly, RatPoly> divrem(const RatPoly& d) const;
    std::optional<RatPoly> divide_exact(const RatPoly& d) const;

    BigRat eval(const BigRat& x) const;

    // reverse-scale: x -> s x, i.e. coefficients c_i -> c_i s^i
    RatPoly compose_scale(const BigRat& s) const;

    // power sums s_1..s_n of the roots (with multiplicity); monic required
    std::vector<BigRat> power_sums(int n) const;
    // monic polynomial of degree n whose root power sums are s[1..n]
    static RatPoly from_power_sums(const std::vector<BigRat>& s, int n);

    std::string str(const std::string& var = "Z") const;

private:
    std::vector<BigRat> c_;
    void trim();
};

// Phi_d, integer coefficients, cached.
RatPoly cyclotomic(unsigned d);

// Monic polynomial whose roots are the m-th powers of poly's roots, with
// multiplicity; equal to Res_Y(poly(Y), Z - Y^m) up to normalization.
RatPoly power_charpoly(const RatPoly& poly, unsigned m);

// Exact square root in Q[Z] of a monic even-degree polynomial, if it exists.
std::optional<RatPoly> poly_exact_sqrt(const RatPoly& f);

// Squarefree class of a nonzero rational: (sign, squarefree magnitude of
// numerator times denominator).
std::pair<int, BigInt> squarefree_class(const BigRat& r);

}  // namespace rmk3
