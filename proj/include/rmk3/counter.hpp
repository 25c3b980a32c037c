#pragma once

// Point counting on the double cover X' and the desingularized K3 X.
//
// Two permanently maintained engines: the naive engine sums the quadratic
// character of the branch sextic over P^2(F_q) and is the trust anchor; the
// fibered engine (QW5 only) sums genus-2 fiber counts over the pencil of
// lines through (2 : -1 : 2) and is the performance path. Both run in
// discrete-log space over the field's Zech tables and are partitioned
// deterministically, so totals are bit-identical for any worker count.

#include "rmk3/branchgeom.hpp"

#include <array>
#include <cstdint>

namespace rmk3 {

enum class CountMethod { naive, fibered };
const char* count_method_name(CountMethod m);
CountMethod count_method_from_name(const std::string& s);

struct CountBudget {
    u64 max_q = 1ull << 21;   // default full-sweep ceiling
    bool allow_large = false; // explicit override, up to the log-table limit
    int jobs = 1;
};

struct CountRecord {
    FiberSpec fiber;
    int k = 1;
    u64 n_prime = 0;  // #X'(F_q)
    u64 n_k3 = 0;     // #X(F_q) = n_prime + q * pair_fixed_count(sigma, k)
    CountMethod method = CountMethod::naive;
    double wall_seconds = 0.0;
};

// #X'(F_{p^k}) = sum over P^2(F_q) of 1 + chi(f(P)).
u64 count_double_cover_naive(const FiberSpec& fiber, int k, const CountBudget& budget = {});

// Same count via the pencil through (2 : -1 : 2); QW5 only. Sums
// #C_(v0:v1)(F_q) over P^1(F_q) and subtracts q for the blown-up center.
u64 count_double_cover_fibered(const FiberSpec& fiber, int k, const CountBudget& budget = {});

CountRecord count_k3(const FiberSpec& fiber, int k, CountMethod method,
                     const CountBudget& budget = {});

// One genus-2 fiber of the QW5 pencil: w^2 = scalar * P_(v0,v1)(u).
struct QuinticFiberForm {
    FieldPtr field;
    FqElem t, v0, v1;
    std::array<FqElem, 6> coeffs;  // P ascending, monic quintic
    FqElem scalar;                 // 25 (v0 + (-2t+2) v1)
    FqElem alpha;                  // -(1/25)v0^2 + (2/25)v0 v1 + (4/25)v1^2
    FqElem shift_c;                // C = P((v0 - v1)/5)
};

QuinticFiberForm quintic_fiber_form(const FieldPtr& field, const FqElem& t,
                                    const FqElem& v0, const FqElem& v1);

struct DicksonNormalized {
    FqElem alpha;
    FqElem shift_c;
    std::array<FqElem, 6> coeffs;  // u^5 - 5 alpha u^3 + 5 alpha^2 u
};

// Shifts P by (v0 - v1)/5 and checks coefficient-wise that the result is the
// Dickson form u^5 - 5 alpha u^3 + 5 alpha^2 u.
DicksonNormalized dickson_normalize(const QuinticFiberForm& form);

// Brute-force bijectivity of the evaluation map of a polynomial over F_p.
bool is_permutation_polynomial(std::span<const i64> coeffs, i64 p);

}  // namespace rmk3
