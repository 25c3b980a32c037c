#pragma once

// Reconstruction of the degree-22 Frobenius characteristic polynomial from
// point counts. The Lefschetz relation turns counts into untwisted power
// sums; the 16 known algebraic classes (15 exceptional curves permuted by
// Frobenius, plus the hyperplane) are subtracted; Newton's identities give
// the first half of the unknown degree-6 factor and the Weil functional
// equation completes it.

#include "rmk3/counter.hpp"
#include "rmk3/ratpoly.hpp"

namespace rmk3 {

struct CharPolyPair {
    i64 p = 0;
    RatPoly untwisted;  // Q(T), monic degree 22, integer coefficients
    RatPoly twisted;    // chi(Z) = Q(pZ) / p^22
    int epsilon = 0;    // T^22 Q(p^2/T) = epsilon p^22 Q(T)
    std::vector<CountRecord> provenance;
    bool unit_circle_ok = true;  // floating-point advisory, never gating
};

// (T - p) times the characteristic polynomial of p times the permutation
// matrix of sigma acting on the 15 pairs.
RatPoly algebraic_known_charpoly(const std::vector<int>& sigma, i64 p);

// counts must cover k = 1..n (n >= 3) for a single fiber. Throws
// AmbiguousSign when both functional-equation signs survive the supplied
// counts (the caller should add a k = 4 count), InconsistentCounts when
// neither does, NonIntegralCoefficients when Newton's identities leave a
// denominator (either way a counting bug).
CharPolyPair assemble_charpoly(const FiberSpec& fiber, const std::vector<CountRecord>& counts,
                               const std::vector<int>& sigma);

struct CyclotomicFactor {
    unsigned d = 1;
    unsigned multiplicity = 0;
};

struct TranscendentalPoly {
    RatPoly chi_tr;
    std::vector<CyclotomicFactor> removed;  // sorted by d
};

// Strips every cyclotomic divisor Phi_d (phi(d) <= current degree) from the
// twisted polynomial; the remainder has no root-of-unity zeroes.
TranscendentalPoly split_transcendental(const RatPoly& twisted);
TranscendentalPoly split_transcendental(const CharPolyPair& cp);

}  // namespace rmk3
