#pragma once

// The two K3 families and their branch-line geometry. A fiber is (family, p,
// t); its branch sextic splits into six lines over a small extension of F_p.
// The arrangement records the normalized lines, the p-power Frobenius
// permutation on them, and the 15 pairwise intersection points whose blow-up
// produces the K3.

#include "rmk3/ffield.hpp"

#include <array>
#include <string>
#include <vector>

namespace rmk3 {

enum class Family { qw2, qw5 };

const char* family_name(Family f);
Family family_from_name(const std::string& s);

struct FiberSpec {
    Family family;
    i64 p;
    i64 t;  // residue in [0, p)
    bool operator==(const FiberSpec&) const = default;
};

// true iff the family's inverted polynomial is nonzero at t.
// QW5: (t-1)(t^4-t^3+t^2-t+1), p not 2 or 5. QW2: t(t^2-2)(t^2+2)(t^2-4t+2)(t^2+4t+2), p odd.
bool good_fiber(Family family, i64 p, i64 t);

// Dense homogeneous trivariate form over a field; coeff(i, j) multiplies
// x^i y^j z^(deg-i-j).
class TriPoly {
public:
    TriPoly(FieldPtr field, int deg);
    static TriPoly linear(const FieldPtr& field, const FqElem& a, const FqElem& b, const FqElem& c);

    int deg() const { return deg_; }
    const FieldPtr& field() const { return field_; }
    const FqElem& coeff(int i, int j) const;
    void set_coeff(int i, int j, FqElem v);
    TriPoly operator*(const TriPoly& o) const;
    TriPoly scaled(const FqElem& s) const;
    FqElem eval(const FqElem& x, const FqElem& y, const FqElem& z) const;
    bool operator==(const TriPoly& o) const;

private:
    FieldPtr field_;
    int deg_;
    std::vector<FqElem> c_;
    int idx(int i, int j) const;
};

// The 28 coefficients of the branch sextic at t, exactly as the product of
// the family's printed factors, embedded in the given field.
TriPoly branch_sextic(const FiberSpec& fiber, const FieldPtr& field);

// Same data as machine residues over F_p, for the counting engines.
struct SexticResidues {
    i64 p;
    std::array<std::array<i64, 7>, 7> c;  // c[i][j], i + j <= 6
};
SexticResidues branch_sextic_residues(const FiberSpec& fiber);

struct LinearForm {
    std::array<FqElem, 3> a;  // a[0] x + a[1] y + a[2] z, first nonzero entry is 1
};
LinearForm normalize_linear(std::array<FqElem, 3> coeffs);

using ProjPoint = std::array<FqElem, 3>;  // normalized likewise

struct Arrangement {
    FiberSpec fiber;
    FieldPtr field;                 // splitting field F_{p^k}
    std::vector<LinearForm> lines;  // 6, in family order
    FqElem scale;                   // scale * prod(lines) == branch sextic
    std::vector<int> sigma;         // p-power Frobenius permutation, sigma[i] = image of line i
    std::vector<ProjPoint> nodes;   // the 15 pairwise intersections, distinct
};

// Builds the minimal splitting field and the six lines from the families'
// closed forms, verifies the product identity, extracts sigma and the nodes.
Arrangement line_arrangement(const FiberSpec& fiber);

// Number of unordered pairs {i,j} fixed as sets by sigma^m.
int pair_fixed_count(const std::vector<int>& sigma, int m);

// Cycle lengths of sigma itself and of the permutation sigma induces on the
// 15 unordered pairs, each sorted ascending.
std::vector<int> cycle_type(const std::vector<int>& sigma);
std::vector<int> pair_cycle_type(const std::vector<int>& sigma);

}  // namespace rmk3
