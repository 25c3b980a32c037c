#include "rmk3/branchgeom.hpp"

#include <algorithm>
#include <set>

namespace rmk3 {

const char* family_name(Family f) { return f == Family::qw2 ? "qw2" : "qw5"; }

Family family_from_name(const std::string& s) {
    if (s == "qw2") return Family::qw2;
    if (s == "qw5") return Family::qw5;
    raise(errc::bad_parameter, "unknown family '" + s + "'");
}

bool good_fiber(Family family, i64 p, i64 t) {
    if (p == 2) raise(errc::excluded_characteristic, "p = 2");
    if (p < 3 || !is_prime((u64)p)) raise(errc::not_prime, "p = " + std::to_string(p));
    if (family == Family::qw5 && p == 5) raise(errc::excluded_characteristic, "p = 5 for qw5");
    t %= p;
    if (t < 0) t += p;
    auto mul = [p](i64 a, i64 b) { return (i64)((u128)(u64)a * (u64)b % (u64)p); };
    if (family == Family::qw5) {
        i64 t2 = mul(t, t), t3 = mul(t2, t), t4 = mul(t2, t2);
        i64 phi10 = (((t4 - t3 + t2 - t + 1) % p) + p) % p;
        return (t - 1) % p != 0 && phi10 != 0;
    }
    i64 t2 = mul(t, t);
    i64 f1 = ((t2 - 2) % p + p) % p;
    i64 f2 = ((t2 + 2) % p + p) % p;
    i64 f3 = (((t2 - 4 * t) % p + 2) % p + p) % p;
    i64 f4 = (((t2 + 4 * t) % p + 2) % p + p) % p;
    return t != 0 && f1 != 0 && f2 != 0 && f3 != 0 && f4 != 0;
}

// ---------------------------------------------------------------------------
// TriPoly
// ---------------------------------------------------------------------------

TriPoly::TriPoly(FieldPtr field, int deg)
    : field_(std::move(field)), deg_(deg), c_((deg + 1) * (deg + 2) / 2, field_->zero()) {}

int TriPoly::idx(int i, int j) const {
    // row i holds j = 0..deg-i
    int row_start = i * (deg_ + 2) - i * (i + 1) / 2;
    return row_start + j;
}

const FqElem& TriPoly::coeff(int i, int j) const { return c_[idx(i, j)]; }
void TriPoly::set_coeff(int i, int j, FqElem v) { c_[idx(i, j)] = std::move(v); }

TriPoly TriPoly::linear(const FieldPtr& field, const FqElem& a, const FqElem& b, const FqElem& c) {
    TriPoly l(field, 1);
    l.set_coeff(1, 0, a);
    l.set_coeff(0, 1, b);
    l.set_coeff(0, 0, c);
    return l;
}

TriPoly TriPoly::operator*(const TriPoly& o) const {
    TriPoly r(field_, deg_ + o.deg_);
    for (int i1 = 0; i1 <= deg_; ++i1)
        for (int j1 = 0; i1 + j1 <= deg_; ++j1) {
            const FqElem& a = coeff(i1, j1);
            if (a.is_zero()) continue;
            for (int i2 = 0; i2 <= o.deg_; ++i2)
                for (int j2 = 0; i2 + j2 <= o.deg_; ++j2) {
                    const FqElem& b = o.coeff(i2, j2);
                    if (b.is_zero()) continue;
                    int i = i1 + i2, j = j1 + j2;
                    r.set_coeff(i, j, r.coeff(i, j) + a * b);
                }
        }
    return r;
}

TriPoly TriPoly::scaled(const FqElem& s) const {
    TriPoly r(field_, deg_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
    return r;
}

FqElem TriPoly::eval(const FqElem& x, const FqElem& y, const FqElem& z) const {
    std::vector<FqElem> xp{field_->one()}, yp{field_->one()}, zp{field_->one()};
    for (int i = 0; i < deg_; ++i) {
        xp.push_back(xp.back() * x);
        yp.push_back(yp.back() * y);
        zp.push_back(zp.back() * z);
    }
    FqElem acc = field_->zero();
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; i + j <= deg_; ++j) {
            const FqElem& c = coeff(i, j);
            if (!c.is_zero()) acc = acc + c * xp[i] * yp[j] * zp[deg_ - i - j];
        }
    return acc;
}

bool TriPoly::operator==(const TriPoly& o) const {
    return deg_ == o.deg_ && c_ == o.c_;
}

// ---------------------------------------------------------------------------
// sextics
// ---------------------------------------------------------------------------

namespace {

// quartic norm form of x - zeta5 y + zeta5^2 z;
// entry (i, j, c): c * x^i y^j z^(4-i-j)
struct QuarticTerm { int i, j; i64 c; };
constexpr QuarticTerm kQw5Quartic[] = {
    {4, 0, 1}, {3, 1, 1}, {3, 0, -1}, {2, 2, 1}, {2, 1, -2}, {2, 0, 1},
    {1, 3, 1}, {1, 2, -3}, {1, 1, -2}, {1, 0, -1},
    {0, 4, 1}, {0, 3, 1}, {0, 2, 1}, {0, 1, 1}, {0, 0, 1},
};

SexticResidues qw5_sextic_residues(i64 p, i64 t) {
    SexticResidues s{p, {}};
    // y * (x - 2(t-1) y - t z) * quartic
    i64 l_x = 1;
    i64 l_y = ((-2 * ((t - 1) % p)) % p + p) % p;
    i64 l_z = ((-t) % p + p) % p;
    for (const auto& q : kQw5Quartic) {
        i64 c = ((q.c % p) + p) % p;
        if (!c) continue;
        auto add = [&s, p](int i, int j, i64 v) { s.c[i][j] = (s.c[i][j] + v) % p; };
        add(q.i + 1, q.j + 1, c * l_x % p);
        add(q.i, q.j + 2, c * l_y % p);
        add(q.i, q.j + 1, c * l_z % p);
    }
    return s;
}

SexticResidues qw2_sextic_residues(i64 p, i64 t) {
    SexticResidues s{p, {}};
    i64 i8 = inv_mod(8, p), i2 = inv_mod(2, p), i4 = inv_mod(4, p);
    i64 t2 = (i64)((u128)(u64)t * (u64)t % (u64)p);
    auto norm = [p](i64 v) { return (v % p + p) % p; };
    // (t^2/8 - t/2 + 1/4) y^2 + (t^2-2t+2) yz + (t^2-4t+2) z^2
    i64 aA = norm(t2 * i8 % p - t * i2 % p + i4);
    i64 bA = norm(t2 - 2 * t + 2);
    i64 cA = norm(t2 - 4 * t + 2);
    // (t^2/8 + t/2 + 1/4) x^2 + (t^2+2t+2) xz + (t^2+4t+2) z^2
    i64 aB = norm(t2 * i8 % p + t * i2 % p + i4);
    i64 bB = norm(t2 + 2 * t + 2);
    i64 cB = norm(t2 + 4 * t + 2);
    // 2 x^2 + (t^2+2) xy + t^2 y^2
    i64 aC = 2 % p, bC = norm(t2 + 2), cC = t2;
    i64 A[3][3] = {}, B[3][3] = {}, C[3][3] = {};
    A[0][2] = aA; A[0][1] = bA; A[0][0] = cA;
    B[2][0] = aB; B[1][0] = bB; B[0][0] = cB;
    C[2][0] = aC; C[1][1] = bC; C[0][2] = cC;
    i64 AB[5][5] = {};
    for (int i1 = 0; i1 < 3; ++i1)
        for (int j1 = 0; j1 < 3; ++j1)
            if (A[i1][j1])
                for (int i2 = 0; i2 < 3; ++i2)
                    for (int j2 = 0; j2 < 3; ++j2)
                        if (B[i2][j2])
                            AB[i1 + i2][j1 + j2] = (AB[i1 + i2][j1 + j2] + A[i1][j1] * B[i2][j2]) % p;
    for (int i1 = 0; i1 < 5; ++i1)
        for (int j1 = 0; j1 < 5; ++j1)
            if (AB[i1][j1])
                for (int i2 = 0; i2 < 3; ++i2)
                    for (int j2 = 0; j2 < 3; ++j2)
                        if (C[i2][j2])
                            s.c[i1 + i2][j1 + j2] =
                                (s.c[i1 + i2][j1 + j2] + AB[i1][j1] * C[i2][j2]) % p;
    return s;
}

}  // namespace

SexticResidues branch_sextic_residues(const FiberSpec& fiber) {
    i64 t = ((fiber.t % fiber.p) + fiber.p) % fiber.p;
    if (!good_fiber(fiber.family, fiber.p, t))
        raise(errc::bad_parameter, "fiber is not in the good locus");
    return fiber.family == Family::qw5 ? qw5_sextic_residues(fiber.p, t)
                                       : qw2_sextic_residues(fiber.p, t);
}

TriPoly branch_sextic(const FiberSpec& fiber, const FieldPtr& field) {
    if (field->p() != fiber.p) raise(errc::field_mismatch, "field characteristic differs from fiber");
    SexticResidues s = branch_sextic_residues(fiber);
    TriPoly f(field, 6);
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; i + j <= 6; ++j)
            if (s.c[i][j]) f.set_coeff(i, j, field->from_int(s.c[i][j]));
    return f;
}

// ---------------------------------------------------------------------------
// arrangement
// ---------------------------------------------------------------------------

LinearForm normalize_linear(std::array<FqElem, 3> coeffs) {
    for (int i = 0; i < 3; ++i) {
        if (!coeffs[i].is_zero()) {
            FqElem s = coeffs[i].inv();
            for (int j = 0; j < 3; ++j) coeffs[j] = coeffs[j] * s;
            return LinearForm{std::move(coeffs)};
        }
    }
    raise(errc::internal_error, "zero linear form");
}

namespace {

ProjPoint normalize_point(std::array<FqElem, 3> v) {
    for (int i = 0; i < 3; ++i) {
        if (!v[i].is_zero()) {
            FqElem s = v[i].inv();
            for (int j = 0; j < 3; ++j) v[j] = v[j] * s;
            return v;
        }
    }
    raise(errc::degenerate_arrangement, "two branch lines are proportional");
}

int ord_mod(i64 p, i64 n) {
    i64 v = p % n;
    for (int e = 1; e <= (int)n; ++e) {
        if (v == 1) return e;
        v = v * (p % n) % n;
    }
    raise(errc::internal_error, "multiplicative order computation failed");
}

// roots of a r^2 + b r + c, deterministic order (packed-smaller first)
std::pair<FqElem, FqElem> quadratic_roots(const FqElem& a, const FqElem& b, const FqElem& c) {
    FqElem four = a.field()->from_int(4);
    FqElem disc = b * b - four * a * c;
    auto r = sqrt_in_field(disc);
    if (!r) raise(errc::internal_error, "discriminant is not a square over the splitting field");
    FqElem two_a_inv = (a + a).inv();
    FqElem r1 = (-b + *r) * two_a_inv;
    FqElem r2 = (-b - *r) * two_a_inv;
    if (FqElem::cmp(r2, r1) < 0) std::swap(r1, r2);
    return {r1, r2};
}

}  // namespace

Arrangement line_arrangement(const FiberSpec& fiber) {
    i64 p = fiber.p;
    i64 t = ((fiber.t % p) + p) % p;
    if (!good_fiber(fiber.family, p, t))
        raise(errc::bad_parameter, "fiber is not in the good locus");

    FieldPtr field;
    std::vector<LinearForm> lines;
    FqElem scale;

    if (fiber.family == Family::qw5) {
        int k = ord_mod(p, 5);  // zeta_5 lives in F_{p^k}
        field = Fq::make(p, k);
        FqElem zeta = primitive_nth_root(field, 5);
        FqElem one = field->one(), zero = field->zero();
        lines.push_back(normalize_linear({zero, one, zero}));  // y
        lines.push_back(normalize_linear({one, field->from_int(-2 * (t - 1)), field->from_int(-t)}));
        FqElem zj = one;
        for (int j = 1; j <= 4; ++j) {
            zj = zj * zeta;
            lines.push_back(normalize_linear({one, -zj, zj * zj}));
        }
        scale = field->one();
    } else {
        // splitting needs sqrt(2); degree 2 exactly when 2 is a non-square mod p
        auto fp = Fq::make(p, 1);
        int k = quadratic_character(fp->from_int(2)) == 1 ? 1 : 2;
        field = Fq::make(p, k);
        FqElem one = field->one(), zero = field->zero();
        i64 i8 = inv_mod(8, p), i2 = inv_mod(2, p), i4 = inv_mod(4, p);
        i64 t2 = t * t % p;
        FqElem aA = field->from_int(t2 * i8 % p - t * i2 % p + i4);
        FqElem bA = field->from_int(t2 - 2 * t + 2);
        FqElem cA = field->from_int(t2 - 4 * t + 2);
        FqElem aB = field->from_int(t2 * i8 % p + t * i2 % p + i4);
        FqElem bB = field->from_int(t2 + 2 * t + 2);
        FqElem cB = field->from_int(t2 + 4 * t + 2);
        FqElem aC = field->from_int(2);
        FqElem bC = field->from_int(t2 + 2);
        FqElem cC = field->from_int(t2);
        auto [rA1, rA2] = quadratic_roots(aA, bA, cA);
        auto [rB1, rB2] = quadratic_roots(aB, bB, cB);
        auto [rC1, rC2] = quadratic_roots(aC, bC, cC);
        lines.push_back(normalize_linear({zero, one, -rA1}));  // y - r z
        lines.push_back(normalize_linear({zero, one, -rA2}));
        lines.push_back(normalize_linear({one, zero, -rB1}));  // x - r z
        lines.push_back(normalize_linear({one, zero, -rB2}));
        lines.push_back(normalize_linear({one, -rC1, zero}));  // x - r y
        lines.push_back(normalize_linear({one, -rC2, zero}));
        scale = aA * aB * aC;
    }

    // product identity: scale * prod(lines) == branch sextic, coefficient-wise
    TriPoly prod = TriPoly::linear(field, lines[0].a[0], lines[0].a[1], lines[0].a[2]);
    for (int i = 1; i < 6; ++i)
        prod = prod * TriPoly::linear(field, lines[i].a[0], lines[i].a[1], lines[i].a[2]);
    if (!(prod.scaled(scale) == branch_sextic(fiber, field)))
        raise(errc::internal_error, "line product does not reproduce the branch sextic");

    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (lines[i].a == lines[j].a)
                raise(errc::degenerate_arrangement, "coincident branch lines");

    // sigma: p-power Frobenius on coefficients, then matching
    std::vector<int> sigma(6, -1);
    for (int i = 0; i < 6; ++i) {
        LinearForm img = normalize_linear({lines[i].a[0].frobenius(),
                                           lines[i].a[1].frobenius(),
                                           lines[i].a[2].frobenius()});
        for (int j = 0; j < 6; ++j)
            if (img.a == lines[j].a) { sigma[i] = j; break; }
        if (sigma[i] < 0) raise(errc::internal_error, "Frobenius image is not a branch line");
    }
    {
        std::set<int> image(sigma.begin(), sigma.end());
        if ((int)image.size() != 6) raise(errc::internal_error, "sigma is not a bijection");
    }

    // nodes: the 15 pairwise intersections as cross products
    std::vector<ProjPoint> nodes;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            const auto& u = lines[i].a;
            const auto& v = lines[j].a;
            nodes.push_back(normalize_point({u[1] * v[2] - u[2] * v[1],
                                             u[2] * v[0] - u[0] * v[2],
                                             u[0] * v[1] - u[1] * v[0]}));
        }
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i] == nodes[j])
                raise(errc::degenerate_arrangement, "three branch lines are concurrent");

    return Arrangement{fiber, field, std::move(lines), std::move(scale),
                       std::move(sigma), std::move(nodes)};
}

int pair_fixed_count(const std::vector<int>& sigma, int m) {
    int n = (int)sigma.size();
    std::vector<int> sm(n);
    for (int i = 0; i < n; ++i) sm[i] = i;
    for (int step = 0; step < m; ++step)
        for (int i = 0; i < n; ++i) sm[i] = sigma[sm[i]];
    int count = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int a = sm[i], b = sm[j];
            if ((a == i && b == j) || (a == j && b == i)) ++count;
        }
    return count;
}

std::vector<int> cycle_type(const std::vector<int>& sigma) {
    int n = (int)sigma.size();
    std::vector<bool> seen(n, false);
    std::vector<int> lens;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int l = 0, j = i;
        while (!seen[j]) { seen[j] = true; j = sigma[j]; ++l; }
        lens.push_back(l);
    }
    std::sort(lens.begin(), lens.end());
    return lens;
}

std::vector<int> pair_cycle_type(const std::vector<int>& sigma) {
    int n = (int)sigma.size();
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    std::vector<int> induced(pairs.size());
    for (size_t idx = 0; idx < pairs.size(); ++idx) {
        int a = sigma[pairs[idx].first], b = sigma[pairs[idx].second];
        if (a > b) std::swap(a, b);
        auto it = std::find(pairs.begin(), pairs.end(), std::make_pair(a, b));
        induced[idx] = (int)(it - pairs.begin());
    }
    return cycle_type(induced);
}

}  // namespace rmk3
