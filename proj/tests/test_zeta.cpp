#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rmk3/zeta.hpp"

#include <random>

using namespace rmk3;

namespace {

std::vector<CountRecord> counts_for(const FiberSpec& fiber, int kmax, CountMethod m = CountMethod::naive) {
    std::vector<CountRecord> out;
    for (int k = 1; k <= kmax; ++k) out.push_back(count_k3(fiber, k, m));
    return out;
}

// Sylvester-matrix resultant Res_Y(f(Y), Z - Y^m), computed over Q[Z] by
// cofactor expansion; the oracle for power_charpoly on small inputs.
RatPoly det_poly(std::vector<std::vector<RatPoly>> a) {
    size_t n = a.size();
    if (n == 1) return a[0][0];
    RatPoly acc;
    for (size_t i = 0; i < n; ++i) {
        if (a[i][0].is_zero()) continue;
        std::vector<std::vector<RatPoly>> minor;
        for (size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            minor.push_back(std::vector<RatPoly>(a[r].begin() + 1, a[r].end()));
        }
        RatPoly term = a[i][0] * det_poly(std::move(minor));
        acc = (i % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

RatPoly resultant_power_oracle(const RatPoly& f, unsigned m) {
    int n = f.deg();
    // g(Y) = Z - Y^m as a degree-m polynomial in Y with coefficients in Q[Z]
    std::vector<RatPoly> g(m + 1);
    g[0] = RatPoly({BigRat(0), BigRat(1)});  // Z
    g[m] = RatPoly::constant(BigRat(-1));
    for (unsigned i = 1; i < m; ++i) g[i] = RatPoly();
    size_t dim = n + m;
    std::vector<std::vector<RatPoly>> syl(dim, std::vector<RatPoly>(dim));
    for (unsigned row = 0; row < m; ++row)
        for (int j = 0; j <= n; ++j)
            syl[row][row + j] = RatPoly::constant(f.coeff(n - j));
    for (int row = 0; row < n; ++row)
        for (unsigned j = 0; j <= m; ++j)
            syl[m + row][row + j] = g[m - j];
    RatPoly r = det_poly(std::move(syl));
    // normalize to monic
    return r.scaled(BigRat(1) / r.coeff(r.deg()));
}

const RatPoly kChiTr3{std::vector<BigRat>{BigRat(1), BigRat(0), BigRat(-4, 3), BigRat(0), BigRat(1)}};
const RatPoly kChiTr19{std::vector<BigRat>{BigRat(1), BigRat(-14, 19), BigRat(34, 19), BigRat(-14, 19), BigRat(1)}};

}  // namespace

TEST_CASE("ratpoly basics and newton round trips") {
    RatPoly f{std::vector<BigRat>{BigRat(6), BigRat(-5), BigRat(1)}};  // (x-2)(x-3)
    CHECK(f.eval(2) == 0);
    CHECK(f.eval(3) == 0);
    auto s = f.power_sums(4);
    CHECK(s[1] == 5);
    CHECK(s[2] == 13);
    CHECK(s[3] == 35);
    CHECK(RatPoly::from_power_sums(s, 2) == f);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        int d = 1 + (int)(rng() % 6);
        std::vector<BigRat> c(d + 1);
        for (int i = 0; i < d; ++i) c[i] = BigRat((i64)(rng() % 21) - 10, 1 + (i64)(rng() % 3));
        c[d] = 1;
        RatPoly g{std::move(c)};
        CHECK(RatPoly::from_power_sums(g.power_sums(d), d) == g);
    }
}

TEST_CASE("cyclotomic polynomials multiply back to Z^n - 1") {
    for (unsigned n = 1; n <= 30; ++n) {
        RatPoly prod = RatPoly::constant(BigRat(1));
        for (unsigned d = 1; d <= n; ++d)
            if (n % d == 0) prod = prod * cyclotomic(d);
        std::vector<BigRat> xn(n + 1, BigRat(0));
        xn[0] = -1;
        xn[n] = 1;
        CHECK(prod == RatPoly(std::move(xn)));
    }
    CHECK(cyclotomic(1).str() == "Z - 1");
    CHECK(cyclotomic(4) == RatPoly::from_ints({1, 0, 1}));
}

TEST_CASE("power_charpoly examples and properties") {
    // identity at m = 1 and on (Z - 1)
    CHECK(power_charpoly(kChiTr19, 1) == kChiTr19);
    RatPoly zm1 = RatPoly::from_ints({-1, 1});
    CHECK(power_charpoly(zm1, 5) == zm1);
    // root squaring of the biquadratic: (Z^2 - 4/3 Z + 1)^2
    RatPoly sq{std::vector<BigRat>{BigRat(1), BigRat(-4, 3), BigRat(1)}};
    CHECK(power_charpoly(kChiTr3, 2) == sq * sq);
    // resultant oracle on small random polynomials
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 12; ++trial) {
        int d = 1 + (int)(rng() % 3);
        unsigned m = 2 + (unsigned)(rng() % 2);
        std::vector<BigRat> c(d + 1);
        for (int i = 0; i < d; ++i) c[i] = BigRat((i64)(rng() % 11) - 5);
        c[d] = 1;
        RatPoly f{std::move(c)};
        CHECK(power_charpoly(f, m) == resultant_power_oracle(f, m));
    }
    // multiplicativity in m
    for (int trial = 0; trial < 10; ++trial) {
        int d = 1 + (int)(rng() % 4);
        std::vector<BigRat> c(d + 1);
        for (int i = 0; i < d; ++i) c[i] = BigRat((i64)(rng() % 9) - 4, 1 + (i64)(rng() % 2));
        c[d] = 1;
        RatPoly f{std::move(c)};
        CHECK(power_charpoly(power_charpoly(f, 2), 3) == power_charpoly(f, 6));
        CHECK(power_charpoly(power_charpoly(f, 3), 2) == power_charpoly(f, 6));
    }
}

TEST_CASE("algebraic known charpoly closed forms") {
    i64 p = 7;
    std::vector<int> ident{0, 1, 2, 3, 4, 5};
    RatPoly tp = RatPoly({BigRat(-p), BigRat(1)});
    RatPoly pow16 = RatPoly::constant(BigRat(1));
    for (int i = 0; i < 16; ++i) pow16 = pow16 * tp;
    CHECK(algebraic_known_charpoly(ident, p) == pow16);

    std::vector<int> four_cycle{0, 1, 3, 4, 5, 2};  // (1)(2)(3456)
    RatPoly t2 = RatPoly({BigRat(-p * p), BigRat(0), BigRat(1)});
    RatPoly t4{std::vector<BigRat>{BigRat(-int_pow_check(p)), BigRat(0), BigRat(0), BigRat(0), BigRat(1)}};
    RatPoly expect = tp * tp * t2 * t4 * t4 * t4;
    CHECK(algebraic_known_charpoly(four_cycle, p) == expect);

    std::vector<int> swap_two{1, 0, 3, 2, 4, 5};  // (12)(34)(5)(6)
    RatPoly expect2 = tp * tp * tp * tp;
    for (int i = 0; i < 6; ++i) expect2 = expect2 * t2;
    CHECK(algebraic_known_charpoly(swap_two, p) == expect2);

    // power sums match p^k (1 + pair_fixed_count)
    for (auto& sigma : {ident, four_cycle, swap_two}) {
        RatPoly a = algebraic_known_charpoly(sigma, p);
        auto s = a.power_sums(6);
        for (int k = 1; k <= 6; ++k) {
            BigInt pk = 1;
            for (int i = 0; i < k; ++i) pk *= p;
            CHECK(s[k] == BigRat(pk * (1 + pair_fixed_count(sigma, k))));
        }
    }
}

TEST_CASE("charpoly assembly at the tau_1 reduction (p = 3, t = 0)") {
    FiberSpec fiber{Family::qw5, 3, 0};
    Arrangement arr = line_arrangement(fiber);

    // with k <= 3 the even transcendental part leaves the sign open
    CHECK_THROWS_WITH_AS(assemble_charpoly(fiber, counts_for(fiber, 3), arr.sigma),
                         doctest::Contains("AmbiguousSign"), Error);

    CharPolyPair cp = assemble_charpoly(fiber, counts_for(fiber, 4), arr.sigma);
    CHECK(cp.epsilon == 1);
    CHECK(cp.untwisted.integer_coeffs());
    CHECK(cp.untwisted.deg() == 22);
    CHECK(cp.unit_circle_ok);
    // the degree-6 unknown factor, frozen from an independent assembly
    RatPoly u = RatPoly::from_ints({729, 0, -27, 0, -3, 0, 1});
    CHECK(cp.untwisted == u * algebraic_known_charpoly(arr.sigma, 3));
    // untwisted trace S_1 = 16 - 9 - 1 = 6, twisted trace 2
    auto s = cp.untwisted.power_sums(4);
    CHECK(s[1] == 6);
    CHECK(cp.twisted.power_sums(1)[1] == 2);

    TranscendentalPoly tp = split_transcendental(cp);
    CHECK(tp.chi_tr == kChiTr3);
    int removed_deg = 0;
    for (auto [d, m] : tp.removed) removed_deg += (int)m * cyclotomic(d).deg();
    CHECK(removed_deg == 18);
    CHECK(tp.chi_tr.deg() + removed_deg == 22);

    // held-out verification: the assembled polynomial predicts the k = 5 count
    auto sq = cp.untwisted.power_sums(5);
    CountRecord r5 = count_k3(fiber, 5, CountMethod::fibered);
    BigInt expect5 = int_pow_check(3);  // placeholder, recomputed below
    (void)expect5;
    BigInt p10 = 1;
    for (int i = 0; i < 10; ++i) p10 *= 3;
    CHECK(BigRat(BigInt(r5.n_k3) - p10 - 1) == sq[5]);
}

TEST_CASE("charpoly assembly at the tau_2 reduction (p = 19, t = 15)") {
    FiberSpec fiber{Family::qw5, 19, 15};
    Arrangement arr = line_arrangement(fiber);
    // epsilon is forced at k <= 3 here
    CharPolyPair cp = assemble_charpoly(fiber, counts_for(fiber, 3, CountMethod::fibered), arr.sigma);
    CHECK(cp.untwisted.integer_coeffs());
    CHECK(cp.epsilon == 1);
    TranscendentalPoly tp = split_transcendental(cp);
    CHECK(tp.chi_tr == kChiTr19);
    CHECK(cp.unit_circle_ok);
}

TEST_CASE("assembly across fibers satisfies the functional equation and Weil bounds") {
    for (auto [fam, p, t] : std::vector<std::tuple<Family, i64, i64>>{
             {Family::qw5, 7, 3}, {Family::qw2, 5, 1}, {Family::qw5, 11, 3}, {Family::qw2, 13, 1}}) {
        FiberSpec fiber{fam, p, t};
        Arrangement arr = line_arrangement(fiber);
        CharPolyPair cp;
        try {
            cp = assemble_charpoly(fiber, counts_for(fiber, 3), arr.sigma);
        } catch (const Error& e) {
            if (e.code() != errc::ambiguous_sign) throw;
            cp = assemble_charpoly(fiber, counts_for(fiber, 4), arr.sigma);
        }
        CAPTURE(family_name(fam)); CAPTURE(p); CAPTURE(t);
        CHECK(cp.untwisted.deg() == 22);
        CHECK(cp.untwisted.integer_coeffs());
        // constant term epsilon p^22
        BigInt p22 = 1;
        for (int i = 0; i < 22; ++i) p22 *= p;
        CHECK(cp.untwisted.coeff(0) == BigRat(cp.epsilon * p22));
        // functional equation, exactly: T^22 Q(p^2/T) = eps p^22 Q(T)
        for (int i = 0; i <= 22; ++i) {
            BigRat lhs = cp.untwisted.coeff(22 - i);
            BigRat pw(1);
            for (int j = 0; j < 22 - 2 * i; ++j) pw *= p;
            BigRat rhs = (22 - 2 * i >= 0) ? BigRat(cp.epsilon) * pw * cp.untwisted.coeff(i)
                                           : cp.untwisted.coeff(i);
            if (22 - 2 * i >= 0) CHECK(lhs == rhs);
        }
        // Weil trace bounds
        auto s = cp.untwisted.power_sums(6);
        BigInt pk = 1;
        for (int k = 1; k <= 6; ++k) {
            pk *= p;
            CHECK(s[k] <= BigRat(22 * pk));
            CHECK(s[k] >= BigRat(-22 * pk));
        }
        // trace consistency on a held-out k = 4 count
        CountRecord r4 = count_k3(fiber, 4, CountMethod::naive);
        BigInt p8 = 1;
        for (int i = 0; i < 8; ++i) p8 *= p;
        auto s4 = cp.untwisted.power_sums(4);
        CHECK(BigRat(BigInt(r4.n_k3) - p8 - 1) == s4[4]);
        // twisted polynomial is monic with p-power denominators
        CHECK(cp.twisted.is_monic());
        for (int i = 0; i <= 22; ++i) {
            BigInt den = denominator(cp.twisted.coeff(i));
            while (den % p == 0) den /= p;
            CHECK(den == 1);
        }
    }
}

TEST_CASE("split_transcendental handles pure cyclotomic input and is idempotent") {
    // (Z - 1)^22
    RatPoly f = RatPoly::constant(BigRat(1));
    RatPoly zm1 = RatPoly::from_ints({-1, 1});
    for (int i = 0; i < 22; ++i) f = f * zm1;
    TranscendentalPoly tp = split_transcendental(f);
    CHECK(tp.chi_tr == RatPoly::constant(BigRat(1)));
    REQUIRE(tp.removed.size() == 1);
    CHECK(tp.removed[0].d == 1);
    CHECK(tp.removed[0].multiplicity == 22);

    // (Z^2 - 1)(Z^4 - 4/3 Z^2 + 1): strips Phi_1 Phi_2, keeps the quartic
    RatPoly g = RatPoly::from_ints({-1, 0, 1}) * kChiTr3;
    tp = split_transcendental(g);
    CHECK(tp.chi_tr == kChiTr3);
    REQUIRE(tp.removed.size() == 2);
    CHECK(tp.removed[0].d == 1);
    CHECK(tp.removed[1].d == 2);

    // idempotent: nothing further comes off chi^tr
    TranscendentalPoly again = split_transcendental(tp.chi_tr);
    CHECK(again.chi_tr == tp.chi_tr);
    CHECK(again.removed.empty());
}

TEST_CASE("assembly rejects malformed inputs") {
    FiberSpec fiber{Family::qw5, 3, 0};
    Arrangement arr = line_arrangement(fiber);
    auto cs = counts_for(fiber, 2);
    CHECK_THROWS_WITH_AS(assemble_charpoly(fiber, cs, arr.sigma),
                         doctest::Contains("BadParameter"), Error);
    // corrupted count: no consistent completion
    auto bad = counts_for(fiber, 4);
    bad[1].n_k3 += 3;  // stays plausible mod p but breaks the solve
    CHECK_THROWS_AS(assemble_charpoly(fiber, bad, arr.sigma), Error);
}
