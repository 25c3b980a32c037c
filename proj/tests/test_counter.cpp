#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rmk3/counter.hpp"

using namespace rmk3;

namespace {

// Independent oracle: every projective point appears (q - 1) times among
// nonzero affine triples, so sum the cover fibers over all of F_q^3 \ {0}
// and divide. Shares nothing with the chart/row decomposition of the engine.
u64 brute_projective_count(const FiberSpec& fiber, int k) {
    FieldPtr field = Fq::make(fiber.p, k);
    u64 q = field->q64();
    TriPoly f = branch_sextic(fiber, field);
    u64 total = 0;
    for (u64 ix = 0; ix < q; ++ix)
        for (u64 iy = 0; iy < q; ++iy)
            for (u64 iz = 0; iz < q; ++iz) {
                if (ix == 0 && iy == 0 && iz == 0) continue;
                FqElem v = f.eval(field->from_index(ix), field->from_index(iy), field->from_index(iz));
                total += (u64)(1 + quadratic_character(v));
            }
    REQUIRE(total % (q - 1) == 0);
    return total / (q - 1);
}

i64 first_good_t(Family fam, i64 p) {
    for (i64 t = 0; t < p; ++t)
        if (good_fiber(fam, p, t)) return t;
    return -1;
}

}  // namespace

TEST_CASE("naive engine equals the affine brute-force oracle on small fields") {
    for (auto [fam, p, t, k] : std::vector<std::tuple<Family, i64, i64, int>>{
             {Family::qw5, 3, 0, 1}, {Family::qw5, 3, 2, 1}, {Family::qw5, 3, 0, 2},
             {Family::qw5, 7, 3, 1}, {Family::qw2, 5, 1, 1}, {Family::qw2, 11, 1, 1},
             {Family::qw5, 13, 2, 1}}) {
        CAPTURE(family_name(fam)); CAPTURE(p); CAPTURE(t); CAPTURE(k);
        CHECK(count_double_cover_naive({fam, p, t}, k) == brute_projective_count({fam, p, t}, k));
    }
}

TEST_CASE("double cover counts: paper and frozen values") {
    // p^2 + p + 1 cases printed in the source material
    CHECK(count_double_cover_naive({Family::qw5, 3, 0}, 1) == 13);
    CHECK(count_double_cover_naive({Family::qw2, 5, 1}, 1) == 31);
    CHECK(count_double_cover_fibered({Family::qw5, 13, 2}, 1) == 183);
    // frozen by an independent sweep implementation
    CHECK(count_double_cover_naive({Family::qw5, 3, 0}, 2) == 97);
    CHECK(count_double_cover_naive({Family::qw5, 3, 0}, 3) == 757);
    CHECK(count_double_cover_naive({Family::qw5, 3, 0}, 4) == 6769);
    CHECK(count_double_cover_naive({Family::qw2, 5, 1}, 2) == 621);
    CHECK(count_double_cover_naive({Family::qw5, 7, 3}, 1) == 57);
    CHECK(count_double_cover_naive({Family::qw5, 7, 3}, 2) == 2437);
    CHECK(count_double_cover_naive({Family::qw2, 11, 1}, 1) == 133);
    CHECK(count_double_cover_naive({Family::qw5, 19, 15}, 1) == 433);
    CHECK(count_double_cover_naive({Family::qw5, 19, 15}, 2) == 130309);
}

TEST_CASE("fibered engine agrees with naive for every good qw5 fiber, p <= 23, k <= 2") {
    for (i64 p : {3, 7, 11, 13, 17, 19, 23}) {
        for (i64 t = 0; t < p; ++t) {
            if (!good_fiber(Family::qw5, p, t)) continue;
            for (int k = 1; k <= 2; ++k) {
                CAPTURE(p); CAPTURE(t); CAPTURE(k);
                u64 a = count_double_cover_naive({Family::qw5, p, t}, k);
                u64 b = count_double_cover_fibered({Family::qw5, p, t}, k);
                CHECK(a == b);
            }
        }
    }
}

TEST_CASE("worker count does not change engine totals") {
    for (int jobs : {1, 2, 3, 5}) {
        CountBudget budget;
        budget.jobs = jobs;
        CHECK(count_double_cover_naive({Family::qw5, 13, 2}, 1, budget) == 183);
        CHECK(count_double_cover_fibered({Family::qw5, 13, 2}, 2, budget) ==
              count_double_cover_naive({Family::qw5, 13, 2}, 2));
    }
}

TEST_CASE("k3 counts with the node correction") {
    CountRecord r = count_k3({Family::qw5, 3, 0}, 1, CountMethod::naive);
    CHECK(r.n_prime == 13);
    CHECK(r.n_k3 == 16);  // p^2 + 2p + 1
    r = count_k3({Family::qw2, 5, 1}, 1, CountMethod::naive);
    CHECK(r.n_prime == 31);
    CHECK(r.n_k3 == 46);  // p^2 + 4p + 1
    r = count_k3({Family::qw5, 13, 2}, 1, CountMethod::fibered);
    CHECK(r.n_k3 == 196);
    // extension fields; frozen values
    CHECK(count_k3({Family::qw5, 3, 0}, 2, CountMethod::naive).n_k3 == 124);
    CHECK(count_k3({Family::qw5, 3, 0}, 3, CountMethod::fibered).n_k3 == 784);
    CHECK(count_k3({Family::qw5, 3, 0}, 4, CountMethod::naive).n_k3 == 7984);
    CHECK(count_k3({Family::qw5, 19, 15}, 1, CountMethod::naive).n_k3 == 490);
    CHECK(count_k3({Family::qw5, 19, 15}, 2, CountMethod::fibered).n_k3 == 135724);
}

TEST_CASE("rm congruence on a small prefix of both sweeps") {
    for (i64 p : {3, 7, 13, 17, 23}) {  // p = 2, 3 mod 5
        for (i64 t = 0; t < p; ++t) {
            if (!good_fiber(Family::qw5, p, t)) continue;
            CountRecord r = count_k3({Family::qw5, p, t}, 1, CountMethod::fibered);
            CHECK(r.n_k3 == (u64)(p * p + 2 * p + 1));
        }
    }
    for (i64 p : {5, 11, 13, 19}) {  // p = 3, 5 mod 8
        for (i64 t = 0; t < p; ++t) {
            if (!good_fiber(Family::qw2, p, t)) continue;
            CountRecord r = count_k3({Family::qw2, p, t}, 1, CountMethod::naive);
            CHECK(r.n_k3 == (u64)(p * p + 4 * p + 1));
        }
    }
}

TEST_CASE("Weil bound and range invariants on computed records") {
    for (auto [fam, p, t, k] : std::vector<std::tuple<Family, i64, i64, int>>{
             {Family::qw5, 11, 3, 1}, {Family::qw5, 11, 3, 2}, {Family::qw2, 17, 1, 1},
             {Family::qw2, 13, 1, 2}, {Family::qw5, 19, 15, 2}}) {
        CountRecord r = count_k3({fam, p, t}, k, CountMethod::naive);
        u64 q = 1;
        for (int i = 0; i < k; ++i) q *= (u64)p;
        i64 dev = (i64)r.n_k3 - (i64)(q * q + 1);
        CHECK((u64)std::abs(dev) <= 22 * q);
        CHECK(r.n_prime <= 2 * (q * q + q + 1));
    }
}

TEST_CASE("budget and family guards") {
    CHECK_THROWS_WITH_AS(count_double_cover_naive({Family::qw5, 1021, 3}, 3),
                         doctest::Contains("BudgetExceeded"), Error);  // q ~ 2^30
    CHECK_THROWS_WITH_AS(count_double_cover_fibered({Family::qw2, 5, 1}, 1),
                         doctest::Contains("WrongFamily"), Error);
    CountBudget tight;
    tight.max_q = 100;
    CHECK_THROWS_WITH_AS(count_double_cover_naive({Family::qw5, 11, 3}, 2, tight),
                         doctest::Contains("BudgetExceeded"), Error);
    // the explicit override lifts the default ceiling
    CountBudget big;
    big.max_q = 100;
    big.allow_large = true;
    CHECK(count_double_cover_naive({Family::qw5, 11, 3}, 2, big) ==
          count_double_cover_naive({Family::qw5, 11, 3}, 2));
}

TEST_CASE("quintic fiber form matches the restriction of the sextic to the pencil") {
    // scalar * P(u) == f(-2u + v0, u + v1, -2u) for the branch sextic f
    for (auto [p, t, k] : std::vector<std::array<i64, 3>>{{7, 3, 1}, {13, 2, 1}, {3, 0, 2}, {11, 3, 2}}) {
        FiberSpec fiber{Family::qw5, p, t};
        FieldPtr field = Fq::make(p, (int)k);
        TriPoly f = branch_sextic(fiber, field);
        FqElem tf = field->from_int(t);
        u64 q = field->q64();
        for (u64 iv0 = 0; iv0 < std::min<u64>(q, 9); ++iv0)
            for (u64 iv1 = 0; iv1 < std::min<u64>(q, 9); ++iv1) {
                if (iv0 == 0 && iv1 == 0) continue;
                FqElem v0 = field->from_index(iv0), v1 = field->from_index(iv1);
                QuinticFiberForm form = quintic_fiber_form(field, tf, v0, v1);
                for (u64 iu = 0; iu < std::min<u64>(q, 11); ++iu) {
                    FqElem u = field->from_index(iu);
                    FqElem horner = form.coeffs[5];
                    for (int i = 4; i >= 0; --i) horner = horner * u + form.coeffs[i];
                    FqElem lhs = form.scalar * horner;
                    FqElem m2 = field->from_int(-2);
                    FqElem rhs = f.eval(m2 * u + v0, u + v1, m2 * u);
                    CHECK(lhs == rhs);
                }
            }
    }
}

TEST_CASE("dickson normalization") {
    auto f13 = Fq::make(13, 1);
    FqElem t = f13->from_int(2);
    // (v0, v1) = (0, 0): P = u^5, alpha = 0, C = 0
    {
        QuinticFiberForm form = quintic_fiber_form(f13, t, f13->zero(), f13->zero());
        for (int i = 0; i < 5; ++i) CHECK(form.coeffs[i].is_zero());
        DicksonNormalized n = dickson_normalize(form);
        CHECK(n.alpha.is_zero());
        CHECK(n.shift_c.is_zero());
    }
    // (v0, v1) = (1, 1) over F_13: alpha = 5/25 = 1/5 = 8
    {
        QuinticFiberForm form = quintic_fiber_form(f13, t, f13->one(), f13->one());
        DicksonNormalized n = dickson_normalize(form);
        CHECK(n.alpha == f13->from_int(5 * inv_mod(25, 13)));
        CHECK(n.alpha == f13->from_int(8));
    }
    // over F_7: the shifted quintic never has u^4 or u^2 terms
    auto f7 = Fq::make(7, 1);
    FqElem t7 = f7->from_int(3);
    for (i64 a = 0; a < 7; ++a)
        for (i64 b = 0; b < 7; ++b) {
            QuinticFiberForm form = quintic_fiber_form(f7, t7, f7->from_int(a), f7->from_int(b));
            DicksonNormalized n = dickson_normalize(form);
            CHECK(n.coeffs[4].is_zero());
            CHECK(n.coeffs[2].is_zero());
        }
    CHECK_THROWS_WITH_AS(quintic_fiber_form(Fq::make(5, 1), Fq::make(5, 1)->one(),
                                            Fq::make(5, 1)->one(), Fq::make(5, 1)->one()),
                         doctest::Contains("BadParameter"), Error);
}

TEST_CASE("dickson suite at unit-test scale: p <= 53") {
    for (i64 p : {3, 7, 13, 17, 23, 37, 43, 47, 53}) {
        REQUIRE((p % 5 == 2 || p % 5 == 3));
        auto f = Fq::make(p, 1);
        FqElem t = f->zero();
        for (i64 a = 0; a < p; ++a)
            for (i64 b = 0; b < p; ++b) {
                QuinticFiberForm form = quintic_fiber_form(f, t, f->from_int(a), f->from_int(b));
                CHECK_NOTHROW(dickson_normalize(form));
                std::vector<i64> pc(6);
                for (int i = 0; i < 6; ++i) pc[i] = form.coeffs[i].coeffs()[0];
                if (!is_permutation_polynomial(pc, p)) {
                    CAPTURE(p); CAPTURE(a); CAPTURE(b);
                    FAIL("quintic is not a permutation polynomial");
                }
            }
    }
}

TEST_CASE("permutation polynomial basics") {
    CHECK(is_permutation_polynomial(std::vector<i64>{0, 0, 0, 0, 0, 1}, 7));   // u^5, gcd(5,6)=1
    CHECK_FALSE(is_permutation_polynomial(std::vector<i64>{0, 0, 1}, 5));      // u^2 collides at +-1
    auto f13 = Fq::make(13, 1);
    QuinticFiberForm form = quintic_fiber_form(f13, f13->zero(), f13->one(), f13->one());
    std::vector<i64> pc(6);
    for (int i = 0; i < 6; ++i) pc[i] = form.coeffs[i].coeffs()[0];
    CHECK(is_permutation_polynomial(pc, 13));
    CHECK_THROWS_WITH_AS(is_permutation_polynomial(std::vector<i64>{0, 1}, 10007),
                         doctest::Contains("BudgetExceeded"), Error);
}
