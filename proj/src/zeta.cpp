#include "rmk3/zeta.hpp"

#include <algorithm>
#include <complex>
#include <map>

namespace rmk3 {

namespace {

BigInt int_pow(i64 base, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// +1 / -1 when T^n Q(p^2/T) == +-p^n Q(T), nullopt otherwise
std::optional<int> functional_equation_sign(const RatPoly& q, i64 p) {
    int n = q.deg();
    BigRat p2(int_pow(p, 2)), pn(int_pow(p, n));
    // reversed-and-scaled polynomial R with R_i = Q_{n-i} p^{2(n-i)} / p^n
    std::vector<BigRat> r(n + 1);
    for (int i = 0; i <= n; ++i) {
        BigRat scale(1);
        for (int j = 0; j < n - i; ++j) scale *= p2;
        r[i] = q.coeff(n - i) * scale / pn;
    }
    RatPoly rev{std::move(r)};
    if (rev == q) return 1;
    if (rev == q.scaled(BigRat(-1))) return -1;
    return std::nullopt;
}

// Durand-Kerner in doubles; advisory only
bool roots_on_unit_circle(const RatPoly& twisted, double tol) {
    int n = twisted.deg();
    if (n <= 0) return true;
    std::vector<std::complex<double>> c(n + 1);
    for (int i = 0; i <= n; ++i)
        c[i] = numerator(twisted.coeff(i)).convert_to<double>() /
               denominator(twisted.coeff(i)).convert_to<double>();
    std::vector<std::complex<double>> z(n);
    std::complex<double> seed(0.4, 0.9);
    z[0] = 1.0;
    for (int i = 1; i < n; ++i) z[i] = z[i - 1] * seed;
    auto eval = [&c, n](std::complex<double> x) {
        std::complex<double> acc = c[n];
        for (int i = n - 1; i >= 0; --i) acc = acc * x + c[i];
        return acc;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> denom = c[n];
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= z[i] - z[j];
            if (std::abs(denom) < 1e-300) continue;
            std::complex<double> step = eval(z[i]) / denom;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14) break;
    }
    for (int i = 0; i < n; ++i)
        if (std::abs(std::abs(z[i]) - 1.0) > tol) return false;
    return true;
}

}  // namespace

RatPoly algebraic_known_charpoly(const std::vector<int>& sigma, i64 p) {
    RatPoly a = RatPoly({BigRat(-p), BigRat(1)});  // hyperplane class: T - p
    for (int c : pair_cycle_type(sigma)) {
        std::vector<BigRat> f(c + 1, BigRat(0));
        f[0] = BigRat(-int_pow(p, c));
        f[c] = 1;
        a = a * RatPoly(std::move(f));
    }
    return a;
}

CharPolyPair assemble_charpoly(const FiberSpec& fiber, const std::vector<CountRecord>& counts,
                               const std::vector<int>& sigma) {
    if (counts.size() < 3) raise(errc::bad_parameter, "need counts for k = 1..3 at least");
    std::vector<CountRecord> cs = counts;
    std::sort(cs.begin(), cs.end(), [](const CountRecord& a, const CountRecord& b) { return a.k < b.k; });
    for (size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].k != (int)i + 1)
            raise(errc::bad_parameter, "counts must cover consecutive k starting at 1");
        if (!(cs[i].fiber == fiber))
            raise(errc::bad_parameter, "counts from a different fiber");
    }
    const int n = (int)cs.size();
    const i64 p = fiber.p;

    // untwisted H^2 power sums minus the known algebraic ones
    std::vector<BigRat> s_total(n + 1), s_unknown(n + 1);
    for (int k = 1; k <= n; ++k) {
        BigInt sk = BigInt(cs[k - 1].n_k3) - int_pow(p, 2 * k) - 1;
        BigInt alg = int_pow(p, k) * (1 + pair_fixed_count(sigma, k));
        s_total[k] = BigRat(sk);
        s_unknown[k] = BigRat(sk - alg);
    }

    // Newton for e_1..e_3 of the degree-6 unknown factor
    std::vector<BigRat> e(4);
    e[0] = 1;
    for (int i = 1; i <= 3; ++i) {
        BigRat acc(0);
        for (int j = 1; j <= i; ++j) acc += (j % 2 ? s_unknown[j] : -s_unknown[j]) * e[i - j];
        e[i] = acc / i;
    }
    BigRat a1 = -e[1], a2 = e[2], a3 = -e[3];
    for (const BigRat& a : {a1, a2, a3})
        if (!is_integer(a))
            raise(errc::non_integral_coefficients,
                  "Newton identities left a denominator; counts are inconsistent");

    RatPoly algebraic = algebraic_known_charpoly(sigma, p);

    std::vector<int> eps_candidates = (a3 == 0) ? std::vector<int>{1, -1} : std::vector<int>{1};
    struct Survivor { int eps_u; RatPoly q; };
    std::vector<Survivor> survivors;
    for (int eps : eps_candidates) {
        // functional-equation completion a_{6-i} = eps p^{6-2i} a_i
        BigRat a4 = BigRat(eps) * BigRat(int_pow(p, 2)) * a2;
        BigRat a5 = BigRat(eps) * BigRat(int_pow(p, 4)) * a1;
        BigRat a6 = BigRat(eps) * BigRat(int_pow(p, 6));
        RatPoly u{std::vector<BigRat>{a6, a5, a4, a3, a2, a1, BigRat(1)}};
        RatPoly q = u * algebraic;
        if (!q.integer_coeffs() || q.deg() != 22 || !q.is_monic()) continue;
        if (!functional_equation_sign(q, p)) continue;
        // trace identity against every supplied count, including any beyond
        // the k <= 3 used in the solve
        std::vector<BigRat> sq = q.power_sums(std::max(n, 8));
        bool ok = true;
        for (int k = 1; k <= n && ok; ++k) ok = (sq[k] == s_total[k]);
        // Weil bound on predicted traces
        for (int k = 1; k <= 8 && ok; ++k) {
            BigRat bound(22 * int_pow(p, k));
            if (sq[k] > bound || sq[k] < -bound) ok = false;
        }
        if (ok) survivors.push_back({eps, q});
    }

    if (survivors.empty())
        raise(errc::inconsistent_counts, "no integral reciprocal completion matches the counts");
    if (survivors.size() > 1)
        raise(errc::ambiguous_sign, "both functional-equation signs survive; supply a k = 4 count");

    CharPolyPair cp;
    cp.p = p;
    cp.untwisted = survivors[0].q;
    auto sign = functional_equation_sign(cp.untwisted, p);
    cp.epsilon = *sign;
    // chi(Z) = Q(pZ) / p^22
    cp.twisted = cp.untwisted.compose_scale(BigRat(p)).scaled(BigRat(1, int_pow(p, 22)));
    cp.provenance = cs;
    cp.unit_circle_ok = roots_on_unit_circle(cp.twisted, 1e-9);
    return cp;
}

TranscendentalPoly split_transcendental(const RatPoly& twisted) {
    TranscendentalPoly out;
    RatPoly cur = twisted;
    std::map<unsigned, unsigned> removed;
    bool changed = true;
    while (changed && cur.deg() > 0) {
        changed = false;
        unsigned dmax = 2u * (unsigned)(cur.deg() * cur.deg()) + 1;
        for (unsigned d = 1; d <= dmax; ++d) {
            RatPoly phi = cyclotomic(d);
            if (phi.deg() > cur.deg()) continue;
            if (auto q = cur.divide_exact(phi)) {
                ++removed[d];
                cur = *q;
                changed = true;
                break;
            }
        }
    }
    out.chi_tr = cur;
    for (auto [d, m] : removed) out.removed.push_back({d, m});
    return out;
}

TranscendentalPoly split_transcendental(const CharPolyPair& cp) {
    return split_transcendental(cp.twisted);
}

}  // namespace rmk3
