#include "rmk3/numutil.hpp"

#include "rmk3/errors.hpp"

#include <algorithm>
#include <numeric>

namespace rmk3 {

const char* errc_name(errc c) {
    switch (c) {
        case errc::not_prime: return "NotPrime";
        case errc::even_characteristic: return "EvenCharacteristic";
        case errc::degree_out_of_range: return "DegreeOutOfRange";
        case errc::field_mismatch: return "FieldMismatch";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::non_square: return "NonSquare";
        case errc::order_unavailable: return "OrderUnavailable";
        case errc::excluded_characteristic: return "ExcludedCharacteristic";
        case errc::bad_parameter: return "BadParameter";
        case errc::degenerate_arrangement: return "DegenerateArrangement";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::wrong_family: return "WrongFamily";
        case errc::normalization_mismatch: return "NormalizationMismatch";
        case errc::ambiguous_sign: return "AmbiguousSign";
        case errc::inconsistent_counts: return "InconsistentCounts";
        case errc::non_integral_coefficients: return "NonIntegralCoefficients";
        case errc::rank_jump_at_unity: return "RankJumpAtUnity";
        case errc::trivial_transcendental: return "TrivialTranscendental";
        case errc::rank_mismatch: return "RankMismatch";
        case errc::unsupported_degree: return "UnsupportedDegree";
        case errc::not_transcendental: return "NotTranscendental";
        case errc::cache_corrupt: return "CacheCorrupt";
        case errc::cache_conflict: return "CacheConflict";
        case errc::internal_error: return "InternalError";
    }
    return "UnknownError";
}

u64 gcd_u64(u64 a, u64 b) {
    while (b) { a %= b; std::swap(a, b); }
    return a;
}

u64 powmod_u64(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

namespace {

// Deterministic Miller-Rabin for 64-bit n with the standard 12-prime base set.
bool miller_rabin(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// Brent's cycle-finding rho with a fixed increment schedule.
u64 brent_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        u64 power = 1, lam = 1;
        while (d == 1) {
            if (power == lam) { x = y; power <<= 1; lam = 0; }
            y = (mulmod_u64(y, y, n) + c) % n;
            ++lam;
            u64 diff = x > y ? x - y : y - x;
            d = diff ? gcd_u64(diff, n) : n;
        }
        if (d != n) return d;
    }
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (miller_rabin(n)) { out.push_back(n); return; }
    u64 d = brent_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    if (n < (1u << 20)) {
        for (u64 d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }
    return miller_rabin(n);
}

std::vector<i64> primes_up_to(i64 bound) {
    std::vector<i64> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (i64 p = 2; p <= bound; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (i64 m = p * p; m <= bound; m += p) composite[m] = true;
    }
    return out;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
    if (n == 0) raise(errc::bad_parameter, "factorize(0)");
    std::vector<u64> primes;
    for (u64 d = 2; d < 10000 && d * d <= n; ++d) {
        while (n % d == 0) { primes.push_back(d); n /= d; }
    }
    factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<u64, int>> out;
    for (u64 p : primes) {
        if (!out.empty() && out.back().first == p) ++out.back().second;
        else out.emplace_back(p, 1);
    }
    return out;
}

u64 squarefree_kernel(u64 n) {
    u64 k = 1;
    for (auto [p, e] : factorize(n))
        if (e & 1) k *= p;
    return k;
}

i64 inv_mod(i64 a, i64 m) {
    a %= m;
    if (a < 0) a += m;
    if (a == 0) raise(errc::division_by_zero, "inv_mod(0)");
    return (i64)powmod_u64((u64)a, (u64)(m - 2), (u64)m);
}

}  // namespace rmk3
