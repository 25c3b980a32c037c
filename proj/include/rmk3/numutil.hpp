#pragma once

// Small-integer number theory shared across modules: deterministic trial
// division primality, u64 factorization, squarefree kernels, modular
// arithmetic on machine words.

#include <cstdint>
#include <utility>
#include <vector>

namespace rmk3 {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

bool is_prime(u64 n);

// Primes in [2, bound], by sieve.
std::vector<i64> primes_up_to(i64 bound);

// Prime factorization of n >= 1, sorted, as (prime, exponent) pairs.
// Trial division plus deterministic Miller-Rabin / Brent rho for the
// cofactor, so 64-bit inputs are always fine.
std::vector<std::pair<u64, int>> factorize(u64 n);

// Largest squarefree divisor d of n with n/d a perfect square.
u64 squarefree_kernel(u64 n);

u64 gcd_u64(u64 a, u64 b);

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

u64 powmod_u64(u64 base, u64 exp, u64 m);

// Inverse of a mod m, m prime.
i64 inv_mod(i64 a, i64 m);

}  // namespace rmk3
