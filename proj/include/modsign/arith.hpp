#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace modsign {

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
/// Non-negative residue of a mod m (m > 0).
std::int64_t mod_floor(std::int64_t a, std::int64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

/// Prime factorization by trial division, ascending primes with multiplicity.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
bool is_prime(std::uint64_t n);
int moebius(std::uint64_t n);
bool is_squarefree(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Largest bound accepted by primes_up_to.
inline constexpr std::uint64_t kSieveCap = 10'000'000;

/// All primes p <= limit, ascending, from a segmented sieve of Eratosthenes.
/// Throws DomainError above kSieveCap.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Kronecker symbol (a/n), with (a/2) read off a mod 8 and (a/-1) = sign(a).
int kronecker(std::int64_t a, std::int64_t n);

}  // namespace modsign
