#pragma once

// Numerical oracles: truncated partial Euler products, two-point estimates
// of their branch order at s = 1, and the sum-of-two-squares density.

#include "bzl/character.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace bzl {

// Primes <= bound, ascending. Cached; safe to call concurrently.
std::vector<std::uint32_t> primes_up_to(std::uint64_t bound);

// Whether p is a prime at which every character of the group is unramified
// and trivial on Frobenius.
bool is_split_prime(const CharacterGroup& group, std::uint64_t p);

struct EulerProductValue {
  std::complex<double> log_value;  // sum of -log(1 - chi(p) p^-s)
  std::complex<double> value;
  double modulus = 0;
  bool is_real = true;  // chi takes values +-1 only
  std::size_t factors = 0;
};

// prod over primes p <= P split in `group` and unramified for chi of
// (1 - chi(p)/p^s)^-1. Requires s > 1 and P >= 2.
EulerProductValue partial_euler_product(const CyclicCharacter& chi, const CharacterGroup& group, double s,
                                        std::uint64_t prime_bound);

// sum_{p > P} p^-s modelled by the prime number theorem as E1((s-1) log P).
double prime_tail(double s, std::uint64_t prime_bound);

struct SingularityOptions {
  double eps1 = 1e-2;
  double eps2 = 1e-3;
  std::uint64_t prime_bound = 10'000'000;
  // Add the prime-number-theorem model of the omitted primes p > P.
  bool tail_correction = true;
  // Without tail correction both offsets must satisfy eps >= c / log P.
  double reliability_c = 10;
};

inline constexpr double kEpsilonFloor = 1e-4;
inline constexpr std::uint64_t kMinSingularityPrimeBound = 100'000;

struct SingularityEstimate {
  double order = 0;  // q: L(1+eps) ~ eps^-q
  double eps1 = 0, eps2 = 0;
  std::uint64_t prime_bound = 0;
  double log_l1 = 0, log_l2 = 0;
  // Mean of chi(p) over split primes near P (real part), used for the tail.
  double tail_density = 0;
};

SingularityEstimate singularity_order_estimate(const CyclicCharacter& chi, const CharacterGroup& group,
                                               const SingularityOptions& opts = {});

// (1/sqrt 2) prod_{p = 3 mod 4, p <= P} (1 - p^-2)^(-1/2). Requires P >= 1000.
double landau_constant(std::uint64_t prime_bound);
// Relative error bound of the truncated product against the infinite one.
double landau_tail_bound(std::uint64_t prime_bound);

inline constexpr std::uint64_t kTwoSquaresSieveLimit = 1'000'000'000;

// #{1 <= m <= N : m = a^2 + b^2}, by sieving all a^2 + b^2 <= N.
std::uint64_t two_squares_count(std::uint64_t N);

}  // namespace bzl
