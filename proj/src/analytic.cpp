#include "bzl/analytic.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace bzl {

std::vector<std::uint32_t> primes_up_to(std::uint64_t bound) {
  static std::mutex mu;
  static std::vector<std::uint32_t> cache;
  static std::uint64_t cached_bound = 0;
  if (bound > 0xffffffffULL) throw std::domain_error("primes_up_to: bound too large");
  std::lock_guard lock(mu);
  if (bound > cached_bound) {
    std::vector<std::uint8_t> composite(bound + 1, 0);
    cache.clear();
    for (std::uint64_t i = 2; i <= bound; ++i) {
      if (composite[i]) continue;
      cache.push_back(std::uint32_t(i));
      for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = 1;
    }
    cached_bound = bound;
  }
  auto end = std::upper_bound(cache.begin(), cache.end(), bound);
  return {cache.begin(), end};
}

bool is_split_prime(const CharacterGroup& group, std::uint64_t p) {
  if (group.modulus() % p == 0) return false;
  for (const auto& chi : group.generators()) {
    if (chi.value(std::int64_t(p)) != 0) return false;
  }
  return true;
}

namespace {

constexpr std::size_t kBlock = 1 << 14;

std::complex<double> root_of_unity(std::uint32_t k, std::uint32_t d) {
  const double angle = 2 * std::numbers::pi * double(k) / double(d);
  return {std::cos(angle), std::sin(angle)};
}

std::complex<double> log_product(const CyclicCharacter& chi, const CharacterGroup& group, double s,
                                 const std::vector<std::uint32_t>& primes) {
  const std::size_t blocks = (primes.size() + kBlock - 1) / kBlock;
  std::vector<std::complex<double>> partial(blocks);
  // Per-block partial sums added in block order: the result does not depend
  // on the thread count.
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    std::complex<double> acc = 0;
    const std::size_t end = std::min(primes.size(), (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      const std::uint64_t p = primes[i];
      if (chi.conductor() % p == 0 || !is_split_prime(group, p)) continue;
      const std::complex<double> term = root_of_unity(chi.value(std::int64_t(p)), chi.order()) * std::pow(double(p), -s);
      acc -= std::log(1.0 - term);
    }
    partial[b] = acc;
  }
  std::complex<double> total = 0;
  for (const auto& v : partial) total += v;
  return total;
}

}  // namespace

EulerProductValue partial_euler_product(const CyclicCharacter& chi, const CharacterGroup& group, double s,
                                        std::uint64_t prime_bound) {
  if (!(s > 1)) throw std::domain_error("partial_euler_product: requires s > 1");
  if (prime_bound < 2) throw std::domain_error("partial_euler_product: prime bound must be >= 2");
  const auto primes = primes_up_to(prime_bound);
  EulerProductValue out;
  out.log_value = log_product(chi, group, s, primes);
  out.value = std::exp(out.log_value);
  out.modulus = std::exp(out.log_value.real());
  out.is_real = chi.order() <= 2;
  for (std::uint64_t p : primes) out.factors += (chi.conductor() % p != 0 && is_split_prime(group, p));
  return out;
}

double prime_tail(double s, std::uint64_t prime_bound) {
  // sum_{p > P} p^-s ~ int_P^inf dt / (t^s log t) = E1((s-1) log P)
  const double x = (s - 1) * std::log(double(prime_bound));
  return -std::expint(-x);
}

SingularityEstimate singularity_order_estimate(const CyclicCharacter& chi, const CharacterGroup& group,
                                               const SingularityOptions& opts) {
  if (!(opts.eps1 > opts.eps2)) throw std::domain_error("singularity estimate: need eps1 > eps2");
  if (opts.eps2 < kEpsilonFloor) throw std::domain_error("singularity estimate: eps2 below floor 1e-4");
  if (opts.prime_bound < kMinSingularityPrimeBound)
    throw std::domain_error("singularity estimate: prime bound below 1e5");
  const double log_p = std::log(double(opts.prime_bound));
  if (!opts.tail_correction && opts.eps2 < opts.reliability_c / log_p)
    throw std::domain_error("singularity estimate: eps2 below c / log P without tail correction");

  const auto primes = primes_up_to(opts.prime_bound);
  SingularityEstimate est;
  est.eps1 = opts.eps1;
  est.eps2 = opts.eps2;
  est.prime_bound = opts.prime_bound;
  est.log_l1 = log_product(chi, group, 1 + opts.eps1, primes).real();
  est.log_l2 = log_product(chi, group, 1 + opts.eps2, primes).real();

  if (opts.tail_correction) {
    // Mean of chi(p) over all primes in (P/4, P], zero on non-split primes.
    std::complex<double> acc = 0;
    std::size_t count = 0;
    for (auto it = std::lower_bound(primes.begin(), primes.end(), std::uint32_t(opts.prime_bound / 4));
         it != primes.end(); ++it) {
      const std::uint64_t p = *it;
      ++count;
      if (chi.conductor() % p == 0 || !is_split_prime(group, p)) continue;
      acc += root_of_unity(chi.value(std::int64_t(p)), chi.order());
    }
    est.tail_density = count ? acc.real() / double(count) : 0;
    est.log_l1 += est.tail_density * prime_tail(1 + opts.eps1, opts.prime_bound);
    est.log_l2 += est.tail_density * prime_tail(1 + opts.eps2, opts.prime_bound);
  }
  est.order = (est.log_l1 - est.log_l2) / (std::log(opts.eps2) - std::log(opts.eps1));
  return est;
}

double landau_constant(std::uint64_t prime_bound) {
  if (prime_bound < 1000) throw std::domain_error("landau_constant: prime bound must be >= 1000");
  long double log_k = -0.5L * std::log(2.0L);
  for (std::uint64_t p : primes_up_to(prime_bound)) {
    if (p % 4 != 3) continue;
    const long double inv2 = 1.0L / ((long double)p * p);
    log_k -= 0.5L * std::log1p(-inv2);
  }
  return double(std::exp(log_k));
}

double landau_tail_bound(std::uint64_t prime_bound) {
  // -1/2 sum_{p > P} log(1 - p^-2) <= 1/2 * (1 + 1/P^2) * sum_{k > P} k^-2 < 0.51 / P
  return std::expm1(0.51 / double(prime_bound));
}

std::uint64_t two_squares_count(std::uint64_t N) {
  if (N < 1) throw std::domain_error("two_squares_count: N must be >= 1");
  if (N > kTwoSquaresSieveLimit) throw std::domain_error("two_squares_count: N above the sieve limit 1e9");
  std::vector<std::uint64_t> bits(N / 64 + 1, 0);
  for (std::uint64_t a = 0; a * a <= N; ++a) {
    for (std::uint64_t b = a; a * a + b * b <= N; ++b) {
      const std::uint64_t m = a * a + b * b;
      bits[m >> 6] |= std::uint64_t(1) << (m & 63);
    }
  }
  bits[0] &= ~std::uint64_t(1);  // m = 0
  std::uint64_t count = 0;
  for (std::uint64_t w : bits) count += std::uint64_t(__builtin_popcountll(w));
  return count;
}

}  // namespace bzl
