#pragma once

// Exact integer and local-field arithmetic over Q: factorization, the
// two-squares criterion, places and Hilbert symbols.

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

// Boost 1.74 compares rational<T> with an integer through two templates that
// C++20 reversed candidates turn into mutual recursion. Exact non-template
// overloads win overload resolution and route through rational == rational.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, unsigned b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, long b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, unsigned long b) {
  return a == rational<std::int64_t>(static_cast<std::int64_t>(b));
}
}  // namespace boost

namespace bzl {

using Rational = boost::rational<std::int64_t>;

struct Factorization {
  int sign = 1;
  std::map<std::uint64_t, int> factors;

  // Product of sign and prime powers. Throws std::overflow_error past 63 bits.
  std::int64_t value() const;
};

// Smallest-prime-factor table below `table_bound`, deterministic
// Miller-Rabin plus Pollard-Brent above it. Immutable once built.
class Factorizer {
 public:
  static constexpr std::uint32_t kDefaultTableBound = 2'000'000;

  explicit Factorizer(std::uint32_t table_bound = kDefaultTableBound);

  Factorization factorize(std::int64_t n) const;
  std::uint32_t table_bound() const { return bound_; }

 private:
  void factor_into(std::uint64_t n, std::map<std::uint64_t, int>& out) const;

  std::uint32_t bound_;
  std::vector<std::uint32_t> spf_;
};

// Process-wide factorizer with the default table bound. The first call builds
// the table; call it once before going parallel.
const Factorizer& default_factorizer();

Factorization factorize(std::int64_t n);

bool is_prime(std::uint64_t n);

// Fermat: n > 0 and every prime p = 3 mod 4 occurs to an even power.
bool is_sum_of_two_squares(std::int64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
// Inverse of a modulo m; throws std::domain_error if gcd(a, m) != 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
// Non-negative residue of a (possibly negative) integer.
std::uint64_t mod_floor(std::int64_t a, std::uint64_t m);

// Legendre symbol (a/p) for an odd prime p.
int legendre(std::int64_t a, std::uint64_t p);

// Largest e with p^e | n, n != 0.
int valuation(std::int64_t n, std::uint64_t p);
int valuation(const Rational& x, std::uint64_t p);

// Either the real place or a rational prime.
class Place {
 public:
  static Place infinity() { return Place{0}; }
  // Throws std::domain_error unless p is prime.
  static Place prime(std::uint64_t p);

  bool is_infinite() const { return p_ == 0; }
  std::uint64_t p() const { return p_; }
  std::string to_string() const;

  auto operator<=>(const Place&) const = default;

 private:
  explicit Place(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

// Hilbert symbol (a, b)_v for nonzero rationals.
int hilbert_symbol(const Rational& a, const Rational& b, Place v);

// Primes dividing any of the given nonzero integers, ascending.
std::vector<std::uint64_t> prime_support(std::initializer_list<std::int64_t> values);

}  // namespace bzl
