#include "bzl/arithmetic.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using bzl::Place;
using bzl::Rational;

TEST_CASE("factorize small, large and negative integers") {
  auto f = bzl::factorize(-360);
  CHECK(f.sign == -1);
  CHECK(f.factors == std::map<std::uint64_t, int>{{2, 3}, {3, 2}, {5, 1}});
  CHECK(f.value() == -360);

  // Semiprime beyond the table: exercises Pollard-Brent.
  const std::int64_t p = 1'000'000'007, q = 998'244'353;
  auto g = bzl::factorize(p * q);
  CHECK(g.factors == std::map<std::uint64_t, int>{{std::uint64_t(q), 1}, {std::uint64_t(p), 1}});

  const std::int64_t big_prime = 9'223'372'036'854'775'783LL;
  CHECK(bzl::factorize(big_prime).factors.size() == 1);
  CHECK(bzl::factorize(1).factors.empty());
  CHECK_THROWS_AS(bzl::factorize(0), std::domain_error);
}

TEST_CASE("factorize agrees with the product of its factors over a range") {
  const bzl::Factorizer small(100);  // force the Pollard path above 100
  for (std::int64_t n = 1; n <= 20000; ++n) {
    auto f = small.factorize(n);
    CHECK(f.value() == n);
    for (auto [p, e] : f.factors) CHECK(bzl::is_prime(p));
  }
}

TEST_CASE("Miller-Rabin matches trial division") {
  for (std::uint64_t n = 0; n < 5000; ++n) {
    bool prime = n >= 2;
    for (std::uint64_t d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
    CHECK(bzl::is_prime(n) == prime);
  }
  CHECK_FALSE(bzl::is_prime(3215031751ULL));  // strong pseudoprime to 2,3,5,7
}

TEST_CASE("sum of two squares: Fermat criterion") {
  CHECK(bzl::is_sum_of_two_squares(1));
  CHECK(bzl::is_sum_of_two_squares(2));
  CHECK_FALSE(bzl::is_sum_of_two_squares(3));
  CHECK(bzl::is_sum_of_two_squares(9));
  CHECK_FALSE(bzl::is_sum_of_two_squares(21));
  CHECK(bzl::is_sum_of_two_squares(245));  // 5 * 7^2
  CHECK_FALSE(bzl::is_sum_of_two_squares(-5));
  CHECK_THROWS_AS(bzl::is_sum_of_two_squares(0), std::domain_error);
  for (std::int64_t x = 1; x <= 5000; ++x) CHECK(bzl::is_sum_of_two_squares(x) == oracle::is_gaussian_norm(x));
}

TEST_CASE("places") {
  CHECK(Place::infinity().is_infinite());
  CHECK(Place::prime(7).p() == 7);
  CHECK(Place::prime(7).to_string() == "7");
  CHECK_THROWS_AS(Place::prime(9), std::domain_error);
  CHECK_THROWS_AS(Place::prime(1), std::domain_error);
}

TEST_CASE("Hilbert symbol: worked values") {
  CHECK(bzl::hilbert_symbol(-1, -1, Place::infinity()) == -1);
  CHECK(bzl::hilbert_symbol(-1, -1, Place::prime(2)) == -1);
  CHECK(bzl::hilbert_symbol(-1, -1, Place::prime(3)) == 1);
  CHECK(bzl::hilbert_symbol(2, 3, Place::prime(3)) == -1);
  CHECK(bzl::hilbert_symbol(3, 7, Place::prime(7)) == -1);  // 3 is not a square mod 7
  CHECK(bzl::hilbert_symbol(Rational(1, 2), Rational(3), Place::prime(3)) == -1);
  CHECK(bzl::hilbert_symbol(5, 5, Place::prime(5)) == 1);   // (5,5) = (5,-1) and -1 is a square mod 5
  CHECK_THROWS_AS(bzl::hilbert_symbol(0, 3, Place::prime(3)), std::domain_error);
}

namespace {

std::int64_t draw(std::mt19937_64& rng, std::int64_t lim) {
  std::uniform_int_distribution<std::int64_t> d(-lim, lim);
  std::int64_t v = 0;
  while (v == 0) v = d(rng);
  return v;
}

int product_over_places(const Rational& a, const Rational& b) {
  int prod = bzl::hilbert_symbol(a, b, Place::infinity());
  for (auto p : bzl::prime_support({a.numerator(), a.denominator(), b.numerator(), b.denominator(), 2}))
    prod *= bzl::hilbert_symbol(a, b, Place::prime(p));
  return prod;
}

}  // namespace

TEST_CASE("Hilbert symbol agrees with a brute-force isotropy search") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 400; ++i) {
    const std::int64_t an = draw(rng, 300), ad = std::abs(draw(rng, 300));
    const std::int64_t bn = draw(rng, 300), bd = std::abs(draw(rng, 300));
    for (std::uint64_t p : {2, 3, 5, 7, 11}) {
      CAPTURE(an);
      CAPTURE(ad);
      CAPTURE(bn);
      CAPTURE(bd);
      CAPTURE(p);
      CHECK(bzl::hilbert_symbol(Rational(an, ad), Rational(bn, bd), Place::prime(p)) ==
            oracle::hilbert_symbol(an, ad, bn, bd, p));
    }
  }
}

TEST_CASE("Hilbert symbol: product formula, symmetry, bimultiplicativity") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const Rational a(draw(rng, 10000), std::abs(draw(rng, 10000)));
    const Rational b(draw(rng, 10000), std::abs(draw(rng, 10000)));
    const Rational c(draw(rng, 1000), std::abs(draw(rng, 1000)));
    CHECK(product_over_places(a, b) == 1);
    for (std::uint64_t p : {2, 3, 5, 7}) {
      const auto v = Place::prime(p);
      CHECK(bzl::hilbert_symbol(a, b, v) == bzl::hilbert_symbol(b, a, v));
      CHECK(bzl::hilbert_symbol(a * c, b, v) == bzl::hilbert_symbol(a, b, v) * bzl::hilbert_symbol(c, b, v));
      CHECK(bzl::hilbert_symbol(a, -a, v) == 1);
      CHECK(bzl::hilbert_symbol(a, a * a * b, v) == bzl::hilbert_symbol(a, b, v));
    }
  }
}

TEST_CASE("valuation and modular helpers") {
  CHECK(bzl::valuation(Rational(12, 25), 5) == -2);
  CHECK(bzl::valuation(Rational(12, 25), 2) == 2);
  CHECK(bzl::mod_floor(-1, 8) == 7);
  CHECK(bzl::invmod(3, 7) == 5);
  CHECK_THROWS_AS(bzl::invmod(2, 4), std::domain_error);
  CHECK(bzl::legendre(2, 7) == 1);
  CHECK(bzl::legendre(3, 7) == -1);
  CHECK(bzl::legendre(14, 7) == 0);
}
