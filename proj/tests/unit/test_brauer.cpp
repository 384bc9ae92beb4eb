#include "bzl/brauer.hpp"

#include <doctest.h>

#include <random>

using bzl::BrauerClass;
using bzl::CyclicCharacter;
using bzl::IntMatrix;
using bzl::Place;
using bzl::Rational;

namespace {

CyclicCharacter make(std::uint64_t f, std::uint32_t d, std::vector<bzl::GeneratorValue> g) {
  return CyclicCharacter::from_generators(f, d, g);
}

IntMatrix random_matrix(std::mt19937_64& rng, int n, std::int64_t lim) {
  std::uniform_int_distribution<std::int64_t> d(-lim, lim);
  for (;;) {
    std::vector<std::int64_t> e(std::size_t(n) * n);
    for (auto& x : e) x = d(rng);
    IntMatrix m(n, e);
    if (m.det() != 0) return m;
  }
}

std::vector<Place> places_of(const IntMatrix& m, std::uint64_t f) { return bzl::relevant_places(Rational(m.det()), f); }

}  // namespace

TEST_CASE("Brauer class construction") {
  const auto chi4 = make(4, 2, {{3, 1}});
  CHECK(BrauerClass(2, chi4).describe() == "(det_2,chi(f=4,d=2,gens=3:1))");
  CHECK_NOTHROW(BrauerClass(4, chi4));
  CHECK_THROWS_AS(BrauerClass(3, chi4), std::invalid_argument);
  CHECK_THROWS_AS(BrauerClass(1, CyclicCharacter::trivial()), std::invalid_argument);
}

TEST_CASE("zero-locus indicator on simple matrices") {
  const BrauerClass b(2, make(4, 2, {{3, 1}}));
  CHECK(bzl::zero_locus_indicator(IntMatrix::identity(2), b));
  CHECK(bzl::zero_locus_indicator(-IntMatrix::identity(2), b));
  CHECK_FALSE(bzl::zero_locus_indicator(IntMatrix(2, {1, 0, 0, 3}), b));
  CHECK_FALSE(bzl::zero_locus_indicator(IntMatrix(2, {0, 1, 1, 0}), b));  // det -1
  CHECK(bzl::zero_locus_indicator(IntMatrix(2, {2, 1, -1, 2}), b));      // det 5
  CHECK_THROWS_AS(bzl::zero_locus_indicator(IntMatrix(2, {1, 2, 2, 4}), b), bzl::BoundaryPointError);
  CHECK_THROWS_AS(bzl::det_in_zero_locus(0, b), bzl::BoundaryPointError);
  CHECK(bzl::det_in_zero_locus(25, b));
}

TEST_CASE("local invariants: bilinearity, reciprocity, representative invariance") {
  std::mt19937_64 rng(9);
  const std::vector<BrauerClass> classes{
      BrauerClass(2, make(4, 2, {{3, 1}})),
      BrauerClass(3, make(7, 3, {{3, 1}})),
      BrauerClass(4, make(5, 4, {{2, 1}})),
      BrauerClass(2, make(8, 2, {{7, 1}, {3, 0}})),
  };
  for (const auto& b : classes) {
    const int n = b.n();
    const auto d = b.order();
    for (int i = 0; i < 60; ++i) {
      const auto m1 = random_matrix(rng, n, 6), m2 = random_matrix(rng, n, 6);
      const auto prod = m1 * m2;
      for (Place v : places_of(prod, b.character().conductor())) {
        CHECK(bzl::local_character_value(prod, b, v) ==
              (bzl::local_character_value(m1, b, v) + bzl::local_character_value(m2, b, v)) % d);
      }
      std::uint64_t total = 0;
      for (Place v : places_of(m1, b.character().conductor())) total += bzl::local_character_value(m1, b, v);
      CHECK(total % d == 0);

      // Scaling by lambda multiplies det by lambda^n and order(b) | n.
      std::vector<std::int64_t> scaled(m1.entries().begin(), m1.entries().end());
      const std::int64_t lambda = (i % 2 ? -1 : 1) * (2 + i % 5);
      for (auto& x : scaled) x *= lambda;
      const IntMatrix s(n, scaled);
      for (Place v : places_of(s, b.character().conductor()))
        CHECK(bzl::local_character_value(s, b, v) == bzl::local_character_value(m1, b, v));
      CHECK(bzl::zero_locus_indicator(s, b) == bzl::zero_locus_indicator(m1, b));
      CHECK(bzl::zero_locus_indicator(bzl::MatrixPoint::from_matrix(s), b) == bzl::zero_locus_indicator(m1, b));
    }
  }
}

TEST_CASE("orthogonality indicator is 0 or 1 and detects the zero locus") {
  std::mt19937_64 rng(21);
  const std::vector<std::vector<BrauerClass>> groups{
      {BrauerClass(4, make(5, 4, {{2, 1}}))},                                  // order 4
      {BrauerClass(2, make(4, 2, {{3, 1}})), BrauerClass(2, make(3, 2, {{2, 1}}))},  // Klein four
      {BrauerClass(6, make(7, 3, {{3, 1}})), BrauerClass(6, make(4, 2, {{3, 1}}))},  // cyclic of order 6
      {BrauerClass(4, make(13, 4, {{2, 1}})), BrauerClass(4, make(5, 4, {{2, 1}}))},  // Z/4 x Z/4
  };
  for (const auto& classes : groups) {
    const int n = classes.front().n();
    for (int i = 0; i < 40; ++i) {
      const auto m = random_matrix(rng, n, 4);
      std::uint64_t f = 1;
      for (const auto& b : classes) f = std::lcm(f, b.character().conductor());
      for (Place v : places_of(m, f)) {
        const Rational t = bzl::thorn_indicator(m, classes, v);
        bool all_zero = true;
        for (const auto& b : classes) all_zero = all_zero && bzl::local_character_value(m, b, v) == 0;
        CHECK((t == Rational(0) || t == Rational(1)));
        CHECK((t == Rational(1)) == all_zero);
      }
    }
  }
  CHECK(bzl::thorn_indicator(IntMatrix::identity(2), std::vector{BrauerClass(2, make(4, 2, {{3, 1}}))},
                             Place::prime(2)) == Rational(1));
}

TEST_CASE("Brauer class files") {
  const std::string dir = BZL_TEST_DATA;
  auto b2 = bzl::load_brauer_class(dir + "/brauer_n2_gaussian.json");
  CHECK(b2.n() == 2);
  CHECK(b2.character().conductor() == 4);
  auto b3 = bzl::load_brauer_class(dir + "/brauer_n3_cubic7.json");
  CHECK(b3.n() == 3);
  CHECK(b3.order() == 3);
  CHECK_THROWS_AS(bzl::brauer_class_from_json(nlohmann::json::parse(
                      R"({"n": 3, "character": {"conductor": 4, "order": 2, "generator_values": [[3, 1]]}})")),
                  std::invalid_argument);
}
