#include "selftest.hpp"

#include "bzl/analytic.hpp"
#include "bzl/enumerate.hpp"
#include "bzl/experiment.hpp"
#include "bzl/geometry.hpp"
#include "oracles.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>

namespace bzl::tools {

namespace {

CyclicCharacter chi4() {
  const GeneratorValue g[] = {{3, 1}};
  return CyclicCharacter::from_generators(4, 2, g);
}

std::string hilbert_suite() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> d(-500, 500);
  auto nz = [&] {
    std::int64_t v = 0;
    while (v == 0) v = d(rng);
    return v;
  };
  for (int i = 0; i < 300; ++i) {
    const std::int64_t an = nz(), ad = std::abs(nz()), bn = nz(), bd = std::abs(nz());
    const Rational a(an, ad), b(bn, bd);
    int prod = hilbert_symbol(a, b, Place::infinity());
    for (auto p : prime_support({an, ad, bn, bd, 2})) prod *= hilbert_symbol(a, b, Place::prime(p));
    if (prod != 1) return "product formula fails at " + std::to_string(an) + "/" + std::to_string(ad);
    for (std::uint64_t p : {2, 3, 5}) {
      if (hilbert_symbol(a, b, Place::prime(p)) != oracle::hilbert_symbol(an, ad, bn, bd, p))
        return "disagrees with search oracle at p=" + std::to_string(p);
    }
  }
  return {};
}

std::string norm_suite() {
  const auto chi = chi4();
  for (std::int64_t x = -2000; x <= 2000; ++x) {
    if (x == 0) continue;
    const bool g = is_global_norm(Rational(x), chi);
    if (g != is_sum_of_two_squares(x) || g != oracle::is_gaussian_norm(x))
      return "disagreement at x=" + std::to_string(x);
  }
  return {};
}

std::string enumeration_suite() {
  const std::vector<double> bounds{2, 5, 10, 14};
  const BrauerClass b(2, chi4());
  auto triv = count_series(2, bounds, CountPredicate::trivial());
  auto zl = count_series(2, bounds, b);
  auto o_triv = oracle::naive_counts(2, bounds, [](std::int64_t) { return true; });
  auto o_zl = oracle::naive_counts(2, bounds, oracle::is_gaussian_norm);
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (triv.rows[i].count != o_triv[i] || triv.rows[i].baseline != o_triv[i] || zl.rows[i].count != o_zl[i])
      return "count mismatch at B=" + std::to_string(bounds[i]);
  }
  return {};
}

std::string invariants_suite() {
  struct Case {
    int n;
    std::uint32_t d;
    Rational a, m;
  };
  for (const Case& c : {Case{2, 2, 4, Rational(1, 2)}, Case{3, 3, 9, Rational(1, 3)}, Case{4, 2, 16, Rational(1, 2)}}) {
    auto inv = manin_invariants(pgl_boundary(c.n, c.d));
    if (inv.a != c.a || inv.b != 1 || inv.m != c.m) return "wrong invariants for n=" + std::to_string(c.n);
  }
  return {};
}

std::string fit_suite() {
  CountSeries s;
  for (double B = 100; B <= 500; B += 50) s.rows.push_back({B, std::uint64_t(std::llround(3e3 * std::pow(B, 4) / std::sqrt(std::log(B)))), 0});
  auto fit = fit_log_exponent(s, 4);
  if (std::abs(fit.log_exponent + 0.5) > 1e-6) return "recovered " + std::to_string(fit.log_exponent);
  return {};
}

std::string two_squares_suite() {
  for (std::uint64_t N : {1, 10, 1000, 100000})
    if (two_squares_count(N) != oracle::two_squares_count_by_factoring(N)) return "mismatch at N=" + std::to_string(N);
  if (two_squares_count(10) != 7) return "two_squares_count(10) != 7";
  return {};
}

}  // namespace

bool run_selftest(std::ostream& out) {
  const std::pair<const char*, std::function<std::string()>> suites[] = {
      {"hilbert symbols", hilbert_suite},   {"norm predicates", norm_suite},
      {"enumeration", enumeration_suite},   {"manin invariants", invariants_suite},
      {"exponent fit", fit_suite},          {"two squares", two_squares_suite},
  };
  bool ok = true;
  for (const auto& [name, fn] : suites) {
    std::string err;
    try {
      err = fn();
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    out << (err.empty() ? "PASS " : "FAIL ") << name << (err.empty() ? "" : ": " + err) << '\n';
    ok = ok && err.empty();
  }
  return ok;
}

}  // namespace bzl::tools
