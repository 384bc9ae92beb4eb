#include "bzl/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bzl::serial {

namespace {

struct Visitor {
  int n;
  std::vector<std::int64_t> thresholds;
  const CountPredicate& pred;
  std::vector<std::int64_t> x;
  CountSeries& series;

  void visit(int pos, std::int64_t s) {
    const int N = n * n;
    if (pos == N) return accept(s);
    const auto r = std::int64_t(std::sqrt(double(thresholds.back() - s)));
    for (std::int64_t v = -r - 1; v <= r + 1; ++v) {
      if (s + v * v > thresholds.back()) continue;
      x[std::size_t(pos)] = v;
      visit(pos + 1, s + v * v);
    }
  }

  void accept(std::int64_t h2) {
    auto first = std::find_if(x.begin(), x.end(), [](std::int64_t v) { return v != 0; });
    if (first == x.end() || *first < 0) return;
    std::int64_t g = 0;
    for (std::int64_t v : x) g = std::gcd(g, v);
    if (g != 1) return;
    const std::int64_t det = determinant(n, x);
    if (det == 0) return;
    const bool hit = pred.factors_through_det() ? pred.on_det(det) : pred.on_point(MatrixPoint::from_entries(n, x));
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      if (h2 <= thresholds[i]) {
        ++series.rows[i].baseline;
        if (hit) ++series.rows[i].count;
      }
    }
  }
};

}  // namespace

CountSeries count_series(int n, std::span<const double> bounds, const CountPredicate& pred) {
  if (n < 2) throw std::domain_error("matrix size must be at least 2");
  if (bounds.empty()) throw std::invalid_argument("empty bound list");
  check_overflow(n, bounds.back());
  CountSeries series;
  std::vector<std::int64_t> thresholds;
  for (double b : bounds) {
    thresholds.push_back(HeightWindow(b).bound_squared);
    series.rows.push_back({b, 0, 0});
  }
  if (!std::is_sorted(thresholds.begin(), thresholds.end()))
    throw std::invalid_argument("bounds must be strictly increasing");
  Visitor v{n, thresholds, pred, std::vector<std::int64_t>(std::size_t(n) * n, 0), series};
  v.visit(0, 0);
  return series;
}

std::uint64_t enumerate_count(int n, HeightWindow window, const CountPredicate& pred) {
  const double b[] = {window.bound};
  return serial::count_series(n, std::span<const double>(b), pred).rows.front().count;
}

}  // namespace bzl::serial
