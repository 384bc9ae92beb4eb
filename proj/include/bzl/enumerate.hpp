#pragma once

// Counting canonical primitive points of PGL_n(Q) inside P^{n^2-1}(Q) by
// Euclidean height of the primitive representative.
//
// The parallel kernel fixes the first row per work unit, recurses over the
// middle entries, and treats the last entry t in closed form: det = C*t + R
// with C the leading (n-1)-minor. Determinant predicates are read from a
// table indexed by det, and primitivity in t is handled by Moebius inversion
// over the squarefree divisors of the prefix gcd. Canonical sign is fixed by
// the first row, which is never zero on U.

#include "bzl/brauer.hpp"
#include "bzl/matrix.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bzl {

struct HeightWindow {
  // Throws std::domain_error unless bound >= 1.
  explicit HeightWindow(double bound);

  double bound;
  // floor(bound^2); H(M) <= bound iff height_squared(M) <= bound_squared.
  std::int64_t bound_squared;
};

std::int64_t height_squared(const MatrixPoint& m);

using DetPredicate = std::function<bool(std::int64_t)>;
using PointPredicate = std::function<bool(const MatrixPoint&)>;

// A counting predicate together with a stable description for fingerprints.
// Predicates that factor through det take the tabulated fast path.
struct CountPredicate {
  std::string spec;
  DetPredicate on_det;
  PointPredicate on_point;

  static CountPredicate trivial();
  static CountPredicate zero_locus(const BrauerClass& b);
  static CountPredicate determinant(std::string spec, DetPredicate pred);
  static CountPredicate point(std::string spec, PointPredicate pred);

  bool factors_through_det() const { return static_cast<bool>(on_det); }
};

struct WorkUnit {
  std::uint64_t id = 0;
  int n = 0;
  // Consecutive canonical first rows, n entries each.
  std::vector<std::int64_t> first_rows;

  std::size_t row_count() const { return n ? first_rows.size() / std::size_t(n) : 0; }
};

// All canonical nonzero first rows of squared length <= max_h2, in
// lexicographic order, chunked into units of rows_per_unit rows.
std::vector<WorkUnit> plan_work_units(int n, std::int64_t max_h2, std::size_t rows_per_unit);

// Default granularity: about 4096 units.
std::size_t default_rows_per_unit(int n, std::int64_t max_h2);

struct CountRow {
  double bound = 0;
  std::uint64_t count = 0;
  std::uint64_t baseline = 0;
};

struct CountSeries {
  std::vector<CountRow> rows;
};

// Cumulative counts of one unit per threshold.
struct UnitCounts {
  std::uint64_t unit_id = 0;
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> baseline;
};

struct EnumerationOptions {
  // 0 selects BZL_WORKERS from the environment, then the OpenMP default.
  int workers = 0;
  // 0 selects default_rows_per_unit.
  std::size_t rows_per_unit = 0;
  std::optional<std::filesystem::path> checkpoint;
  // Runs under the merge lock after each unit is recorded.
  std::function<void(const UnitCounts&)> on_unit_complete;
};

int resolve_workers(int requested);

// Refuses (std::overflow_error) when determinants may leave 63 bits.
void check_overflow(int n, double max_bound);

std::uint64_t enumerate_count(int n, HeightWindow window, const CountPredicate& pred,
                              const EnumerationOptions& opts = {});

// One pass over the largest bound; every threshold is filled simultaneously
// together with the trivial-predicate baseline. Bounds must increase strictly.
CountSeries count_series(int n, std::span<const double> bounds, const CountPredicate& pred,
                         const EnumerationOptions& opts = {});
CountSeries count_series(int n, std::span<const double> bounds, const BrauerClass& b,
                         const EnumerationOptions& opts = {});

// Fingerprint over everything that determines unit ids and their counts.
std::string enumeration_fingerprint(int n, std::span<const std::int64_t> thresholds, const std::string& predicate_spec,
                                    std::size_t rows_per_unit);

namespace serial {

// Reference implementation: visits every integer vector in the ball and
// filters for canonical sign, primitivity, det != 0 and the predicate.
// Single threaded; kept for testing and benchmarking.
CountSeries count_series(int n, std::span<const double> bounds, const CountPredicate& pred);
std::uint64_t enumerate_count(int n, HeightWindow window, const CountPredicate& pred);

}  // namespace serial

}  // namespace bzl
