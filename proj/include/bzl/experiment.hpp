#pragma once

#include "bzl/brauer.hpp"
#include "bzl/enumerate.hpp"
#include "bzl/geometry.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bzl {

inline constexpr int kSchemaVersion = 1;

enum class CountColumn { count, baseline };

struct FitResult {
  Rational a;                 // fixed, not fitted
  double log_exponent = 0;    // slope against log log B
  double standard_error = 0;
  double intercept = 0;       // log of the empirical constant
  double rss = 0;
  std::size_t points = 0;
  double b_min = 0, b_max = 0;
  std::vector<std::string> warnings;
};

// OLS of log(N_i / B_i^a) on log log B_i. Points with N_i = 0 are dropped
// with a warning; fewer than 4 remaining points is an error.
FitResult fit_log_exponent(const CountSeries& series, const Rational& a, CountColumn column = CountColumn::count);

struct RatioRow {
  double bound;
  double ratio;  // N / (B^a (log B)^t)
};

struct RatioDiagnostic {
  std::vector<RatioRow> rows;
  // Over rows with B >= (B_min + B_max) / 2.
  double top_half_spread = 0;  // (max - min) / mean
  double top_half_mean = 0;    // empirical constant, no theoretical target
};

RatioDiagnostic ratio_diagnostic(const CountSeries& series, const Rational& a, double log_exponent,
                                 CountColumn column = CountColumn::count);

struct ExperimentConfig {
  int n = 2;
  std::optional<BrauerClass> brauer;  // none: trivial Brauer group
  std::vector<double> bounds;
  int workers = 0;
  std::size_t rows_per_unit = 0;
  std::optional<std::filesystem::path> checkpoint;
  std::filesystem::path output = "counts.csv";
  std::optional<std::filesystem::path> report;

  // Throws std::invalid_argument on a malformed configuration and
  // std::overflow_error when the largest bound is not overflow safe.
  void validate() const;
};

// {n, brauer: path | {n, character}, bounds: [..] | {start, stop, step},
//  workers, rows_per_unit, checkpoint, output, report}. Relative paths are
// resolved against base_dir. BZL_WORKERS overrides workers.
ExperimentConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

struct ExperimentReport {
  std::string fingerprint;
  ManinInvariants invariants;
  CountSeries series;
  std::optional<FitResult> fit;
  std::optional<FitResult> baseline_fit;
  RatioDiagnostic ratios;
  RatioDiagnostic baseline_ratios;
  double seconds = 0;
  double points_per_second = 0;

  nlohmann::json to_json(const ExperimentConfig& cfg) const;
};

// Predicted exponents, then the (resumable) count, then fit and diagnostics.
// Writes cfg.output (CSV) and cfg.report (JSON) when set.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const EnumerationOptions& extra = {});

// "# bzl-counts schema_version=1" then "B,N,N_baseline" rows.
void write_count_csv(const CountSeries& series, const std::filesystem::path& path);
std::string count_csv(const CountSeries& series);
CountSeries read_count_csv(const std::filesystem::path& path);

}  // namespace bzl
