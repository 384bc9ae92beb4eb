#include "bzl/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bzl {

namespace {

std::uint64_t column_value(const CountRow& r, CountColumn c) { return c == CountColumn::count ? r.count : r.baseline; }

std::string format_bound(double b) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", b);
  return buf;
}

}  // namespace

FitResult fit_log_exponent(const CountSeries& series, const Rational& a, CountColumn column) {
  FitResult fit;
  fit.a = a;
  const double ad = boost::rational_cast<double>(a);
  std::vector<double> xs, ys, used;
  for (const auto& r : series.rows) {
    const auto N = column_value(r, column);
    if (N == 0) {
      fit.warnings.push_back("dropped B = " + format_bound(r.bound) + " with zero count");
      continue;
    }
    if (!(r.bound > std::exp(1.0))) {
      fit.warnings.push_back("dropped B = " + format_bound(r.bound) + " (log log B undefined or negative)");
      continue;
    }
    xs.push_back(std::log(std::log(r.bound)));
    ys.push_back(std::log(double(N)) - ad * std::log(r.bound));
    used.push_back(r.bound);
  }
  if (xs.size() < 4) throw std::invalid_argument("fit_log_exponent: fewer than 4 usable points");

  const auto k = double(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 0) throw std::invalid_argument("fit_log_exponent: degenerate bound range");
  fit.log_exponent = sxy / sxx;
  fit.intercept = my - fit.log_exponent * mx;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - fit.intercept - fit.log_exponent * xs[i];
    fit.rss += e * e;
  }
  fit.standard_error = std::sqrt(fit.rss / (k - 2) / sxx);
  fit.points = xs.size();
  fit.b_min = *std::min_element(used.begin(), used.end());
  fit.b_max = *std::max_element(used.begin(), used.end());
  return fit;
}

RatioDiagnostic ratio_diagnostic(const CountSeries& series, const Rational& a, double log_exponent,
                                 CountColumn column) {
  RatioDiagnostic d;
  const double ad = boost::rational_cast<double>(a);
  for (const auto& r : series.rows) {
    const auto N = column_value(r, column);
    if (N == 0) throw std::invalid_argument("ratio_diagnostic: zero count at B = " + format_bound(r.bound));
    const double log_ratio = std::log(double(N)) - ad * std::log(r.bound) - log_exponent * std::log(std::log(r.bound));
    d.rows.push_back({r.bound, std::exp(log_ratio)});
  }
  if (d.rows.empty()) return d;
  const double mid = (d.rows.front().bound + d.rows.back().bound) / 2;
  double lo = INFINITY, hi = -INFINITY, sum = 0;
  std::size_t k = 0;
  for (const auto& r : d.rows) {
    if (r.bound < mid) continue;
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
    sum += r.ratio;
    ++k;
  }
  d.top_half_mean = sum / double(k);
  d.top_half_spread = (hi - lo) / d.top_half_mean;
  return d;
}

void ExperimentConfig::validate() const {
  if (n < 2) throw std::invalid_argument("config: n must be at least 2");
  if (brauer && brauer->n() != n)
    throw std::invalid_argument("config: Brauer class lives on PGL_" + std::to_string(brauer->n()) +
                                ", not PGL_" + std::to_string(n));
  if (bounds.empty()) throw std::invalid_argument("config: empty bound list");
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (!(bounds[i] >= 1)) throw std::invalid_argument("config: bounds must be >= 1");
    if (i && !(bounds[i] > bounds[i - 1])) throw std::invalid_argument("config: bounds must increase strictly");
  }
  if (workers < 0) throw std::invalid_argument("config: negative worker count");
  check_overflow(n, bounds.back());
}

ExperimentConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path = p;
    return path.is_relative() ? base_dir / path : path;
  };
  ExperimentConfig cfg;
  cfg.n = j.at("n").get<int>();
  if (j.contains("brauer") && !j.at("brauer").is_null()) {
    const auto& b = j.at("brauer");
    cfg.brauer = b.is_string() ? load_brauer_class(resolve(b.get<std::string>())) : brauer_class_from_json(b, base_dir);
  }
  const auto& bounds = j.at("bounds");
  if (bounds.is_array()) {
    cfg.bounds = bounds.get<std::vector<double>>();
  } else {
    const double start = bounds.at("start").get<double>(), stop = bounds.at("stop").get<double>(),
                 step = bounds.at("step").get<double>();
    if (!(step > 0)) throw std::invalid_argument("config: bound step must be positive");
    for (int i = 0;; ++i) {
      const double b = start + i * step;
      if (b > stop + 1e-9 * step) break;
      cfg.bounds.push_back(b);
    }
  }
  cfg.workers = j.value("workers", 0);
  if (const char* env = std::getenv("BZL_WORKERS")) {
    if (int w = std::atoi(env); w > 0) cfg.workers = w;
  }
  cfg.rows_per_unit = j.value("rows_per_unit", std::size_t(0));
  if (j.contains("checkpoint") && !j.at("checkpoint").is_null())
    cfg.checkpoint = resolve(j.at("checkpoint").get<std::string>());
  if (j.contains("output")) cfg.output = resolve(j.at("output").get<std::string>());
  if (j.contains("report") && !j.at("report").is_null()) cfg.report = resolve(j.at("report").get<std::string>());
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  return config_from_json(nlohmann::json::parse(in), path.parent_path());
}

std::string count_csv(const CountSeries& series) {
  std::ostringstream os;
  os << "# bzl-counts schema_version=" << kSchemaVersion << "\n";
  os << "B,N,N_baseline\n";
  for (const auto& r : series.rows) os << format_bound(r.bound) << ',' << r.count << ',' << r.baseline << '\n';
  return os.str();
}

void write_count_csv(const CountSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << count_csv(series);
}

CountSeries read_count_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  CountSeries series;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line.rfind("B,N,N_baseline", 0) != 0) throw std::runtime_error("unexpected CSV header in " + path.string());
      header = true;
      continue;
    }
    std::istringstream is(line);
    std::string b, n, nb;
    if (!std::getline(is, b, ',') || !std::getline(is, n, ',') || !std::getline(is, nb, ','))
      throw std::runtime_error("malformed CSV row: " + line);
    series.rows.push_back({std::stod(b), std::stoull(n), std::stoull(nb)});
  }
  return series;
}

namespace {

nlohmann::json fit_json(const FitResult& f) {
  return {{"a", format_rational(f.a)},
          {"t_hat", f.log_exponent},
          {"standard_error", f.standard_error},
          {"log_constant", f.intercept},
          {"rss", f.rss},
          {"points", f.points},
          {"B_min", f.b_min},
          {"B_max", f.b_max},
          {"warnings", f.warnings}};
}

nlohmann::json ratio_json(const RatioDiagnostic& d, double t) {
  auto rows = nlohmann::json::array();
  for (const auto& r : d.rows) rows.push_back({{"B", r.bound}, {"ratio", r.ratio}});
  return {{"log_exponent", t},
          {"rows", rows},
          {"top_half_spread", d.top_half_spread},
          {"empirical_constant", d.top_half_mean},
          {"empirical_constant_note", "empirical, no theoretical target"}};
}

}  // namespace

nlohmann::json ExperimentReport::to_json(const ExperimentConfig& cfg) const {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["fingerprint"] = fingerprint;
  j["config"] = {{"n", cfg.n},
                 {"brauer", cfg.brauer ? cfg.brauer->describe() : std::string("trivial")},
                 {"bounds", cfg.bounds},
                 {"workers", resolve_workers(cfg.workers)}};
  j["predicted"] = invariants_to_json(invariants);
  j["series"] = nlohmann::json::array();
  for (const auto& r : series.rows) j["series"].push_back({{"B", r.bound}, {"N", r.count}, {"N_baseline", r.baseline}});
  const double t = boost::rational_cast<double>(invariants.m - 1);
  if (fit) j["fit"] = fit_json(*fit);
  if (baseline_fit) j["baseline_fit"] = fit_json(*baseline_fit);
  j["ratios"] = ratio_json(ratios, t);
  j["baseline_ratios"] = ratio_json(baseline_ratios, 0.0);
  j["acceptance_note"] = "fit windows are engineering judgments; no error term is known for the asymptotic";
  j["timing"] = {{"seconds", seconds}, {"points_per_second", points_per_second}};
  return j;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const EnumerationOptions& extra) {
  cfg.validate();
  ExperimentReport rep;
  const auto boundary = cfg.brauer ? pgl_boundary(*cfg.brauer) : pgl_boundary(cfg.n, 1);
  rep.invariants = manin_invariants(boundary);

  const auto pred = cfg.brauer ? CountPredicate::zero_locus(*cfg.brauer) : CountPredicate::trivial();
  EnumerationOptions opts = extra;
  opts.workers = cfg.workers;
  opts.rows_per_unit = cfg.rows_per_unit;
  opts.checkpoint = cfg.checkpoint;

  std::vector<std::int64_t> thresholds;
  for (double b : cfg.bounds) thresholds.push_back(HeightWindow(b).bound_squared);
  const std::size_t rpu = cfg.rows_per_unit ? cfg.rows_per_unit : default_rows_per_unit(cfg.n, thresholds.back());
  rep.fingerprint = enumeration_fingerprint(cfg.n, thresholds, pred.spec, rpu);

  const auto start = std::chrono::steady_clock::now();
  rep.series = count_series(cfg.n, cfg.bounds, pred, opts);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.points_per_second = rep.seconds > 0 ? double(rep.series.rows.back().baseline) / rep.seconds : 0;

  const double t = boost::rational_cast<double>(rep.invariants.m - 1);
  bool positive = std::all_of(rep.series.rows.begin(), rep.series.rows.end(), [](const CountRow& r) { return r.count > 0; });
  try {
    rep.fit = fit_log_exponent(rep.series, rep.invariants.a);
  } catch (const std::invalid_argument&) {
    // Fewer than 4 usable points: the report carries counts and ratios only.
  }
  try {
    rep.baseline_fit = fit_log_exponent(rep.series, rep.invariants.a, CountColumn::baseline);
  } catch (const std::invalid_argument&) {
  }
  if (positive) rep.ratios = ratio_diagnostic(rep.series, rep.invariants.a, t);
  bool base_positive =
      std::all_of(rep.series.rows.begin(), rep.series.rows.end(), [](const CountRow& r) { return r.baseline > 0; });
  if (base_positive) rep.baseline_ratios = ratio_diagnostic(rep.series, rep.invariants.a, 0.0, CountColumn::baseline);

  if (!cfg.output.empty()) write_count_csv(rep.series, cfg.output);
  if (cfg.report) {
    std::ofstream out(*cfg.report, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write report " + cfg.report->string());
    out << rep.to_json(cfg).dump(2) << '\n';
  }
  return rep;
}

}  // namespace bzl
