// bzl: counting matrices in Brauer zero loci of PGL_n by height.
//
//   bzl count      --config cfg.json | --n 2 --brauer b.json --bounds 100,150,...
//   bzl fit        --input counts.csv --a 4
//   bzl invariants --n 2 --order 2 | --boundary data.json
//   bzl euler      --character chi.json --group trivial --group chi4.json
//   bzl selftest

#include "bzl/analytic.hpp"
#include "bzl/experiment.hpp"
#include "bzl/geometry.hpp"
#include "selftest.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

bzl::CyclicCharacter character_arg(const std::string& s) {
  if (s == "trivial") return bzl::CyclicCharacter::trivial();
  return bzl::load_character(s);
}

int run_count(const std::string& config_path, int n, const std::string& brauer_path, const std::string& character_path,
              const std::vector<double>& bounds, int workers, std::size_t rows_per_unit, const std::string& checkpoint,
              const std::string& output, const std::string& report, long abort_after) {
  bzl::ExperimentConfig cfg;
  if (!config_path.empty()) {
    cfg = bzl::load_config(config_path);
  } else {
    cfg.n = n;
    if (!brauer_path.empty()) cfg.brauer = bzl::load_brauer_class(brauer_path);
    if (!character_path.empty()) cfg.brauer = bzl::BrauerClass(n, character_arg(character_path));
    cfg.bounds = bounds;
    cfg.output = output;
  }
  if (workers > 0) cfg.workers = workers;
  if (rows_per_unit > 0) cfg.rows_per_unit = rows_per_unit;
  if (!checkpoint.empty()) cfg.checkpoint = checkpoint;
  if (!report.empty()) cfg.report = report;
  if (config_path.empty() || !output.empty()) cfg.output = output.empty() ? cfg.output : std::filesystem::path(output);

  bzl::EnumerationOptions extra;
  if (abort_after > 0) {
    // Testing hook: die by SIGKILL once abort_after units are checkpointed.
    auto seen = std::make_shared<long>(0);
    extra.on_unit_complete = [seen, abort_after](const bzl::UnitCounts&) {
      if (++*seen >= abort_after) std::raise(SIGKILL);
    };
  }
  auto rep = bzl::run_experiment(cfg, extra);
  std::cout << bzl::count_csv(rep.series);
  if (rep.fit) {
    std::fprintf(stderr, "t_hat = %.6f +- %.6f (predicted %s), %.3g points/s\n", rep.fit->log_exponent,
                 rep.fit->standard_error, bzl::format_rational(rep.invariants.m - 1).c_str(), rep.points_per_second);
  }
  return 0;
}

int run_fit(const std::string& input, const std::string& a_text, const std::string& column, double predicted,
            bool has_predicted) {
  auto series = bzl::read_count_csv(input);
  const auto a = bzl::parse_rational(nlohmann::json(a_text));
  const auto col = column == "baseline" ? bzl::CountColumn::baseline : bzl::CountColumn::count;
  auto fit = bzl::fit_log_exponent(series, a, col);
  nlohmann::json j;
  j["schema_version"] = bzl::kSchemaVersion;
  j["a"] = bzl::format_rational(a);
  j["t_hat"] = fit.log_exponent;
  j["standard_error"] = fit.standard_error;
  j["rss"] = fit.rss;
  j["points"] = fit.points;
  j["warnings"] = fit.warnings;
  const double t = has_predicted ? predicted : fit.log_exponent;
  auto ratios = bzl::ratio_diagnostic(series, a, t, col);
  j["ratio_log_exponent"] = t;
  for (const auto& r : ratios.rows) j["ratios"].push_back({{"B", r.bound}, {"ratio", r.ratio}});
  j["top_half_spread"] = ratios.top_half_spread;
  j["empirical_constant"] = ratios.top_half_mean;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_invariants(int n, unsigned order, const std::string& bundle, const std::string& boundary_path) {
  std::vector<bzl::BoundaryDatum> data;
  if (!boundary_path.empty()) {
    data = bzl::load_boundary_data(boundary_path);
  } else {
    auto lb = bundle == "anticanonical" ? bzl::LineBundle::anticanonical : bzl::LineBundle::hyperplane_pullback;
    data = bzl::pgl_boundary(n, order, lb);
  }
  auto inv = bzl::manin_invariants(data);
  nlohmann::json j;
  j["schema_version"] = bzl::kSchemaVersion;
  j["boundary"] = bzl::boundary_to_json(data);
  j["invariants"] = bzl::invariants_to_json(inv);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_euler(const std::string& chi_path, const std::vector<std::string>& group_paths, double eps1, double eps2,
              std::uint64_t prime_bound, bool no_tail, const std::string& output) {
  auto chi = character_arg(chi_path);
  std::vector<bzl::CyclicCharacter> elems;
  for (const auto& g : group_paths) elems.push_back(character_arg(g));
  if (elems.empty()) elems.push_back(bzl::CyclicCharacter::trivial());
  auto group = bzl::CharacterGroup::from_elements(std::move(elems));
  bzl::SingularityOptions opts;
  opts.eps1 = eps1;
  opts.eps2 = eps2;
  opts.prime_bound = prime_bound;
  opts.tail_correction = !no_tail;
  auto est = bzl::singularity_order_estimate(chi, group, opts);

  std::ostringstream os;
  os << "# bzl-euler schema_version=" << bzl::kSchemaVersion << "\n";
  os << "s,eps,P,value,estimated_order\n";
  char buf[256];
  for (auto [eps, log_l] : {std::pair{est.eps1, est.log_l1}, std::pair{est.eps2, est.log_l2}}) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%llu,%.17g,%.17g\n", 1 + eps, eps,
                  static_cast<unsigned long long>(est.prime_bound), std::exp(log_l), est.order);
    os << buf;
  }
  std::cout << os.str();
  if (!output.empty()) {
    std::ofstream out(output, std::ios::trunc);
    out << os.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting rational matrices in Brauer zero loci of PGL_n"};
  app.require_subcommand(1);

  auto* count = app.add_subcommand("count", "count one series N(B), N_baseline(B)");
  std::string config_path, brauer_path, character_path, checkpoint, output, report;
  int n = 2, workers = 0;
  std::size_t rows_per_unit = 0;
  std::vector<double> bounds;
  long abort_after = 0;
  count->add_option("--config", config_path, "experiment config (JSON)");
  count->add_option("--n", n, "matrix size");
  count->add_option("--brauer", brauer_path, "Brauer class file");
  count->add_option("--character", character_path, "character file, Brauer class (det_n, chi)");
  count->add_option("--bounds", bounds, "height bounds, increasing")->delimiter(',');
  count->add_option("--workers", workers, "worker threads (default: BZL_WORKERS or OpenMP default)");
  count->add_option("--rows-per-unit", rows_per_unit, "first rows per work unit");
  count->add_option("--checkpoint", checkpoint, "checkpoint log for resumption");
  count->add_option("--output", output, "CSV output path");
  count->add_option("--report", report, "JSON report path");
  count->add_option("--abort-after-units", abort_after, "testing: SIGKILL self after this many units")
      ->group("");

  auto* fit = app.add_subcommand("fit", "fit the log-exponent of a count CSV");
  std::string input, a_text = "4", column = "count";
  double predicted = 0;
  auto* pred_opt = fit->add_option("--predicted", predicted, "log exponent used for the ratio column");
  fit->add_option("--input", input, "count CSV")->required();
  fit->add_option("--a", a_text, "fixed B-exponent (rational)");
  fit->add_option("--column", column, "count | baseline");

  auto* invariants = app.add_subcommand("invariants", "Manin invariants from boundary data");
  unsigned order = 1;
  std::string bundle = "pullback", boundary_path;
  invariants->add_option("--n", n, "matrix size for the built-in PGL_n boundary");
  invariants->add_option("--order", order, "order of the Brauer class");
  invariants->add_option("--bundle", bundle, "pullback | anticanonical");
  invariants->add_option("--boundary", boundary_path, "boundary data file");

  auto* euler = app.add_subcommand("euler", "partial Euler products and branch order at s = 1");
  std::string chi_path = "trivial", euler_out;
  std::vector<std::string> group_paths;
  double eps1 = 1e-2, eps2 = 1e-3;
  std::uint64_t prime_bound = 10'000'000;
  bool no_tail = false;
  euler->add_option("--character", chi_path, "character file or 'trivial'");
  euler->add_option("--group", group_paths, "elements of the character group (files or 'trivial')");
  euler->add_option("--eps1", eps1);
  euler->add_option("--eps2", eps2);
  euler->add_option("--prime-bound", prime_bound);
  euler->add_flag("--no-tail", no_tail, "disable the prime-number-theorem tail model");
  euler->add_option("--output", euler_out, "CSV output path");

  auto* selftest = app.add_subcommand("selftest", "run the quick oracle suites");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*count) {
      if (config_path.empty() && bounds.empty()) throw CLI::ValidationError("count", "--bounds or --config required");
      return run_count(config_path, n, brauer_path, character_path, bounds, workers, rows_per_unit, checkpoint, output,
                       report, abort_after);
    }
    if (*fit) return run_fit(input, a_text, column, predicted, pred_opt->count() > 0);
    if (*invariants) return run_invariants(n, order, bundle, boundary_path);
    if (*euler) return run_euler(chi_path, group_paths, eps1, eps2, prime_bound, no_tail, euler_out);
    if (*selftest) return bzl::tools::run_selftest(std::cout) ? 0 : 1;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "bzl: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
