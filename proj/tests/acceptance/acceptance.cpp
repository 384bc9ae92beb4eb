// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
//
//   acceptance [criterion numbers...]   (default: all)

#include "bzl/analytic.hpp"
#include "bzl/experiment.hpp"
#include "bzl/geometry.hpp"
#include "oracles.hpp"

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

extern char** environ;

namespace fs = std::filesystem;
using bzl::CountPredicate;
using bzl::CyclicCharacter;
using bzl::Place;
using bzl::Rational;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

const fs::path kData = BZL_TEST_DATA;
const fs::path kWork = fs::current_path() / "acceptance_artifacts";

CyclicCharacter chi4() { return bzl::load_character(kData / "chi4.json"); }
CyclicCharacter chi3() {
  const bzl::GeneratorValue g[] = {{2, 1}};
  return CyclicCharacter::from_generators(3, 2, g);
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// 1. prod_v (a, b)_v = 1 for random rationals with |num|, den <= 1e4.
Outcome hilbert_product_formula() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::int64_t> num(-10000, 10000), den(1, 10000);
  auto nz = [&] {
    std::int64_t v = 0;
    while (v == 0) v = num(rng);
    return v;
  };
  int failures = 0;
  const int pairs = 10000;
  for (int i = 0; i < pairs; ++i) {
    const Rational a(nz(), den(rng)), b(nz(), den(rng));
    int prod = bzl::hilbert_symbol(a, b, Place::infinity());
    for (auto p : bzl::prime_support({a.numerator(), a.denominator(), b.numerator(), b.denominator(), 2}))
      prod *= bzl::hilbert_symbol(a, b, Place::prime(p));
    failures += prod != 1;
  }
  return {failures == 0, std::to_string(pairs) + " pairs, " + std::to_string(failures) + " violations"};
}

// 2. Norms from Q(i): character test, Fermat criterion and Hilbert symbols
// (x, -1)_v agree for all 0 < |x| <= 1e5.
Outcome gaussian_norm_agreement() {
  const auto chi = chi4();
  std::int64_t disagreements = 0, norms = 0;
  std::int64_t first_bad = 0;
  for (std::int64_t x = -100000; x <= 100000; ++x) {
    if (x == 0) continue;
    const Rational r(x);
    const bool by_character = bzl::is_global_norm(r, chi);
    const bool by_fermat = bzl::is_sum_of_two_squares(x);
    bool by_hilbert = true;
    for (Place v : bzl::relevant_places(r, 2)) by_hilbert = by_hilbert && bzl::hilbert_symbol(r, -1, v) == 1;
    norms += by_character;
    if (by_character != by_fermat || by_character != by_hilbert) {
      if (!disagreements) first_bad = x;
      ++disagreements;
    }
  }
  std::string d = "200000 values, " + std::to_string(norms) + " norms, " + std::to_string(disagreements) +
                  " disagreements";
  if (disagreements) d += " (first at x = " + std::to_string(first_bad) + ")";
  return {disagreements == 0, d};
}

// 3. Kernel against the naive quadruple loop, n = 2.
Outcome enumeration_oracle() {
  const std::vector<double> bounds{2, 5, 10, 20, 40, 60};
  const bzl::BrauerClass b(2, chi4());
  const auto triv = bzl::count_series(2, bounds, CountPredicate::trivial());
  const auto zl = bzl::count_series(2, bounds, b);
  const auto o_triv = oracle::naive_counts(2, bounds, [](std::int64_t) { return true; });
  const auto o_zl = oracle::naive_counts(2, bounds, oracle::is_gaussian_norm);
  std::ostringstream os;
  bool ok = true;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    ok = ok && triv.rows[i].count == o_triv[i] && zl.rows[i].count == o_zl[i] && zl.rows[i].baseline == o_triv[i];
  }
  os << "B=60: N_triv=" << triv.rows.back().count << " (oracle " << o_triv.back() << "), N_chi4=" << zl.rows.back().count
     << " (oracle " << o_zl.back() << ")" << (ok ? "" : "; mismatch at some B");
  return {ok, os.str()};
}

int spawn_and_wait(const std::vector<std::string>& args) {
  std::vector<char*> argv;
  for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);
  // The child's CSV and progress output are not part of the report.
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, 1, "/dev/null", O_WRONLY, 0);
  posix_spawn_file_actions_addopen(&actions, 2, "/dev/null", O_WRONLY, 0);
  pid_t pid;
  const int rc = posix_spawn(&pid, argv[0], &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) throw std::runtime_error("cannot spawn " + args[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  return status;
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

// 4. n = 2, B = 100: identical counts across worker counts and after the CLI
// is SIGKILLed mid-run and resumed from its checkpoint.
Outcome determinism() {
  const std::vector<double> bounds{25, 50, 75, 100};
  const bzl::BrauerClass b(2, chi4());
  std::vector<bzl::CountSeries> runs;
  for (int w : {1, 4, 16}) runs.push_back(bzl::count_series(2, bounds, b, {.workers = w}));
  bool same_workers = true;
  for (const auto& r : runs) {
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      same_workers = same_workers && r.rows[i].count == runs[0].rows[i].count &&
                     r.rows[i].baseline == runs[0].rows[i].baseline;
    }
  }

  const fs::path ck = kWork / "kill_resume.ckpt", csv = kWork / "kill_resume.csv";
  fs::remove(ck);
  fs::remove(csv);
  std::vector<std::string> args{BZL_CLI_PATH, "count", "--n", "2", "--character", (kData / "chi4.json").string(),
                                "--bounds", "25,50,75,100", "--workers", "4", "--checkpoint", ck.string(),
                                "--output", csv.string()};
  auto killed_args = args;
  killed_args.insert(killed_args.end(), {"--abort-after-units", "1500"});
  const int st = spawn_and_wait(killed_args);
  const bool was_killed = WIFSIGNALED(st) && WTERMSIG(st) == SIGKILL;
  const std::size_t recorded = line_count(ck);
  const int st2 = spawn_and_wait(args);
  const bool resumed_ok = WIFEXITED(st2) && WEXITSTATUS(st2) == 0;
  bool same_resume = false;
  if (resumed_ok) {
    const auto back = bzl::read_count_csv(csv);
    same_resume = back.rows.size() == bounds.size();
    for (std::size_t i = 0; same_resume && i < bounds.size(); ++i)
      same_resume = back.rows[i].count == runs[0].rows[i].count && back.rows[i].baseline == runs[0].rows[i].baseline;
  }
  const std::size_t total = bzl::plan_work_units(2, 10000, bzl::default_rows_per_unit(2, 10000)).size();
  std::ostringstream os;
  os << "N(100)=" << runs[0].rows.back().count << " for 1/4/16 workers" << (same_workers ? "" : " (DIFFER)")
     << "; CLI " << (was_killed ? "killed" : "NOT killed") << " after " << recorded << "/" << total
     << " units, resumed run " << (same_resume ? "identical" : "DIFFERENT");
  return {same_workers && was_killed && recorded < total && same_resume, os.str()};
}

// 5. Exact invariants from the boundary data.
Outcome invariants() {
  struct Case {
    int n;
    std::uint32_t d;
    Rational a, m;
  };
  bool ok = true;
  std::ostringstream os;
  for (const auto& c : {Case{2, 2, 4, Rational(1, 2)}, Case{3, 3, 9, Rational(1, 3)}, Case{4, 2, 16, Rational(1, 2)}}) {
    const auto inv = bzl::manin_invariants(bzl::pgl_boundary(c.n, c.d));
    ok = ok && inv.a == c.a && inv.b == 1 && inv.m == c.m;
    os << "(n,d)=(" << c.n << "," << c.d << "): (a,b,m)=(" << bzl::format_rational(inv.a) << "," << inv.b << ","
       << bzl::format_rational(inv.m) << ")" << (c.n == 4 ? "" : ", ");
  }
  return {ok, os.str()};
}

// 6. Planted exponents recovered by the fit.
Outcome synthetic_fit() {
  struct Case {
    double a, t, C, lo, hi, step;
  };
  double worst = 0;
  for (const auto& c : {Case{4, -0.5, 1e6, 100, 500, 50}, Case{4, 0, 1e6, 100, 500, 50},
                        Case{9, -2.0 / 3, 1, 20, 120, 10}}) {
    bzl::CountSeries s;
    for (double B = c.lo; B <= c.hi; B += c.step) {
      const auto N = std::uint64_t(std::llround(c.C * std::pow(B, c.a) * std::pow(std::log(B), c.t)));
      s.rows.push_back({B, N, N});
    }
    const auto fit = bzl::fit_log_exponent(s, Rational(std::int64_t(c.a)));
    worst = std::max(worst, std::abs(fit.log_exponent - c.t));
  }
  return {worst < 1e-9, "max |t_hat - t| = " + fmt("%.2e", worst) + " over (4,-1/2), (4,0), (9,-2/3)"};
}

// 7. Landau-Ramanujan constant and the two-squares density.
Outcome landau() {
  const double k1 = bzl::landau_constant(1'000'000), k2 = bzl::landau_constant(2'000'000);
  auto ratio = [](std::uint64_t N) {
    return double(bzl::two_squares_count(N)) * std::sqrt(std::log(double(N))) / double(N);
  };
  const double r4 = ratio(10'000), r5 = ratio(100'000), r6 = ratio(1'000'000);
  const double g4 = std::abs(r4 - k1) / k1, g6 = std::abs(r6 - k1) / k1;
  const bool ok = std::abs(k1 - k2) < 1e-5 && g6 < 0.10 && g6 < g4;
  std::ostringstream os;
  os << "K(1e6)=" << fmt("%.10f", k1) << ", |K(2e6)-K(1e6)|=" << fmt("%.1e", std::abs(k1 - k2))
     << "; ratio N=1e4: " << fmt("%.4f", r4) << " (gap " << fmt("%.1f%%", 100 * g4) << "), N=1e5: " << fmt("%.4f", r5)
     << ", N=1e6: " << fmt("%.4f", r6) << " (gap " << fmt("%.1f%%", 100 * g6) << ")";
  return {ok, os.str()};
}

// 8. Branch order of partial Euler products at s = 1, P = 1e7.
Outcome branch_orders() {
  const auto only_trivial = bzl::CharacterGroup::from_elements({CyclicCharacter::trivial()});
  const auto gaussian = bzl::CharacterGroup::from_elements({CyclicCharacter::trivial(), chi4()});
  const auto zeta = bzl::singularity_order_estimate(CyclicCharacter::trivial(), only_trivial);
  const auto half = bzl::singularity_order_estimate(chi4(), gaussian);
  const auto outside = bzl::singularity_order_estimate(chi3(), gaussian);
  const bool ok = std::abs(zeta.order - 1) < 0.05 && std::abs(half.order - 0.5) < 0.10 && std::abs(outside.order) < 0.10;
  std::ostringstream os;
  os << "eps=(" << zeta.eps1 << "," << zeta.eps2 << "), P=1e7: zeta q=" << fmt("%.4f", zeta.order)
     << ", {1,chi4}/chi4 q=" << fmt("%.4f", half.order) << ", {1,chi4}/chi3 q=" << fmt("%.4f", outside.order);
  return {ok, os.str()};
}

// The n = 2 series over B = 100, 150, ..., 500, shared by 9 and 10.
const bzl::ExperimentReport& headline_report() {
  static std::optional<bzl::ExperimentReport> rep;
  if (!rep) {
    auto cfg = bzl::load_config(kData / "headline.json");
    cfg.checkpoint = kWork / "headline.ckpt";
    cfg.output = kWork / "headline.csv";
    cfg.report = kWork / "headline.json";
    fs::remove(*cfg.checkpoint);
    rep = bzl::run_experiment(cfg);
  }
  return *rep;
}

// 9. Baseline Manin check: N_baseline(B) / B^4 nearly constant on [200, 500].
Outcome baseline_manin() {
  const auto& rep = headline_report();
  double lo = INFINITY, hi = 0, sum = 0;
  int k = 0;
  std::ostringstream table;
  for (const auto& r : rep.series.rows) {
    if (r.bound < 200) continue;
    const double q = double(r.baseline) / std::pow(r.bound, 4);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
    sum += q;
    ++k;
    table << " " << r.bound << ":" << fmt("%.5f", q);
  }
  const double spread = (hi - lo) / (sum / k);
  return {spread < 0.05, "N_base/B^4 spread " + fmt("%.2f%%", 100 * spread) + " over" + table.str()};
}

// 10. Headline: fitted log exponent and the ratio column for b = (det, chi4).
Outcome headline() {
  const auto& rep = headline_report();
  if (!rep.fit) return {false, "fit unavailable"};
  const double t = rep.fit->log_exponent;
  const double spread = rep.ratios.top_half_spread;
  std::ostringstream os;
  os << "t_hat=" << fmt("%.4f", t) << " +- " << fmt("%.4f", rep.fit->standard_error)
     << " (predicted -1/2, window [-0.80,-0.20]); N*sqrt(log B)/B^4 top-half spread " << fmt("%.2f%%", 100 * spread)
     << ", constant " << fmt("%.5f", rep.ratios.top_half_mean) << " (empirical); " << fmt("%.0f", rep.seconds) << " s";
  return {t >= -0.80 && t <= -0.20 && spread < 0.10, os.str()};
}

// 11. n = 3, cubic character mod 7: oracle agreement at B <= 4 and an
// informational fit at B <= 12.
Outcome cubic_n3() {
  const auto b = bzl::load_brauer_class(kData / "brauer_n3_cubic7.json");
  const std::vector<double> small{1.5, 2, 3, 4};
  const auto got = bzl::count_series(3, small, b);
  const auto want = oracle::naive_counts(3, small, oracle::is_cubic7_norm);
  bool ok = true;
  for (std::size_t i = 0; i < small.size(); ++i) ok = ok && got.rows[i].count == want[i];

  bzl::ExperimentConfig cfg;
  cfg.n = 3;
  cfg.brauer = b;
  cfg.bounds = {6, 7, 8, 9, 10, 11, 12};
  cfg.output = kWork / "cubic_n3.csv";
  cfg.report = kWork / "cubic_n3.json";
  const auto rep = bzl::run_experiment(cfg);
  std::ostringstream os;
  os << "oracle B<=4 " << (ok ? "exact" : "MISMATCH") << " (N(4)=" << got.rows.back().count << ")";
  if (rep.fit) os << "; B<=12: t_hat=" << fmt("%.3f", rep.fit->log_exponent) << " (predicted -2/3, no window)";
  os << "; ratios";
  for (const auto& r : rep.ratios.rows) os << " " << r.bound << ":" << fmt("%.4f", r.ratio);
  return {ok, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Hilbert product formula", hilbert_product_formula},
      {"norm predicate triple agreement", gaussian_norm_agreement},
      {"enumeration oracle equivalence", enumeration_oracle},
      {"determinism and kill-resume", determinism},
      {"invariant calculator", invariants},
      {"synthetic fit recovery", synthetic_fit},
      {"Landau oracle", landau},
      {"branch-order detection", branch_orders},
      {"baseline Manin check", baseline_manin},
      {"headline n=2 Gaussian zero locus", headline},
      {"n=3 cubic character (extended)", cubic_n3},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  fs::create_directories(kWork);

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = int(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s [%d] %s: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                out.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && out.pass;
  }
  return all ? 0 : 1;
}
