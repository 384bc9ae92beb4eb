// Serial reference vs OpenMP kernel on the same series.
//
//   bench_enumerate [n=2] [B=80] [workers...]

#include "bzl/enumerate.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 2;
  const double B = argc > 2 ? std::atof(argv[2]) : 80;
  std::vector<int> workers;
  for (int i = 3; i < argc; ++i) workers.push_back(std::atoi(argv[i]));
  if (workers.empty()) workers = {1, omp_get_max_threads()};

  const bzl::GeneratorValue g[] = {{3, 1}};
  // Quadratic character for even n, the cubic one mod 7 otherwise.
  const bzl::GeneratorValue g3[] = {{3, 1}};
  const auto chi = n % 2 == 0 ? bzl::CyclicCharacter::from_generators(4, 2, g)
                              : bzl::CyclicCharacter::from_generators(7, 3, g3);
  std::vector<bzl::CountPredicate> preds{bzl::CountPredicate::trivial()};
  if (n % int(chi.order()) == 0) preds.push_back(bzl::CountPredicate::zero_locus(bzl::BrauerClass(n, chi)));
  const double bounds[] = {B / 2, B};

  std::printf("n=%d B=%g\n%-44s %8s %14s %10s %8s\n", n, B, "predicate", "impl", "N(B)", "seconds", "speedup");
  for (const auto& pred : preds) {
    bzl::CountSeries ref;
    const double t_serial = seconds([&] { ref = bzl::serial::count_series(n, bounds, pred); });
    std::printf("%-44s %8s %14llu %10.3f %8s\n", pred.spec.c_str(), "serial",
                static_cast<unsigned long long>(ref.rows.back().count), t_serial, "1.0");
    for (int w : workers) {
      bzl::EnumerationOptions opts;
      opts.workers = w;
      bzl::CountSeries got;
      const double t = seconds([&] { got = bzl::count_series(n, bounds, pred, opts); });
      const bool same = got.rows.back().count == ref.rows.back().count && got.rows.front().count == ref.rows.front().count;
      char label[32];
      std::snprintf(label, sizeof label, "omp x%d", w);
      std::printf("%-44s %8s %14llu %10.3f %8.1f%s\n", pred.spec.c_str(), label,
                  static_cast<unsigned long long>(got.rows.back().count), t, t_serial / t, same ? "" : "  MISMATCH");
      if (!same) return 1;
    }
  }
  return 0;
}
