#include "bzl/enumerate.hpp"

#include "bzl/checkpoint.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bzl {

namespace {

std::int64_t isqrt(std::int64_t v) {
  if (v < 0) return -1;
  auto r = std::int64_t(std::sqrt(double(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// Largest |det| tabulated; beyond this the predicate is called directly.
constexpr std::int64_t kMaxTableDet = std::int64_t(1) << 26;

std::vector<std::int64_t> thresholds_of(std::span<const double> bounds) {
  std::vector<std::int64_t> t;
  for (double b : bounds) t.push_back(HeightWindow(b).bound_squared);
  for (std::size_t i = 1; i < bounds.size(); ++i) {
    if (!(bounds[i] > bounds[i - 1])) throw std::invalid_argument("bounds must be strictly increasing");
  }
  return t;
}

// Squarefree divisors e of g with their Moebius signs.
struct MobiusTable {
  std::vector<std::vector<std::pair<std::int64_t, int>>> divisors;

  explicit MobiusTable(std::int64_t max_g) : divisors(std::size_t(max_g) + 1) {
    for (std::int64_t g = 1; g <= max_g; ++g) {
      std::vector<std::int64_t> primes;
      std::int64_t m = g;
      for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
          primes.push_back(p);
          while (m % p == 0) m /= p;
        }
      }
      if (m > 1) primes.push_back(m);
      auto& out = divisors[std::size_t(g)];
      for (std::size_t mask = 0; mask < (std::size_t(1) << primes.size()); ++mask) {
        std::int64_t e = 1;
        int sign = 1;
        for (std::size_t i = 0; i < primes.size(); ++i) {
          if (mask >> i & 1) {
            e *= primes[i];
            sign = -sign;
          }
        }
        out.emplace_back(e, sign);
      }
    }
  }
};

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

struct Shared {
  int n;
  std::vector<std::int64_t> thresholds;
  std::int64_t max_h2;
  const CountPredicate* pred;
  std::vector<std::uint8_t> table;  // pred(det), det in [-table_half, table_half]
  std::int64_t table_half = -1;
  MobiusTable mobius;

  Shared(int n_, std::vector<std::int64_t> t, const CountPredicate& p)
      : n(n_), thresholds(std::move(t)), max_h2(thresholds.back()), pred(&p), mobius(isqrt(thresholds.back())) {
    if (pred->factors_through_det()) {
      std::int64_t hb = hadamard_bound(n, max_h2);
      table_half = std::min(hb, kMaxTableDet);
      table.assign(std::size_t(2 * table_half + 1), 0);
      // Single-threaded initialisation of the predicate table.
      for (std::int64_t d = -table_half; d <= table_half; ++d) {
        if (d != 0) table[std::size_t(d + table_half)] = pred->on_det(d) ? 1 : 0;
      }
    }
  }
};

class Kernel {
 public:
  explicit Kernel(const Shared& s)
      : sh_(s), N_(s.n * s.n), x_(std::size_t(N_), 0), hits_(s.thresholds.size()), base_(s.thresholds.size()) {
    if (!sh_.table.empty()) tab_ = sh_.table.data() + sh_.table_half;
  }

  UnitCounts run(const WorkUnit& unit) {
    std::fill(hits_.begin(), hits_.end(), 0);
    std::fill(base_.begin(), base_.end(), 0);
    const int n = sh_.n;
    for (std::size_t r = 0; r < unit.row_count(); ++r) {
      std::int64_t s = 0, g = 0;
      for (int j = 0; j < n; ++j) {
        std::int64_t v = unit.first_rows[r * std::size_t(n) + std::size_t(j)];
        x_[std::size_t(j)] = v;
        s += v * v;
        g = std::gcd(g, v);
      }
      recurse(n, s, g);
    }
    UnitCounts out;
    out.unit_id = unit.id;
    std::uint64_t ch = 0, cb = 0;
    for (std::size_t i = 0; i < hits_.size(); ++i) {
      ch += hits_[i];
      cb += base_[i];
      out.counts.push_back(ch);
      out.baseline.push_back(cb);
    }
    return out;
  }

 private:
  void recurse(int pos, std::int64_t s, std::int64_t g) {
    if (pos == N_ - 1) return leaf(s, g);
    const std::int64_t r = isqrt(sh_.max_h2 - s);
    for (std::int64_t v = -r; v <= r; ++v) {
      x_[std::size_t(pos)] = v;
      recurse(pos + 1, s + v * v, std::gcd(g, v));
    }
  }

  void leaf(std::int64_t s, std::int64_t g) {
    // det = C*t + R in the last entry t.
    x_[std::size_t(N_ - 1)] = 0;
    const std::int64_t R = determinant(sh_.n, x_);
    const std::int64_t C = determinant(sh_.n - 1, minor_entries());
    std::int64_t prev = -1;
    for (std::size_t i = 0; i < sh_.thresholds.size(); ++i) {
      const std::int64_t T = isqrt(sh_.thresholds[i] - s);
      if (T < 0 || T == prev) continue;
      if (prev < 0) {
        segment(i, -T, T, C, R, g);
      } else {
        segment(i, -T, -prev - 1, C, R, g);
        segment(i, prev + 1, T, C, R, g);
      }
      prev = T;
    }
  }

  std::span<const std::int64_t> minor_entries() {
    const int n = sh_.n, m = n - 1;
    minor_.resize(std::size_t(m) * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) minor_[std::size_t(i) * m + j] = x_[std::size_t(i) * n + j];
    return minor_;
  }

  void segment(std::size_t bucket, std::int64_t lo, std::int64_t hi, std::int64_t C, std::int64_t R, std::int64_t g) {
    if (lo > hi) return;
    if (!sh_.pred->factors_through_det()) return point_segment(bucket, lo, hi, g);
    std::int64_t h = 0, b = 0;
    for (auto [e, mu] : sh_.mobius.divisors[std::size_t(g)]) {
      const std::int64_t ul = ceil_div(lo, e), uh = floor_div(hi, e);
      if (ul > uh) continue;
      auto [ph, pb] = progression(C * e, R, ul, uh);
      h += mu * ph;
      b += mu * pb;
    }
    hits_[bucket] += std::uint64_t(h);
    base_[bucket] += std::uint64_t(b);
  }

  // Predicate hits and nonzero dets for det = A*u + R, u in [ul, uh].
  std::pair<std::int64_t, std::int64_t> progression(std::int64_t A, std::int64_t R, std::int64_t ul, std::int64_t uh) {
    const std::int64_t len = uh - ul + 1;
    if (A == 0) {
      if (R == 0) return {0, 0};
      return {det_pred(R) ? len : 0, len};
    }
    std::int64_t base = len;
    if (R % A == 0) {
      std::int64_t u0 = -R / A;
      if (u0 >= ul && u0 <= uh) --base;
    }
    std::int64_t hits = 0;
    const std::int64_t d_lo = A * ul + R, d_hi = A * uh + R;
    if (tab_ && std::max(std::abs(d_lo), std::abs(d_hi)) <= sh_.table_half) {
      const std::uint8_t* p = tab_ + d_lo;
      std::uint32_t acc = 0;
      for (std::int64_t k = 0; k < len; ++k, p += A) acc += *p;
      hits = acc;
    } else {
      for (std::int64_t u = ul; u <= uh; ++u) {
        std::int64_t d = A * u + R;
        if (d != 0 && det_pred(d)) ++hits;
      }
    }
    return {hits, base};
  }

  bool det_pred(std::int64_t d) const {
    if (tab_ && std::abs(d) <= sh_.table_half) return tab_[d] != 0;
    return sh_.pred->on_det(d);
  }

  void point_segment(std::size_t bucket, std::int64_t lo, std::int64_t hi, std::int64_t g) {
    for (std::int64_t t = lo; t <= hi; ++t) {
      if (std::gcd(g, t) != 1) continue;
      x_[std::size_t(N_ - 1)] = t;
      if (determinant(sh_.n, x_) == 0) continue;
      ++base_[bucket];
      auto pt = MatrixPoint::from_entries(sh_.n, x_);
      if (sh_.pred->on_point(pt)) ++hits_[bucket];
    }
  }

  const Shared& sh_;
  const int N_;
  std::vector<std::int64_t> x_;
  std::vector<std::int64_t> minor_;
  std::vector<std::uint64_t> hits_, base_;
  const std::uint8_t* tab_ = nullptr;
};

void add_into(CountSeries& series, const UnitCounts& u) {
  for (std::size_t i = 0; i < series.rows.size(); ++i) {
    series.rows[i].count += u.counts[i];
    series.rows[i].baseline += u.baseline[i];
  }
}

void canonical_rows(int n, std::int64_t max_h2, std::vector<std::int64_t>& row, int pos, std::int64_t s,
                    bool leading_zero, std::vector<std::int64_t>& out) {
  if (pos == n) {
    if (!leading_zero) out.insert(out.end(), row.begin(), row.end());
    return;
  }
  const std::int64_t r = isqrt(max_h2 - s);
  // Before the first nonzero entry only non-negative values are canonical.
  for (std::int64_t v = leading_zero ? 0 : -r; v <= r; ++v) {
    row[std::size_t(pos)] = v;
    canonical_rows(n, max_h2, row, pos + 1, s + v * v, leading_zero && v == 0, out);
  }
}

}  // namespace

HeightWindow::HeightWindow(double b) : bound(b) {
  if (!(b >= 1)) throw std::domain_error("height bound must be at least 1");
  long double b2 = (long double)b * b;
  bound_squared = std::int64_t(std::floor(b2));
}

std::int64_t height_squared(const MatrixPoint& m) { return m.height_squared(); }

CountPredicate CountPredicate::trivial() {
  return determinant("trivial", [](std::int64_t) { return true; });
}

CountPredicate CountPredicate::zero_locus(const BrauerClass& b) {
  return determinant("zero_locus" + b.describe(), [b](std::int64_t d) { return det_in_zero_locus(d, b); });
}

CountPredicate CountPredicate::determinant(std::string spec, DetPredicate pred) {
  CountPredicate p;
  p.spec = std::move(spec);
  p.on_det = std::move(pred);
  return p;
}

CountPredicate CountPredicate::point(std::string spec, PointPredicate pred) {
  CountPredicate p;
  p.spec = std::move(spec);
  p.on_point = std::move(pred);
  return p;
}

std::vector<WorkUnit> plan_work_units(int n, std::int64_t max_h2, std::size_t rows_per_unit) {
  if (n < 2) throw std::domain_error("matrix size must be at least 2");
  if (rows_per_unit == 0) throw std::invalid_argument("rows_per_unit must be positive");
  std::vector<std::int64_t> rows, row(std::size_t(n), 0);
  canonical_rows(n, max_h2, row, 0, 0, true, rows);
  std::vector<WorkUnit> units;
  const std::size_t total = rows.size() / std::size_t(n);
  for (std::size_t start = 0; start < total; start += rows_per_unit) {
    std::size_t end = std::min(total, start + rows_per_unit);
    WorkUnit u;
    u.id = units.size();
    u.n = n;
    u.first_rows.assign(rows.begin() + std::ptrdiff_t(start * std::size_t(n)),
                        rows.begin() + std::ptrdiff_t(end * std::size_t(n)));
    units.push_back(std::move(u));
  }
  return units;
}

std::size_t default_rows_per_unit(int n, std::int64_t max_h2) {
  std::vector<std::int64_t> rows, row(std::size_t(n), 0);
  canonical_rows(n, max_h2, row, 0, 0, true, rows);
  const std::size_t total = rows.size() / std::size_t(n);
  return std::max<std::size_t>(1, (total + 4095) / 4096);
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BZL_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return w;
  }
  return omp_get_max_threads();
}

void check_overflow(int n, double max_bound) {
  HeightWindow w(max_bound);
  if (hadamard_bound(n, w.bound_squared) >= (std::int64_t(1) << 62)) {
    std::ostringstream os;
    os << "determinant may exceed 63 bits for n = " << n << " at height bound B = " << max_bound;
    throw std::overflow_error(os.str());
  }
}

std::string enumeration_fingerprint(int n, std::span<const std::int64_t> thresholds, const std::string& predicate_spec,
                                    std::size_t rows_per_unit) {
  std::ostringstream os;
  os << "n=" << n << ";h2=";
  for (std::size_t i = 0; i < thresholds.size(); ++i) os << (i ? "," : "") << thresholds[i];
  os << ";pred=" << predicate_spec << ";rows_per_unit=" << rows_per_unit;
  return fnv1a_hex(os.str());
}

CountSeries count_series(int n, std::span<const double> bounds, const CountPredicate& pred,
                         const EnumerationOptions& opts) {
  if (n < 2) throw std::domain_error("matrix size must be at least 2");
  if (bounds.empty()) throw std::invalid_argument("empty bound list");
  auto thresholds = thresholds_of(bounds);
  check_overflow(n, bounds.back());

  const std::size_t rpu = opts.rows_per_unit ? opts.rows_per_unit : default_rows_per_unit(n, thresholds.back());
  const auto units = plan_work_units(n, thresholds.back(), rpu);
  const std::string fp = enumeration_fingerprint(n, thresholds, pred.spec, rpu);

  CountSeries series;
  for (double b : bounds) series.rows.push_back({b, 0, 0});

  std::vector<bool> done(units.size(), false);
  std::optional<CheckpointWriter> writer;
  if (opts.checkpoint) {
    for (const auto& [id, u] : load_checkpoint(*opts.checkpoint, fp, thresholds.size())) {
      if (id >= units.size()) throw CheckpointMismatch("checkpoint references unknown unit " + std::to_string(id));
      done[id] = true;
      add_into(series, u);
    }
    writer.emplace(*opts.checkpoint, fp);
  }
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (!done[i]) pending.push_back(i);
  }

  const Shared shared(n, thresholds, pred);
  std::exception_ptr failure;
  const int workers = resolve_workers(opts.workers);

#pragma omp parallel num_threads(workers)
  {
    Kernel kernel(shared);
#pragma omp for schedule(dynamic, 1)
    for (std::size_t k = 0; k < pending.size(); ++k) {
      bool skip;
#pragma omp critical(bzl_merge)
      skip = static_cast<bool>(failure);
      if (skip) continue;
      try {
        UnitCounts u = kernel.run(units[pending[k]]);
#pragma omp critical(bzl_merge)
        {
          try {
            add_into(series, u);
            if (writer) writer->append(u);
            if (opts.on_unit_complete) opts.on_unit_complete(u);
          } catch (...) {
            if (!failure) failure = std::current_exception();
          }
        }
      } catch (...) {
#pragma omp critical(bzl_merge)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return series;
}

CountSeries count_series(int n, std::span<const double> bounds, const BrauerClass& b, const EnumerationOptions& opts) {
  if (b.n() != n) throw std::invalid_argument("Brauer class is defined on PGL_" + std::to_string(b.n()));
  return count_series(n, bounds, CountPredicate::zero_locus(b), opts);
}

std::uint64_t enumerate_count(int n, HeightWindow window, const CountPredicate& pred, const EnumerationOptions& opts) {
  const double b[] = {window.bound};
  return count_series(n, b, pred, opts).rows.front().count;
}

}  // namespace bzl
