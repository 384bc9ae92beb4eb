#include "bzl/matrix.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bzl {

namespace {

std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("determinant exceeds 63 bits");
  return std::int64_t(v);
}

}  // namespace

std::int64_t determinant(int n, std::span<const std::int64_t> a) {
  using i128 = __int128;
  switch (n) {
    case 1:
      return a[0];
    case 2:
      return checked(i128(a[0]) * a[3] - i128(a[1]) * a[2]);
    case 3: {
      i128 m0 = i128(a[4]) * a[8] - i128(a[5]) * a[7];
      i128 m1 = i128(a[3]) * a[8] - i128(a[5]) * a[6];
      i128 m2 = i128(a[3]) * a[7] - i128(a[4]) * a[6];
      return checked(a[0] * m0 - a[1] * m1 + a[2] * m2);
    }
    default:
      break;
  }
  // Bareiss: every intermediate is a minor of the input, so it is bounded by
  // the final Hadamard bound and fits in 128 bits whenever the inputs do.
  std::vector<i128> m(a.begin(), a.end());
  auto at = [&](int i, int j) -> i128& { return m[std::size_t(i) * n + j]; };
  i128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i) {
        if (at(i, k) != 0) {
          swap = i;
          break;
        }
      }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
    }
    prev = at(k, k);
  }
  return checked(sign * at(n - 1, n - 1));
}

std::int64_t hadamard_bound(int n, std::int64_t h2) {
  long double b = std::pow((long double)h2 / n, (long double)n / 2);
  if (b >= 9.2e18L) return INT64_MAX;
  return std::int64_t(std::floor(b)) + 1;
}

IntMatrix::IntMatrix(int n, std::vector<std::int64_t> entries) : n_(n), entries_(std::move(entries)) {
  if (n < 1 || entries_.size() != std::size_t(n) * n)
    throw std::invalid_argument("IntMatrix: expected n*n entries");
}

IntMatrix IntMatrix::identity(int n) {
  std::vector<std::int64_t> e(std::size_t(n) * n, 0);
  for (int i = 0; i < n; ++i) e[std::size_t(i) * n + i] = 1;
  return {n, std::move(e)};
}

std::int64_t IntMatrix::det() const { return determinant(n_, entries_); }

std::int64_t IntMatrix::height_squared() const {
  std::int64_t s = 0;
  for (std::int64_t x : entries_) s += x * x;
  return s;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (n_ != o.n_) throw std::invalid_argument("IntMatrix: size mismatch");
  std::vector<std::int64_t> r(entries_.size(), 0);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k)
      for (int j = 0; j < n_; ++j) r[std::size_t(i) * n_ + j] += (*this)(i, k) * o(k, j);
  return {n_, std::move(r)};
}

IntMatrix IntMatrix::operator-() const {
  auto e = entries_;
  for (auto& x : e) x = -x;
  return {n_, std::move(e)};
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < n_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < n_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

MatrixPoint MatrixPoint::from_entries(int n, std::vector<std::int64_t> entries) {
  std::int64_t g = 0;
  for (std::int64_t x : entries) g = std::gcd(g, x);
  if (g == 0) throw std::invalid_argument("MatrixPoint: zero matrix is not a projective point");
  std::int64_t first = 0;
  for (std::int64_t x : entries) {
    if (x != 0) {
      first = x;
      break;
    }
  }
  if (first < 0) g = -g;
  for (auto& x : entries) x /= g;
  return MatrixPoint(IntMatrix(n, std::move(entries)));
}

MatrixPoint MatrixPoint::from_matrix(const IntMatrix& m) {
  return from_entries(m.size(), {m.entries().begin(), m.entries().end()});
}

}  // namespace bzl
