#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bzl {

// Square integer matrix, row-major. No primitivity or sign convention.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int n, std::vector<std::int64_t> entries);
  static IntMatrix identity(int n);

  int size() const { return n_; }
  std::int64_t operator()(int i, int j) const { return entries_[std::size_t(i) * n_ + j]; }
  std::span<const std::int64_t> entries() const { return entries_; }

  // Cofactor expansion for n <= 3, fraction-free elimination above.
  // Throws std::overflow_error if the result leaves int64.
  std::int64_t det() const;
  std::int64_t height_squared() const;

  IntMatrix operator*(const IntMatrix& other) const;
  IntMatrix operator-() const;
  bool operator==(const IntMatrix&) const = default;

  std::string to_string() const;

 private:
  int n_ = 0;
  std::vector<std::int64_t> entries_;
};

// Canonical primitive representative of a point of P^{n^2-1}(Q): entries
// have gcd 1 and the first nonzero entry is positive.
class MatrixPoint {
 public:
  // Divides out the content and fixes the sign. Throws on the zero matrix.
  static MatrixPoint from_entries(int n, std::vector<std::int64_t> entries);
  static MatrixPoint from_matrix(const IntMatrix& m);

  const IntMatrix& matrix() const { return m_; }
  int size() const { return m_.size(); }
  std::span<const std::int64_t> entries() const { return m_.entries(); }
  std::int64_t det() const { return m_.det(); }
  std::int64_t height_squared() const { return m_.height_squared(); }

  bool operator==(const MatrixPoint&) const = default;

 private:
  explicit MatrixPoint(IntMatrix m) : m_(std::move(m)) {}
  IntMatrix m_;
};

// Determinant of an n x n row-major matrix given as a flat span.
std::int64_t determinant(int n, std::span<const std::int64_t> entries);

// Hadamard bound on |det| over all integer n x n matrices with
// sum of squared entries <= h2: (h2/n)^(n/2), rounded up. Saturates at
// INT64_MAX.
std::int64_t hadamard_bound(int n, std::int64_t h2);

}  // namespace bzl
