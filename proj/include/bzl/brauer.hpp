#pragma once

// Algebraic Brauer classes b = (det_n, chi) on PGL_n and their zero loci.
// A point lies in the zero locus iff det is a norm from the cyclic field cut
// out by chi. Classes are normalised so the identity is in the zero locus.

#include "bzl/character.hpp"
#include "bzl/matrix.hpp"

#include <filesystem>
#include <span>

namespace bzl {

class BrauerClass {
 public:
  // Throws std::invalid_argument unless n >= 2 and order(chi) | n.
  BrauerClass(int n, CyclicCharacter chi);

  int n() const { return n_; }
  const CyclicCharacter& character() const { return chi_; }
  std::uint32_t order() const { return chi_.order(); }
  std::string describe() const;

 private:
  int n_;
  CyclicCharacter chi_;
};

// Errors raised when a matrix lies on the determinant hypersurface.
class BoundaryPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Determinant-level forms. All throw BoundaryPointError on det == 0.
bool det_in_zero_locus(std::int64_t det, const BrauerClass& b);
std::uint32_t det_local_character_value(std::int64_t det, const BrauerClass& b, Place v);

bool zero_locus_indicator(const IntMatrix& m, const BrauerClass& b);
inline bool zero_locus_indicator(const MatrixPoint& m, const BrauerClass& b) {
  return zero_locus_indicator(m.matrix(), b);
}

// log rho_v(M) = chi_v(det M) in Z/order(b).
std::uint32_t local_character_value(const IntMatrix& m, const BrauerClass& b, Place v);
inline std::uint32_t local_character_value(const MatrixPoint& m, const BrauerClass& b, Place v) {
  return local_character_value(m.matrix(), b, v);
}

// (1/|R|) sum_{rho in R} rho_v(M) over the group R generated by `classes`,
// summed exactly in Z[zeta] and reduced. Always 0 or 1.
Rational thorn_indicator(const IntMatrix& m, std::span<const BrauerClass> classes, Place v);
inline Rational thorn_indicator(const MatrixPoint& m, std::span<const BrauerClass> classes, Place v) {
  return thorn_indicator(m.matrix(), classes, v);
}

// {n, character: <path relative to the file> | {inline character}}
BrauerClass load_brauer_class(const std::filesystem::path& path);
BrauerClass brauer_class_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

}  // namespace bzl
