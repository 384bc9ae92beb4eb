#include "bzl/brauer.hpp"

#include "bzl/cyclotomic.hpp"

#include <fstream>
#include <stdexcept>

namespace bzl {

BrauerClass::BrauerClass(int n, CyclicCharacter chi) : n_(n), chi_(std::move(chi)) {
  if (n < 2) throw std::invalid_argument("BrauerClass: n must be at least 2");
  if (n % chi_.order() != 0)
    throw std::invalid_argument("BrauerClass: order " + std::to_string(chi_.order()) + " does not divide n = " +
                                std::to_string(n));
}

std::string BrauerClass::describe() const { return "(det_" + std::to_string(n_) + "," + chi_.describe() + ")"; }

namespace {

std::int64_t nonzero_det(const IntMatrix& m) {
  std::int64_t d = m.det();
  if (d == 0) throw BoundaryPointError("point on boundary hypersurface: det = 0 for " + m.to_string());
  return d;
}

}  // namespace

bool det_in_zero_locus(std::int64_t det, const BrauerClass& b) {
  if (det == 0) throw BoundaryPointError("point on boundary hypersurface: det = 0");
  return is_global_norm(Rational(det), b.character());
}

std::uint32_t det_local_character_value(std::int64_t det, const BrauerClass& b, Place v) {
  if (det == 0) throw BoundaryPointError("point on boundary hypersurface: det = 0");
  return bzl::local_character_value(Rational(det), b.character(), v);
}

bool zero_locus_indicator(const IntMatrix& m, const BrauerClass& b) { return det_in_zero_locus(nonzero_det(m), b); }

std::uint32_t local_character_value(const IntMatrix& m, const BrauerClass& b, Place v) {
  return det_local_character_value(nonzero_det(m), b, v);
}

Rational thorn_indicator(const IntMatrix& m, std::span<const BrauerClass> classes, Place v) {
  const Rational det(nonzero_det(m));
  std::vector<CyclicCharacter> gens;
  for (const auto& b : classes) gens.push_back(b.character());
  const auto group = CharacterGroup::generated_by(std::move(gens));
  const std::uint32_t D = group.exponent();
  std::vector<std::int64_t> multiplicity(D, 0);
  for (std::size_t i = 0; i < group.size(); ++i) ++multiplicity[group.local_value(i, det, v)];
  auto reduced = reduce_cyclotomic(std::move(multiplicity), D);
  for (std::size_t k = 1; k < reduced.size(); ++k) {
    if (reduced[k] != 0) throw std::logic_error("thorn_indicator: character sum is not rational");
  }
  return Rational(reduced[0], std::int64_t(group.size()));
}

BrauerClass brauer_class_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  const int n = j.at("n").get<int>();
  const auto& c = j.at("character");
  if (c.is_string()) {
    std::filesystem::path p = c.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return BrauerClass(n, load_character(p));
  }
  return BrauerClass(n, character_from_json(c));
}

BrauerClass load_brauer_class(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open Brauer class file " + path.string());
  return brauer_class_from_json(nlohmann::json::parse(in), path.parent_path());
}

}  // namespace bzl
