#pragma once

// Cyclic extensions of Q, represented by primitive Dirichlet characters in
// logarithmic form: chi(u) = exp(2 pi i * value(u) / order). Local Artin
// symbols and the norm predicates are computed from these exactly.

#include "bzl/arithmetic.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

namespace bzl {

struct GeneratorValue {
  std::uint64_t generator;
  std::uint32_t log_value;
};

class CyclicCharacter {
 public:
  // Expands the values on a generating set of (Z/fZ)* to the full table and
  // validates it: homomorphism, exact order, true conductor.
  // Throws std::invalid_argument describing the first violation.
  static CyclicCharacter from_generators(std::uint64_t conductor, std::uint32_t order,
                                         std::span<const GeneratorValue> generator_values);
  static CyclicCharacter trivial();

  std::uint64_t conductor() const { return conductor_; }
  std::uint32_t order() const { return order_; }

  // Log value in Z/order of a residue coprime to the conductor.
  std::uint32_t value(std::int64_t residue) const;
  bool is_unit(std::int64_t residue) const;
  bool is_even() const { return value(-1) == 0; }

  const std::vector<GeneratorValue>& generator_values() const { return generators_; }

  // Stable textual description, used in fingerprints.
  std::string describe() const;

  bool operator==(const CyclicCharacter& other) const {
    return conductor_ == other.conductor_ && order_ == other.order_ && table_ == other.table_;
  }

 private:
  std::uint64_t conductor_ = 1;
  std::uint32_t order_ = 1;
  std::vector<std::int32_t> table_;  // -1 on non-units
  std::vector<GeneratorValue> generators_;
};

// Local Artin symbol for Q(zeta_f)/Q, as a class in (Z/fZ)*. The archimedean
// symbol of a negative number is complex conjugation, carried as residue -1
// mod f together with the marker.
struct ArtinClass {
  std::uint64_t residue = 0;
  bool conjugation = false;
};

ArtinClass artin_symbol(const Rational& x, std::uint64_t conductor, Place v);

// chi evaluated on a local Artin class, in Z/order.
std::uint32_t character_value(const CyclicCharacter& chi, const ArtinClass& cls);

// Log value of the local character chi_v at x.
std::uint32_t local_character_value(const Rational& x, const CyclicCharacter& chi, Place v);

bool is_local_norm(const Rational& x, const CyclicCharacter& chi, Place v);

// Places where x can fail to be a local norm: infinity and the primes
// dividing f * num(x) * den(x).
std::vector<Place> relevant_places(const Rational& x, std::uint64_t conductor);

// Hasse norm theorem (valid because the extension is cyclic).
bool is_global_norm(const Rational& x, const CyclicCharacter& chi);

// {conductor, order, generator_values: [[g, v], ...]}
CyclicCharacter character_from_json(const nlohmann::json& j);
nlohmann::json character_to_json(const CyclicCharacter& chi);
CyclicCharacter load_character(const std::filesystem::path& path);

// Finite group generated by a list of characters, possibly of different
// conductors. Elements are exponent vectors over the generators, deduplicated
// by their values on (Z/NZ)* with N the lcm of the conductors.
class CharacterGroup {
 public:
  static CharacterGroup generated_by(std::vector<CyclicCharacter> generators);
  // The listed characters must already form a group; throws otherwise.
  static CharacterGroup from_elements(std::vector<CyclicCharacter> elements);

  std::size_t size() const { return elements_.size(); }
  // Common order D: every value lives in Z/D.
  std::uint32_t exponent() const { return exponent_; }
  std::uint64_t modulus() const { return modulus_; }
  const std::vector<CyclicCharacter>& generators() const { return generators_; }
  const std::vector<std::vector<std::uint32_t>>& elements() const { return elements_; }

  // Log value in Z/exponent() of element i at local place v.
  std::uint32_t local_value(std::size_t i, const Rational& x, Place v) const;
  // Log value in Z/exponent() of element i at an integer prime to modulus().
  std::uint32_t value(std::size_t i, std::int64_t residue) const;

  bool contains(const CyclicCharacter& chi) const;

 private:
  std::vector<std::uint32_t> signature(std::span<const std::uint32_t> exponents) const;
  std::vector<std::uint32_t> signature_of(const CyclicCharacter& chi) const;

  std::vector<CyclicCharacter> generators_;
  std::vector<std::vector<std::uint32_t>> elements_;
  std::vector<std::vector<std::uint32_t>> signatures_;
  std::uint64_t modulus_ = 1;
  std::uint32_t exponent_ = 1;
};

}  // namespace bzl
