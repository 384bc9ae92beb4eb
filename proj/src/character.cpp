#include "bzl/character.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bzl {

CyclicCharacter CyclicCharacter::from_generators(std::uint64_t conductor, std::uint32_t order,
                                                 std::span<const GeneratorValue> generator_values) {
  if (conductor == 0) throw std::invalid_argument("character: conductor must be positive");
  if (order == 0) throw std::invalid_argument("character: order must be positive");
  if (conductor > (1u << 24)) throw std::invalid_argument("character: conductor too large to tabulate");

  CyclicCharacter chi;
  chi.conductor_ = conductor;
  chi.order_ = order;
  chi.generators_.assign(generator_values.begin(), generator_values.end());
  chi.table_.assign(conductor, -1);

  for (const auto& g : chi.generators_) {
    if (std::gcd(g.generator % conductor, conductor) != 1)
      throw std::invalid_argument("character: generator " + std::to_string(g.generator) +
                                  " is not a unit mod " + std::to_string(conductor));
    if (g.log_value >= order)
      throw std::invalid_argument("character: generator value out of range Z/" + std::to_string(order));
  }

  // Spread values along u -> u*g; any conflicting edge means the data is not
  // a homomorphism.
  std::deque<std::uint64_t> queue{1 % conductor};
  chi.table_[1 % conductor] = 0;
  std::size_t reached = 1;
  while (!queue.empty()) {
    std::uint64_t u = queue.front();
    queue.pop_front();
    for (const auto& g : chi.generators_) {
      std::uint64_t w = mulmod(u, g.generator % conductor, conductor);
      auto val = std::int32_t((std::uint64_t(chi.table_[u]) + g.log_value) % order);
      if (chi.table_[w] < 0) {
        chi.table_[w] = val;
        queue.push_back(w);
        ++reached;
      } else if (chi.table_[w] != val) {
        throw std::invalid_argument("character: generator values are not a homomorphism (conflict at residue " +
                                    std::to_string(w) + ")");
      }
    }
  }
  std::size_t units = 0;
  for (std::uint64_t r = 0; r < conductor; ++r) units += std::gcd(r, conductor) == 1;
  if (reached != units)
    throw std::invalid_argument("character: generators do not generate (Z/" + std::to_string(conductor) + "Z)*");

  std::uint64_t g = order;
  for (const auto& gv : chi.generators_) g = std::gcd<std::uint64_t>(g, gv.log_value);
  if (g != 1) throw std::invalid_argument("character: image does not generate Z/" + std::to_string(order));

  // Primitivity: chi must be nontrivial on the kernel of (Z/f)* -> (Z/(f/p))*
  // for every prime p | f.
  for (auto [p, e] : factorize(std::int64_t(conductor)).factors) {
    std::uint64_t m = conductor / p;
    bool trivial_on_kernel = true;
    for (std::uint64_t u = 1; u < conductor && trivial_on_kernel; u += m) {
      if (std::gcd(u, conductor) == 1 && chi.table_[u] != 0) trivial_on_kernel = false;
    }
    if (trivial_on_kernel)
      throw std::invalid_argument("character: " + std::to_string(conductor) +
                                  " is not the conductor (character factors through modulus " +
                                  std::to_string(m) + ")");
  }
  return chi;
}

CyclicCharacter CyclicCharacter::trivial() { return from_generators(1, 1, {}); }

bool CyclicCharacter::is_unit(std::int64_t residue) const {
  return table_[mod_floor(residue, conductor_)] >= 0;
}

std::uint32_t CyclicCharacter::value(std::int64_t residue) const {
  std::int32_t v = table_[mod_floor(residue, conductor_)];
  if (v < 0) throw std::domain_error("character value at a non-unit residue");
  return std::uint32_t(v);
}

std::string CyclicCharacter::describe() const {
  std::ostringstream os;
  os << "chi(f=" << conductor_ << ",d=" << order_ << ",gens=";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) os << ';';
    os << generators_[i].generator << ':' << generators_[i].log_value;
  }
  os << ')';
  return os.str();
}

ArtinClass artin_symbol(const Rational& x, std::uint64_t conductor, Place v) {
  if (x.numerator() == 0) throw std::domain_error("artin_symbol: zero argument");
  const std::uint64_t f = conductor;
  if (v.is_infinite()) {
    if (x < 0) return {(f - 1) % f, true};
    return {1 % f, false};
  }
  const std::uint64_t p = v.p();
  std::uint64_t pk = 1, m = f;
  while (m % p == 0) {
    m /= p;
    pk *= p;
  }
  std::int64_t num = x.numerator(), den = x.denominator();
  int e = 0;
  while (num % std::int64_t(p) == 0) {
    num /= std::int64_t(p);
    ++e;
  }
  while (den % std::int64_t(p) == 0) {
    den /= std::int64_t(p);
    --e;
  }
  // Component at p^k: inverse of the unit part.
  std::uint64_t c1 = pk == 1 ? 0 : mulmod(mod_floor(den, pk), invmod(mod_floor(num, pk), pk), pk);
  // Component at m: Frobenius power p^e.
  std::uint64_t c2 = 0;
  if (m > 1) {
    std::uint64_t base = e >= 0 ? p % m : invmod(p % m, m);
    c2 = powmod(base, std::uint64_t(e >= 0 ? e : -e), m);
  }
  if (m == 1) return {c1 % f, false};
  if (pk == 1) return {c2, false};
  std::uint64_t diff = (c2 + m - c1 % m) % m;
  std::uint64_t t = mulmod(diff, invmod(pk % m, m), m);
  return {(c1 + pk * t) % f, false};
}

std::uint32_t character_value(const CyclicCharacter& chi, const ArtinClass& cls) {
  return chi.value(std::int64_t(cls.residue % chi.conductor()));
}

std::uint32_t local_character_value(const Rational& x, const CyclicCharacter& chi, Place v) {
  return character_value(chi, artin_symbol(x, chi.conductor(), v));
}

bool is_local_norm(const Rational& x, const CyclicCharacter& chi, Place v) {
  return local_character_value(x, chi, v) == 0;
}

std::vector<Place> relevant_places(const Rational& x, std::uint64_t conductor) {
  std::vector<Place> places{Place::infinity()};
  for (std::uint64_t p : prime_support({std::int64_t(conductor), x.numerator(), x.denominator()}))
    places.push_back(Place::prime(p));
  return places;
}

bool is_global_norm(const Rational& x, const CyclicCharacter& chi) {
  for (Place v : relevant_places(x, chi.conductor())) {
    if (!is_local_norm(x, chi, v)) return false;
  }
  return true;
}

CyclicCharacter character_from_json(const nlohmann::json& j) {
  std::vector<GeneratorValue> gens;
  for (const auto& item : j.at("generator_values")) {
    if (!item.is_array() || item.size() != 2)
      throw std::invalid_argument("character: generator_values entries must be [generator, log_value]");
    gens.push_back({item[0].get<std::uint64_t>(), item[1].get<std::uint32_t>()});
  }
  return CyclicCharacter::from_generators(j.at("conductor").get<std::uint64_t>(), j.at("order").get<std::uint32_t>(),
                                          gens);
}

nlohmann::json character_to_json(const CyclicCharacter& chi) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : chi.generator_values()) gens.push_back({g.generator, g.log_value});
  return {{"conductor", chi.conductor()}, {"order", chi.order()}, {"generator_values", gens}};
}

CyclicCharacter load_character(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open character file " + path.string());
  return character_from_json(nlohmann::json::parse(in));
}

// ---------------------------------------------------------------------------

std::vector<std::uint32_t> CharacterGroup::signature(std::span<const std::uint32_t> exponents) const {
  std::vector<std::uint32_t> sig;
  for (std::uint64_t r = 1; r <= modulus_; ++r) {
    if (std::gcd(r % modulus_, modulus_) != 1) continue;
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < generators_.size(); ++j) {
      const auto& chi = generators_[j];
      acc += std::uint64_t(exponents[j]) * chi.value(std::int64_t(r)) * (exponent_ / chi.order());
    }
    sig.push_back(std::uint32_t(acc % exponent_));
  }
  return sig;
}

std::vector<std::uint32_t> CharacterGroup::signature_of(const CyclicCharacter& chi) const {
  std::vector<std::uint32_t> sig;
  for (std::uint64_t r = 1; r <= modulus_; ++r) {
    if (std::gcd(r % modulus_, modulus_) != 1) continue;
    sig.push_back(std::uint32_t(std::uint64_t(chi.value(std::int64_t(r))) * (exponent_ / chi.order()) % exponent_));
  }
  return sig;
}

CharacterGroup CharacterGroup::generated_by(std::vector<CyclicCharacter> generators) {
  CharacterGroup grp;
  grp.generators_ = std::move(generators);
  for (const auto& chi : grp.generators_) {
    grp.modulus_ = std::lcm(grp.modulus_, chi.conductor());
    grp.exponent_ = std::lcm(grp.exponent_, chi.order());
  }
  const std::size_t r = grp.generators_.size();
  std::map<std::vector<std::uint32_t>, std::size_t> seen;
  std::deque<std::vector<std::uint32_t>> queue;
  std::vector<std::uint32_t> zero(r, 0);
  seen.emplace(grp.signature(zero), 0);
  grp.elements_.push_back(zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < r; ++j) {
      auto next = cur;
      next[j] = (next[j] + 1) % grp.generators_[j].order();
      auto sig = grp.signature(next);
      if (seen.emplace(sig, grp.elements_.size()).second) {
        grp.elements_.push_back(next);
        queue.push_back(std::move(next));
      }
    }
  }
  grp.signatures_.reserve(grp.elements_.size());
  for (const auto& e : grp.elements_) grp.signatures_.push_back(grp.signature(e));
  return grp;
}

CharacterGroup CharacterGroup::from_elements(std::vector<CyclicCharacter> elements) {
  if (elements.empty()) throw std::invalid_argument("character group: empty element list");
  std::vector<CyclicCharacter> distinct;
  for (auto& chi : elements) {
    if (std::find(distinct.begin(), distinct.end(), chi) == distinct.end()) distinct.push_back(std::move(chi));
  }
  const std::size_t listed = distinct.size();
  auto grp = generated_by(std::move(distinct));
  if (grp.size() != listed)
    throw std::invalid_argument("character group: listed characters are not closed under multiplication (" +
                                std::to_string(listed) + " listed, generated group has " +
                                std::to_string(grp.size()) + ")");
  return grp;
}

std::uint32_t CharacterGroup::local_value(std::size_t i, const Rational& x, Place v) const {
  std::uint64_t acc = 0;
  for (std::size_t j = 0; j < generators_.size(); ++j) {
    if (elements_[i][j] == 0) continue;
    const auto& chi = generators_[j];
    acc += std::uint64_t(elements_[i][j]) * local_character_value(x, chi, v) * (exponent_ / chi.order());
  }
  return std::uint32_t(acc % exponent_);
}

std::uint32_t CharacterGroup::value(std::size_t i, std::int64_t residue) const {
  std::uint64_t acc = 0;
  for (std::size_t j = 0; j < generators_.size(); ++j) {
    if (elements_[i][j] == 0) continue;
    const auto& chi = generators_[j];
    acc += std::uint64_t(elements_[i][j]) * chi.value(residue) * (exponent_ / chi.order());
  }
  return std::uint32_t(acc % exponent_);
}

bool CharacterGroup::contains(const CyclicCharacter& chi) const {
  if (modulus_ % chi.conductor() != 0 || exponent_ % chi.order() != 0) return false;
  auto sig = signature_of(chi);
  return std::find(signatures_.begin(), signatures_.end(), sig) != signatures_.end();
}

}  // namespace bzl
