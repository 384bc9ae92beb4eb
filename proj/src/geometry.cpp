#include "bzl/geometry.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace bzl {

ManinInvariants manin_invariants(std::span<const BoundaryDatum> data) {
  if (data.empty()) throw std::domain_error("manin_invariants: no boundary data");
  for (const auto& d : data) {
    if (d.kappa < 0) throw std::invalid_argument("boundary datum " + d.label + ": kappa must be >= 0");
    if (d.coeff <= 0) throw std::invalid_argument("boundary datum " + d.label + ": coefficient must be > 0");
    if (d.residue_order < 1) throw std::invalid_argument("boundary datum " + d.label + ": residue order must be >= 1");
  }
  ManinInvariants inv;
  inv.a = (1 + data.front().kappa) / data.front().coeff;
  for (const auto& d : data) inv.a = std::max(inv.a, (1 + d.kappa) / d.coeff);
  for (const auto& d : data) {
    if ((1 + d.kappa) / d.coeff != inv.a) continue;
    inv.face.push_back(d.label);
    inv.m += Rational(1, d.residue_order);
    inv.delta += 1 - Rational(1, d.residue_order);
  }
  inv.b = std::uint32_t(inv.face.size());
  return inv;
}

std::vector<BoundaryDatum> pgl_boundary(int n, std::uint32_t brauer_order, LineBundle bundle,
                                        std::span<const std::uint32_t> exceptional_residue_orders) {
  if (n < 2) throw std::domain_error("pgl_boundary: n must be at least 2");
  if (brauer_order == 0 || n % brauer_order != 0)
    throw std::domain_error("pgl_boundary: order " + std::to_string(brauer_order) + " does not divide n = " +
                            std::to_string(n));
  if (!exceptional_residue_orders.empty() && exceptional_residue_orders.size() != std::size_t(n - 2))
    throw std::invalid_argument("pgl_boundary: expected one residue order per exceptional divisor");

  std::vector<BoundaryDatum> out;
  for (int r = 2; r <= n; ++r) {
    const std::int64_t k = n - r + 1;
    BoundaryDatum d;
    d.label = "Y" + std::to_string(r);
    // Along the rank <= r-1 locus det vanishes to order n-r+1.
    d.kappa = Rational(k * (r - 1));
    d.coeff = Rational(k, n);
    if (r == n) {
      d.residue_order = brauer_order;
    } else {
      d.residue_order = exceptional_residue_orders.empty() ? 1 : exceptional_residue_orders[std::size_t(r - 2)];
    }
    if (bundle == LineBundle::anticanonical) d.coeff = d.kappa + 1;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<BoundaryDatum> pgl_boundary(const BrauerClass& b, LineBundle bundle) {
  return pgl_boundary(b.n(), b.order(), bundle);
}

AsymptoticPrediction predicted_asymptotic(const ManinInvariants& inv, double B) {
  if (!(B > std::exp(1.0))) throw std::domain_error("predicted_asymptotic: B must exceed e");
  AsymptoticPrediction p;
  p.a = inv.a;
  p.log_exponent = inv.m - 1;
  p.log_model = boost::rational_cast<double>(p.a) * std::log(B) +
                boost::rational_cast<double>(p.log_exponent) * std::log(std::log(B));
  p.model = std::exp(p.log_model);
  return p;
}

Rational parse_rational(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw std::invalid_argument("expected a rational as an integer or \"p/q\" string");
  const auto s = j.get<std::string>();
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    std::int64_t den = std::stoll(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in " + s);
    return Rational(std::stoll(s.substr(0, slash)), den);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed rational \"" + s + "\"");
  }
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::vector<BoundaryDatum> boundary_from_json(const nlohmann::json& j) {
  std::vector<BoundaryDatum> out;
  for (const auto& item : j) {
    BoundaryDatum d;
    d.label = item.at("label").get<std::string>();
    d.kappa = parse_rational(item.at("kappa"));
    d.coeff = parse_rational(item.at("coeff"));
    d.residue_order = item.value("residue_order", 1u);
    out.push_back(std::move(d));
  }
  return out;
}

nlohmann::json boundary_to_json(std::span<const BoundaryDatum> data) {
  auto arr = nlohmann::json::array();
  for (const auto& d : data) {
    arr.push_back({{"label", d.label},
                   {"kappa", format_rational(d.kappa)},
                   {"coeff", format_rational(d.coeff)},
                   {"residue_order", d.residue_order}});
  }
  return arr;
}

std::vector<BoundaryDatum> load_boundary_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open boundary data " + path.string());
  return boundary_from_json(nlohmann::json::parse(in));
}

nlohmann::json invariants_to_json(const ManinInvariants& inv) {
  return {{"a", format_rational(inv.a)},
          {"face", inv.face},
          {"b", inv.b},
          {"m", format_rational(inv.m)},
          {"delta", format_rational(inv.delta)},
          {"log_exponent", format_rational(inv.m - 1)}};
}

}  // namespace bzl
