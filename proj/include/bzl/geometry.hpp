#pragma once

// Manin-type invariants of a big line bundle L = sum a_alpha D_alpha on a
// wonderful compactification whose effective cone is simplicial on the
// boundary divisors, with -K_X = sum (kappa_alpha + 1) D_alpha:
//
//   a(L)  = max_alpha (1 + kappa_alpha) / a_alpha
//   A(L)  = argmax set (ties kept),  b(L) = |A(L)|
//   m(L)  = sum_{alpha in A(L)} 1 / r_alpha,  Delta = b(L) - m(L)
//
// where r_alpha is the order of the residue of the Brauer group along
// D_alpha. The predicted count is B^a(L) (log B)^(m(L) - 1).

#include "bzl/arithmetic.hpp"
#include "bzl/brauer.hpp"

#include <json.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace bzl {

struct BoundaryDatum {
  std::string label;
  Rational kappa;                   // >= 0
  Rational coeff;                   // > 0
  std::uint32_t residue_order = 1;  // >= 1
};

struct ManinInvariants {
  Rational a;
  std::vector<std::string> face;
  std::uint32_t b = 0;
  Rational delta;
  Rational m;
};

// Throws std::domain_error on empty data, std::invalid_argument on a datum
// violating its invariants.
ManinInvariants manin_invariants(std::span<const BoundaryDatum> data);

enum class LineBundle { hyperplane_pullback, anticanonical };

// Boundary Y_2, ..., Y_n of the wonderful compactification of PGL_n as an
// iterated blow-up of P^{n^2-1}. Y_n (strict transform of det = 0) has
// kappa = n - 1, coefficient 1/n in the hyperplane pullback and residue order
// |b|. The exceptional Y_r carry kappa = (n-r+1)(r-1) and coefficient
// (n-r+1)/n, which keeps them off the a(L)-face of the pullback; their
// residue orders default to 1.
// Throws std::domain_error unless n >= 2 and brauer_order | n.
std::vector<BoundaryDatum> pgl_boundary(int n, std::uint32_t brauer_order,
                                        LineBundle bundle = LineBundle::hyperplane_pullback,
                                        std::span<const std::uint32_t> exceptional_residue_orders = {});
std::vector<BoundaryDatum> pgl_boundary(const BrauerClass& b, LineBundle bundle = LineBundle::hyperplane_pullback);

struct AsymptoticPrediction {
  Rational a;
  Rational log_exponent;  // m - 1
  double log_model;       // a log B + (m-1) log log B
  double model;           // exp(log_model); inf when out of range
};

// Un-normalised model B^a (log B)^(m-1). Requires B > e.
AsymptoticPrediction predicted_asymptotic(const ManinInvariants& inv, double B);

Rational parse_rational(const nlohmann::json& j);
std::string format_rational(const Rational& r);

// JSON list of {label, kappa, coeff, residue_order}; rationals as "p/q",
// integers, or integer strings.
std::vector<BoundaryDatum> boundary_from_json(const nlohmann::json& j);
nlohmann::json boundary_to_json(std::span<const BoundaryDatum> data);
std::vector<BoundaryDatum> load_boundary_data(const std::filesystem::path& path);
nlohmann::json invariants_to_json(const ManinInvariants& inv);

}  // namespace bzl
