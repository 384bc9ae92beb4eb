#pragma once

#include <cstdint>
#include <vector>

namespace bzl {

// Coefficients of the D-th cyclotomic polynomial, lowest degree first.
std::vector<std::int64_t> cyclotomic_polynomial(std::uint32_t d);

// Element sum_k c_k zeta_D^k of Z[zeta_D], given by the multiplicities c_k
// (k in Z/D), reduced to its unique representative of degree < phi(D).
std::vector<std::int64_t> reduce_cyclotomic(std::vector<std::int64_t> coefficients, std::uint32_t d);

}  // namespace bzl
