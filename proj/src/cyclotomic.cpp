#include "bzl/cyclotomic.hpp"

#include <map>
#include <stdexcept>

namespace bzl {

namespace {

using Poly = std::vector<std::int64_t>;

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact division by a monic polynomial; returns quotient, leaves remainder in a.
Poly divide_monic(Poly& a, const Poly& b) {
  trim(a);
  if (a.size() < b.size()) return {0};
  Poly q(a.size() - b.size() + 1, 0);
  for (std::size_t i = a.size(); i-- >= b.size();) {
    std::int64_t c = a[i];
    if (c == 0) continue;
    std::size_t shift = i - (b.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
  }
  a.resize(b.size() - 1 > 0 ? b.size() - 1 : 1);
  trim(a);
  return q;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(std::uint32_t d) {
  if (d == 0) throw std::invalid_argument("cyclotomic_polynomial: d must be positive");
  static thread_local std::map<std::uint32_t, Poly> cache;
  if (auto it = cache.find(d); it != cache.end()) return it->second;
  Poly p(d + 1, 0);  // x^d - 1
  p[0] = -1;
  p[d] = 1;
  for (std::uint32_t e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    Poly num = p;
    p = divide_monic(num, cyclotomic_polynomial(e));
  }
  trim(p);
  cache.emplace(d, p);
  return p;
}

std::vector<std::int64_t> reduce_cyclotomic(std::vector<std::int64_t> coefficients, std::uint32_t d) {
  if (coefficients.size() > d) {
    for (std::size_t k = d; k < coefficients.size(); ++k) coefficients[k % d] += coefficients[k];
    coefficients.resize(d);
  }
  auto phi = cyclotomic_polynomial(d);
  divide_monic(coefficients, phi);
  return coefficients;
}

}  // namespace bzl
