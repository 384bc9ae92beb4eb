#include "bzl/arithmetic.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace bzl {

namespace {

using u128 = unsigned __int128;

std::uint64_t abs_u64(std::int64_t n) {
  return n < 0 ? std::uint64_t(0) - std::uint64_t(n) : std::uint64_t(n);
}

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

}  // namespace

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return std::uint64_t(u128(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) throw std::domain_error("invmod: argument not invertible");
  if (t < 0) t += m;
  return std::uint64_t(t);
}

std::uint64_t mod_floor(std::int64_t a, std::uint64_t m) {
  if (a >= 0) return std::uint64_t(a) % m;
  std::uint64_t r = abs_u64(a) % m;
  return r == 0 ? 0 : m - r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // Deterministic for all 64-bit n.
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::int64_t Factorization::value() const {
  std::int64_t v = sign;
  for (auto [p, e] : factors) {
    for (int i = 0; i < e; ++i) {
      if (p > std::uint64_t(INT64_MAX) || __builtin_mul_overflow(v, std::int64_t(p), &v))
        throw std::overflow_error("Factorization::value overflows int64");
    }
  }
  return v;
}

Factorizer::Factorizer(std::uint32_t table_bound) : bound_(std::max<std::uint32_t>(table_bound, 2)) {
  spf_.assign(bound_, 0);
  for (std::uint32_t i = 2; i < bound_; ++i) {
    if (spf_[i] != 0) continue;
    for (std::uint64_t j = i; j < bound_; j += i) {
      if (spf_[j] == 0) spf_[j] = i;
    }
  }
}

void Factorizer::factor_into(std::uint64_t n, std::map<std::uint64_t, int>& out) const {
  if (n == 1) return;
  if (n < bound_) {
    while (n > 1) {
      std::uint32_t p = spf_[n];
      ++out[p];
      n /= p;
    }
    return;
  }
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n == 1) return;
  if (n < bound_) return factor_into(n, out);
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  std::uint64_t d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

Factorization Factorizer::factorize(std::int64_t n) const {
  if (n == 0) throw std::domain_error("factorize: zero has no factorization");
  Factorization f;
  f.sign = n < 0 ? -1 : 1;
  factor_into(abs_u64(n), f.factors);
  return f;
}

const Factorizer& default_factorizer() {
  static const Factorizer instance;
  return instance;
}

Factorization factorize(std::int64_t n) { return default_factorizer().factorize(n); }

bool is_sum_of_two_squares(std::int64_t n) {
  if (n == 0) throw std::domain_error("is_sum_of_two_squares: zero argument");
  if (n < 0) return false;
  for (auto [p, e] : factorize(n).factors) {
    if (p % 4 == 3 && e % 2 == 1) return false;
  }
  return true;
}

int legendre(std::int64_t a, std::uint64_t p) {
  std::uint64_t r = mod_floor(a, p);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int valuation(std::int64_t n, std::uint64_t p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  std::uint64_t m = abs_u64(n);
  int e = 0;
  while (m % p == 0) {
    m /= p;
    ++e;
  }
  return e;
}

int valuation(const Rational& x, std::uint64_t p) {
  return valuation(x.numerator(), p) - valuation(x.denominator(), p);
}

Place Place::prime(std::uint64_t p) {
  if (!is_prime(p)) throw std::domain_error("Place::prime: " + std::to_string(p) + " is not prime");
  return Place{p};
}

std::string Place::to_string() const { return is_infinite() ? "inf" : std::to_string(p_); }

namespace {

// x = p^v * num/den with num, den prime to p.
struct LocalSplit {
  int v;
  std::int64_t num;
  std::int64_t den;
};

LocalSplit split_at(const Rational& x, std::uint64_t p) {
  LocalSplit s{0, x.numerator(), x.denominator()};
  auto pi = std::int64_t(p);
  while (s.num % pi == 0) {
    s.num /= pi;
    ++s.v;
  }
  while (s.den % pi == 0) {
    s.den /= pi;
    --s.v;
  }
  return s;
}

int sign_of_parity(long long k) { return (k & 1) ? -1 : 1; }

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, Place v) {
  if (a.numerator() == 0 || b.numerator() == 0) throw std::domain_error("hilbert_symbol: zero argument");
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
  const std::uint64_t p = v.p();
  LocalSplit sa = split_at(a, p), sb = split_at(b, p);
  if (p != 2) {
    // (a,b)_p = (-1)^{ab eps(p)} (u/p)^beta (w/p)^alpha
    long long eps = (long long)((p - 1) / 2);
    int r = sign_of_parity((long long)sa.v * sb.v * eps);
    // Legendre symbol of num/den equals that of num*den.
    int lu = legendre(sa.num, p) * legendre(sa.den, p);
    int lw = legendre(sb.num, p) * legendre(sb.den, p);
    if (sb.v & 1) r *= lu;
    if (sa.v & 1) r *= lw;
    return r;
  }
  // Odd units mod 8: den is its own inverse mod 8.
  std::uint64_t u = mod_floor(sa.num, 8) * mod_floor(sa.den, 8) % 8;
  std::uint64_t w = mod_floor(sb.num, 8) * mod_floor(sb.den, 8) % 8;
  auto eps = [](std::uint64_t x) { return (long long)(((x - 1) / 2) & 1); };
  auto omega = [](std::uint64_t x) { return (long long)(((x * x - 1) / 8) & 1); };
  long long e = eps(u) * eps(w) + (long long)sa.v * omega(w) + (long long)sb.v * omega(u);
  return sign_of_parity(e);
}

std::vector<std::uint64_t> prime_support(std::initializer_list<std::int64_t> values) {
  std::set<std::uint64_t> primes;
  for (std::int64_t x : values) {
    for (auto [p, e] : factorize(x).factors) primes.insert(p);
  }
  return {primes.begin(), primes.end()};
}

}  // namespace bzl
