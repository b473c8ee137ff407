#pragma once

// Test-only reference computations. Each one takes a different route from the
// library code it checks: recursion instead of iteration, enumeration instead
// of dynamic programming, definitions instead of simplified forms.

#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <vector>

#include "polybern/bernoulli_convolution.hpp"
#include "polybern/rational.hpp"

namespace oracle {

using polybern::Rational;

/// Canonical num/den; the two-argument mpq_class constructor does not reduce.
inline Rational frac(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline polybern::ParamVector params(std::initializer_list<const char*> literals) {
  std::vector<Rational> out;
  for (const char* s : literals) out.push_back(polybern::parse_rational(s));
  return polybern::ParamVector(std::move(out));
}

inline polybern::ParamVector fair(std::size_t n) {
  return polybern::ParamVector(std::vector<Rational>(n, Rational(1, 2)));
}

inline std::vector<Rational> exact(std::initializer_list<const char*> literals) {
  std::vector<Rational> out;
  for (const char* s : literals) out.push_back(polybern::parse_rational(s));
  return out;
}

/// C(n, k) / 2^n, from Pascal's triangle.
inline std::vector<Rational> binomial_half(std::size_t n) {
  std::vector<mpz_class> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<mpz_class> next(row.size() + 1, 0);
    for (std::size_t k = 0; k < row.size(); ++k) {
      next[k] += row[k];
      next[k + 1] += row[k];
    }
    row = std::move(next);
  }
  mpz_class total = mpz_class(1) << static_cast<mp_bitcnt_t>(n);
  std::vector<Rational> out;
  for (const auto& c : row) {
    Rational r(c, total);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

/// P(S = k) by the recursion P_n(k) = (1 - p_n) P_{n-1}(k) + p_n P_{n-1}(k-1),
/// evaluated top-down per index.
inline Rational recursive_mass(const std::vector<Rational>& p, std::size_t n, long k) {
  if (k < 0 || k > static_cast<long>(n)) return Rational(0);
  if (n == 0) return Rational(k == 0 ? 1 : 0);
  const Rational& last = p[n - 1];
  return (1 - last) * recursive_mass(p, n - 1, k) + last * recursive_mass(p, n - 1, k - 1);
}

inline std::vector<Rational> recursive_pmf(const std::vector<Rational>& p) {
  std::vector<Rational> out;
  for (long k = 0; k <= static_cast<long>(p.size()); ++k) out.push_back(recursive_mass(p, p.size(), k));
  return out;
}

/// Q_{m,p}(xs) by enumerating every exponent tuple with sum m.
inline Rational q_by_enumeration(int m, const std::vector<Rational>& xs) {
  if (m < 0) return Rational(0);
  Rational total(0);
  std::vector<int> exps(xs.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
    if (i + 1 == xs.size()) {
      exps[i] = remaining;
      Rational term(1);
      for (std::size_t j = 0; j < xs.size(); ++j) term *= polybern::pow(xs[j], static_cast<unsigned>(exps[j]));
      total += term;
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      exps[i] = e;
      rec(i + 1, remaining - e);
    }
  };
  rec(0, m);
  return total;
}

/// alpha_k = g(k-1) / (2 f(k)) with f = (g + shifted g) / 2, the defining form.
inline std::vector<Rational> alphas_by_definition(const std::vector<Rational>& g) {
  auto at = [&](long k) {
    return (k < 0 || k >= static_cast<long>(g.size())) ? Rational(0) : g[static_cast<std::size_t>(k)];
  };
  std::vector<Rational> out;
  for (long k = 0; k <= static_cast<long>(g.size()); ++k) {
    Rational f = (at(k) + at(k - 1)) / 2;
    out.emplace_back(at(k - 1) / (2 * f));
  }
  return out;
}

/// Shannon entropy of the law of the Bernoulli sum, by enumeration of all
/// 2^n outcomes in long double.
inline long double entropy_by_enumeration(const std::vector<long double>& p) {
  const std::size_t n = p.size();
  std::vector<long double> mass(n + 1, 0.0L);
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    long double w = 1.0L;
    int heads = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1ULL) {
        w *= p[i];
        ++heads;
      } else {
        w *= 1.0L - p[i];
      }
    }
    mass[static_cast<std::size_t>(heads)] += w;
  }
  long double h = 0.0L;
  for (long double m : mass) {
    if (m > 0.0L) h -= m * std::log(m);
  }
  return h;
}

/// Seeded generator of small random rationals for property tests.
class RationalGen {
 public:
  explicit RationalGen(std::uint64_t seed) : rng_(seed) {}

  /// Random probability in (0, hi] with denominator at most max_den.
  Rational probability(const Rational& hi, long max_den = 1000) {
    for (;;) {
      long den = std::uniform_int_distribution<long>(2, max_den)(rng_);
      long num = std::uniform_int_distribution<long>(1, den)(rng_);
      Rational p(num, den);
      p.canonicalize();
      if (p <= hi) return p;
    }
  }

  std::vector<Rational> probabilities(std::size_t n, const Rational& hi, long max_den = 1000) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(probability(hi, max_den));
    return out;
  }

  /// Signed rational with small numerator and denominator.
  Rational any(long bound = 50) {
    long num = std::uniform_int_distribution<long>(-bound, bound)(rng_);
    long den = std::uniform_int_distribution<long>(1, bound)(rng_);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  std::size_t size(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// |a - b| <= tol * max(1, |b|).
inline bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

}  // namespace oracle
