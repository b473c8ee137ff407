#pragma once

// Poisson-binomial mass functions: the law of B_1 + ... + B_n for independent
// B_i ~ Bernoulli(p_i), built exactly (rationals) or in floating point.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "polybern/rational.hpp"

namespace polybern {

/// Raised by operations whose cost is exponential in n.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Bernoulli parameters p_1..p_n, each an exact rational in [0, 1].
class ParamVector {
 public:
  ParamVector() = default;
  explicit ParamVector(std::vector<Rational> probs);

  std::size_t size() const { return probs_.size(); }
  bool empty() const { return probs_.empty(); }
  /// Zero-based.
  const Rational& operator[](std::size_t i) const { return probs_[i]; }
  std::span<const Rational> probs() const { return probs_; }
  const Rational& back() const { return probs_.back(); }

  /// True iff every entry lies in (0, 1/2].
  bool half_constrained() const;
  /// True iff some entry is exactly 0 or 1.
  bool has_degenerate() const;
  std::size_t zero_count() const;
  ParamVector without_zeros() const;
  ParamVector with_appended(const Rational& p) const;
  std::vector<double> to_doubles() const;

  friend bool operator==(const ParamVector&, const ParamVector&) = default;

 private:
  std::vector<Rational> probs_;
};

/// Mass function on {0..n}. Reads outside the support return 0, so g(-1) and
/// g(n) can be written directly in formulas.
template <typename Scalar>
class Pmf {
 public:
  Pmf() : masses_{Scalar(1)} {}
  explicit Pmf(std::vector<Scalar> masses);

  Scalar at(long k) const {
    if (k < 0 || k >= static_cast<long>(masses_.size())) return Scalar(0);
    return masses_[static_cast<std::size_t>(k)];
  }
  std::size_t size() const { return masses_.size(); }
  /// Largest index of the support, n.
  long degree() const { return static_cast<long>(masses_.size()) - 1; }
  std::span<const Scalar> masses() const { return masses_; }

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  std::vector<Scalar> masses_;
};

using ExactPmf = Pmf<Rational>;
using FloatPmf = Pmf<double>;

enum class Backend { exact, floating };

/// Runtime-tagged mass function, for callers that choose the backend late.
using MassFunction = std::variant<ExactPmf, FloatPmf>;

namespace detail {

inline bool mass_is_negative(const Rational& m) { return sgn(m) < 0; }
template <typename F>
bool mass_is_negative(F m) {
  return m < F(0) || std::isnan(m);
}

inline bool is_normalized(const std::vector<Rational>& masses) {
  Rational total(0);
  for (const auto& m : masses) total += m;
  return total == 1;
}
template <typename F>
bool is_normalized(const std::vector<F>& masses) {
  F total(0);
  for (F m : masses) total += m;
  return std::abs(total - F(1)) <= F(1e-12);
}

// One step of the left-to-right convolution with [1 - p, p].
template <typename Scalar>
std::vector<Scalar> convolve_coin(const std::vector<Scalar>& masses, const Scalar& p) {
  const Scalar q = Scalar(1) - p;
  std::vector<Scalar> out(masses.size() + 1, Scalar(0));
  for (std::size_t k = 0; k < masses.size(); ++k) {
    out[k] += masses[k] * q;
    out[k + 1] += masses[k] * p;
  }
  return out;
}

}  // namespace detail

template <typename Scalar>
Pmf<Scalar>::Pmf(std::vector<Scalar> masses) : masses_(std::move(masses)) {
  if (masses_.empty()) throw std::invalid_argument("mass function needs at least one entry");
  for (const auto& m : masses_) {
    if (detail::mass_is_negative(m)) throw std::invalid_argument("negative mass");
  }
  if (!detail::is_normalized(masses_)) {
    throw std::invalid_argument("masses do not sum to 1");
  }
}

/// Exact mass function by iterated convolution; bit-exact.
ExactPmf exact_pmf(const ParamVector& params);

/// Floating-point mass function from floating parameters in [0, 1].
template <typename F>
Pmf<F> float_pmf(std::span<const F> probs) {
  std::vector<F> masses{F(1)};
  for (F p : probs) {
    if (!(p >= F(0) && p <= F(1))) throw std::domain_error("probability outside [0, 1]");
    masses = detail::convolve_coin(masses, p);
  }
  return Pmf<F>(std::move(masses));
}

FloatPmf float_pmf(const ParamVector& params);

MassFunction pmf(const ParamVector& params, Backend backend);

/// Enumerates all 2^n outcomes. Refuses n > 20.
ExactPmf brute_force_pmf(const ParamVector& params);

constexpr std::size_t kBruteForceLimit = 20;

ParamVector drop_last(const ParamVector& params);

/// Removes the i-th parameter, 1-based.
ParamVector leave_one_out(const ParamVector& params, std::size_t i);

/// Convolution of g with one Bernoulli(p): (1 - p) g(k) + p g(k - 1).
template <typename Scalar>
Pmf<Scalar> shifted_mixture(const Pmf<Scalar>& g, const Scalar& p) {
  if (!(p >= Scalar(0) && p <= Scalar(1))) throw std::domain_error("probability outside [0, 1]");
  std::vector<Scalar> masses(g.masses().begin(), g.masses().end());
  return Pmf<Scalar>(detail::convolve_coin(masses, p));
}

FloatPmf to_float(const ExactPmf& f);
Pmf<long double> to_long_double(const ExactPmf& f);

/// Log-concavity minors of a mass function g on {0..n-1}:
///   D(k) = g(k)^2 - g(k+1) g(k-1),         k = 0..n-1
///   E(k) = g(k) g(k+1) - g(k+2) g(k-1),    k = 0..n-2
struct MinorSequence {
  std::vector<Rational> d_values;
  std::vector<Rational> e_values;

  /// Zero-extended reads; both minors vanish outside the stored range.
  Rational d(long k) const;
  Rational e(long k) const;
};

MinorSequence minors(const ExactPmf& g);

/// D_g(k) and E_g(k) at any integer k.
Rational minor_d(const ExactPmf& g, long k);
Rational minor_e(const ExactPmf& g, long k);

/// The path t -> (p_1, ..., p_{n-1}, base + t).
struct SheppOlkinPath {
  ParamVector prefix;
  Rational base;

  SheppOlkinPath(ParamVector prefix, Rational base);
  /// Splits params into prefix and moving last coordinate.
  static SheppOlkinPath ending_at(const ParamVector& params);

  ParamVector at(const Rational& t) const;
  /// Parameters at base + t in extended precision; t may be any real offset
  /// with base + t in [0, 1].
  std::vector<long double> at_float(long double t) const;
};

}  // namespace polybern
