#pragma once

// Shannon, Renyi and Tsallis entropies of Poisson-binomial laws and their
// derivatives along the path that moves the last Bernoulli parameter.
// Natural logarithms throughout.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "polybern/bernoulli_convolution.hpp"
#include "polybern/mixing.hpp"

namespace polybern {

enum class EntropyFamily { shannon, renyi, tsallis };

/// An entropy family together with its order q. Shannon is the q = 1 member;
/// Renyi/Tsallis with q = 1 evaluate as Shannon.
class EntropyOrder {
 public:
  static EntropyOrder shannon() { return EntropyOrder(EntropyFamily::shannon, 1.0); }
  static EntropyOrder renyi(double q) { return EntropyOrder(EntropyFamily::renyi, q); }
  static EntropyOrder tsallis(double q) { return EntropyOrder(EntropyFamily::tsallis, q); }

  EntropyFamily family() const { return family_; }
  double q() const { return q_; }
  /// True for Shannon and for q == 1 in the other families.
  bool is_shannon() const { return family_ == EntropyFamily::shannon || q_ == 1.0; }

 private:
  EntropyOrder(EntropyFamily family, double q);
  EntropyFamily family_;
  double q_;
};

EntropyFamily parse_family(const std::string& name);
std::string to_string(EntropyFamily family);

enum class DerivativeMethod { direct, mixing, finite_difference };

DerivativeMethod parse_method(const std::string& name);
std::string to_string(DerivativeMethod method);

struct DerivativeRecord {
  double first = 0;
  double second = 0;
  DerivativeMethod method = DerivativeMethod::direct;
  /// True iff every bound that applies to this family holds: the second
  /// derivative is <= 0 (Shannon, Tsallis) and, for Shannon at p_n = 1/2,
  /// |first| <= 2(1 - log 2) + 1e-12. Renyi carries no bound.
  bool bound_check = false;
};

/// 2(1 - log 2): the largest possible |dH/dt| when p_n = 1/2.
inline const double kShannonDerivativeBound = 2.0 * (1.0 - std::numbers::ln2);

namespace detail {

template <typename F>
void require_nonnegative(const Pmf<F>& f) {
  for (F m : f.masses()) {
    if (m < F(0)) throw std::domain_error("negative mass");
  }
}

}  // namespace detail

/// -sum f log f with 0 log 0 = 0.
template <typename F>
F shannon_entropy(const Pmf<F>& f) {
  detail::require_nonnegative(f);
  F total(0);
  for (F m : f.masses()) {
    if (m > F(0)) total -= m * std::log(m);
  }
  return total;
}

namespace detail {

template <typename F>
F power_sum(const Pmf<F>& f, double q) {
  F total(0);
  for (F m : f.masses()) total += std::pow(m, static_cast<F>(q));  // pow(0, 0) = 1
  return total;
}

inline void require_order(double q) {
  if (!(q >= 0.0)) throw std::domain_error("entropy order q must be >= 0");
}

}  // namespace detail

/// log(sum f^q) / (1 - q); q = 1 gives Shannon, q = 0 gives log(n + 1).
template <typename F>
F renyi_entropy(const Pmf<F>& f, double q) {
  detail::require_order(q);
  if (q == 1.0) return shannon_entropy(f);
  detail::require_nonnegative(f);
  return std::log(detail::power_sum(f, q)) / static_cast<F>(1.0 - q);
}

/// (1 - sum f^q) / (q - 1); q = 1 gives Shannon, q = 0 gives n.
template <typename F>
F tsallis_entropy(const Pmf<F>& f, double q) {
  detail::require_order(q);
  if (q == 1.0) return shannon_entropy(f);
  detail::require_nonnegative(f);
  return (F(1) - detail::power_sum(f, q)) / static_cast<F>(q - 1.0);
}

template <typename F>
F entropy(const Pmf<F>& f, const EntropyOrder& order) {
  switch (order.family()) {
    case EntropyFamily::shannon:
      return shannon_entropy(f);
    case EntropyFamily::renyi:
      return renyi_entropy(f, order.q());
    case EntropyFamily::tsallis:
      return tsallis_entropy(f, order.q());
  }
  throw std::logic_error("unknown entropy family");
}

double entropy(const ExactPmf& f, const EntropyOrder& order);

/// psi(a) = a log a - (1 - a) log(1 - a) - (2 - 2 log 2)(a - 1/2), 0 log 0 = 0.
double psi(double alpha);
double psi(const Rational& alpha);

struct SeriesValue {
  double value = 0;
  /// Certified bound on the omitted tail.
  double tail_bound = 0;
};

/// Partial sum -sum_{r=1}^{R} (2a - 1)^{2r+1} / (2r (2r + 1)) of psi's odd
/// power series.
SeriesValue psi_series(double alpha, unsigned terms);

/// psi_q(x) = -[(1 - x)^q - (1 + x)^q + 2 q x] / (q - 1), |x| <= 1, q > 0.
double psi_q(double x, double q);

/// Coefficient of x^{2r+1} in the expansion of psi_q:
/// 2 q prod_{i=2}^{2r} (q - i) / (2r + 1)!.
double psi_q_series_coefficient(double q, unsigned r);

/// dH/dt = sum_k (g(k) - g(k-1)) log f(k).
double shannon_derivative_direct(const ExactPmf& g, const ExactPmf& f);
/// dH/dt = 2 sum_k f(k) psi(alpha_k); f must be g mixed with a fair coin.
double shannon_derivative_mixing(const ExactPmf& f, const MixingProfile& profile);
/// d2H/dt2 = -sum_k (g(k) - g(k-1))^2 / f(k) <= 0.
double shannon_second_derivative(const ExactPmf& g, const ExactPmf& f);

/// dH_T/dt = -q/(q-1) sum_k (g(k-1) - g(k)) f(k)^{q-1}.
double tsallis_derivative(const ExactPmf& g, const ExactPmf& f, double q);
/// d2H_T/dt2 = -q sum_k (g(k-1) - g(k))^2 f(k)^{q-2}.
double tsallis_second_derivative(const ExactPmf& g, const ExactPmf& f, double q);
/// dH_T/dt = sum_k f(k)^q psi_q(2 beta_k), at p_n = 1/2.
double tsallis_derivative_mixing(const ExactPmf& f, const MixingProfile& profile, double q);

struct RenyiDerivatives {
  double first = 0;
  double second = 0;
};

/// Renyi derivatives via H_R' = H_T' / S and H_R'' = H_T'' / S + (q-1) H_T'^2 / S^2,
/// S = sum f^q.
RenyiDerivatives renyi_derivatives(const ExactPmf& g, const ExactPmf& f, double q);

struct CounterexampleTerms {
  double exact = 0;
  double leading = 0;
};

/// Tsallis derivative for p = (1/2 - eps, 1/2) and its first-order term:
///   exact   = -(q 2^{1-q} / (q-1)) ((1/2 - eps)^q - (1/2 + eps)^q + 2 eps)
///   leading = -(q 2^{2-2q} / (q-1)) (2^q - 2q) eps
CounterexampleTerms counterexample_leading_term(double q, double eps);

struct FiniteDifferenceOptions {
  double step = 1e-5;
};

/// Central differences of the entropy along the path, evaluated in extended
/// precision. Throws if base +- step leaves [0, 1].
DerivativeRecord finite_difference(const SheppOlkinPath& path, const EntropyOrder& order,
                                   FiniteDifferenceOptions options = {});

/// Derivative of the chosen entropy in the last parameter of params.
/// The mixing method requires the last parameter to equal 1/2.
DerivativeRecord derivative_record(const ParamVector& params, const EntropyOrder& order,
                                   DerivativeMethod method,
                                   FiniteDifferenceOptions options = {});

/// Third central moment of B_1 + ... + B_n: sum_i p_i (1 - p_i)(1 - 2 p_i).
Rational third_central_moment(const ParamVector& params);

}  // namespace polybern
