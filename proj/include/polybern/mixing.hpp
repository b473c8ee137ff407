#pragma once

// Mixing coefficients and the quantities built from them.
//
// For g the law of B_1 + ... + B_{n-1} and f = g convolved with a fair coin,
// the coefficients alpha_k = g(k-1) / (g(k-1) + g(k)) express g as a mixture
// of neighbouring values of f. Everything here is exact.

#include <span>
#include <vector>

#include "polybern/bernoulli_convolution.hpp"
#include "polybern/rational.hpp"

namespace polybern {

/// alpha_0..alpha_n and beta_k = alpha_k - 1/2, where n = g.size().
class MixingProfile {
 public:
  long degree() const { return static_cast<long>(alphas_.size()) - 1; }
  std::span<const Rational> alphas() const { return alphas_; }
  std::span<const Rational> betas() const { return betas_; }
  /// Range-checked on 0..n.
  const Rational& alpha(long k) const;
  const Rational& beta(long k) const;

  friend MixingProfile mixing_profile(const ExactPmf& g);
  friend bool operator==(const MixingProfile&, const MixingProfile&) = default;

 private:
  explicit MixingProfile(std::vector<Rational> alphas);
  std::vector<Rational> alphas_;
  std::vector<Rational> betas_;
};

/// Requires g > 0 on its whole support; a zero would leave some alpha_k
/// undefined (0/0) or break strict monotonicity.
MixingProfile mixing_profile(const ExactPmf& g);

/// alpha_{k+1} - alpha_k for k = 0..n-1.
std::vector<Rational> alpha_spacings(const MixingProfile& profile);

/// A_p(k) = alpha_k alpha_{k-1} ... alpha_{k-p+1}; A_0 = 1 and A_p(k) = 0 once
/// the product would reach alpha_0 (p >= k + 1). Requires 0 <= k <= n.
Rational a_product(const MixingProfile& profile, unsigned p, long k);

/// B_p(k) = prod_{j<p} (beta_{k+1} - beta_{k-j}); B_0 = 1. For p >= 1 only
/// defined when p <= k + 1 and k + 1 <= n; anything else throws.
Rational b_product(const MixingProfile& profile, unsigned p, long k);

/// Complete homogeneous symmetric polynomial of degree m in xs:
/// the sum of all monomials x_1^{i_1}...x_p^{i_p} with i_1 + ... + i_p = m.
/// Q_{0} = 1 and Q_{-1} = 0. Evaluated by the O(m p) prefix recurrence.
Rational q_poly(int m, std::span<const Rational> xs);

/// sum_k f(k) beta_k^{2r+1}.
Rational odd_central_moment(const ExactPmf& f, const MixingProfile& profile, unsigned r);

struct SChainReport {
  unsigned r = 0;
  /// S_{r,1} .. S_{r,r+1}.
  std::vector<Rational> s_values;
  /// M_r = sum_k f(k) beta_k^{2r+1}.
  Rational moment;
  bool chain_monotone = false;
  bool equality_attained = false;
  /// min_p (S_{r,p+1} - S_{r,p}); negative iff the chain is not monotone.
  Rational min_gap;
};

/// The S_{r,p} sequence whose monotonicity in p bounds 4 M_r = S_{r,1} <= 0.
/// f must equal shifted_mixture(g, 1/2) and profile must come from g.
SChainReport s_chain(const ExactPmf& g, const ExactPmf& f, const MixingProfile& profile,
                     unsigned r);

/// Finite table v(first), ..., v(first + size - 1).
struct IndexedTable {
  long first = 0;
  std::vector<Rational> values;

  long last() const { return first + static_cast<long>(values.size()) - 1; }
  bool contains(long k) const { return k >= first && k <= last(); }
  /// Throws std::out_of_range outside the table.
  const Rational& at(long k) const;
};

/// Left difference (nabla v)(k) = v(k) - v(k-1) on first+1..last.
IndexedTable nabla(const IndexedTable& v);

/// Pointwise product on the common index range.
IndexedTable product(const IndexedTable& v, const IndexedTable& w);

/// LHS - RHS of the summation-by-parts identity
///   sum_{k=p}^{n-1} g(k) A_p(k) v(k) (beta_{k+1} + beta_{k-p})
///     = sum_{k=p+1}^{n-1} g(k) A_{p+1}(k) (nabla v)(k).
/// v must be tabulated exactly on p..n-1.
Rational ipp_residual(const ExactPmf& g, const MixingProfile& profile, unsigned p,
                      const IndexedTable& v);

}  // namespace polybern
