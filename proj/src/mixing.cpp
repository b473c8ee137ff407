#include "polybern/mixing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace polybern {

namespace {

const Rational kHalf(1, 2);

void check_index(long k, long n, const char* what) {
  if (k < 0 || k > n) {
    throw std::out_of_range(std::string(what) + ": index " + std::to_string(k) +
                            " outside 0.." + std::to_string(n));
  }
}

}  // namespace

MixingProfile::MixingProfile(std::vector<Rational> alphas) : alphas_(std::move(alphas)) {
  betas_.reserve(alphas_.size());
  for (const auto& a : alphas_) betas_.emplace_back(a - kHalf);
}

const Rational& MixingProfile::alpha(long k) const {
  check_index(k, degree(), "alpha");
  return alphas_[static_cast<std::size_t>(k)];
}

const Rational& MixingProfile::beta(long k) const {
  check_index(k, degree(), "beta");
  return betas_[static_cast<std::size_t>(k)];
}

MixingProfile mixing_profile(const ExactPmf& g) {
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (sgn(g.masses()[k]) == 0) {
      throw std::invalid_argument("mixing coefficients need g > 0 on its support; g(" +
                                  std::to_string(k) + ") = 0");
    }
  }
  const long n = static_cast<long>(g.size());
  std::vector<Rational> alphas;
  alphas.reserve(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    alphas.emplace_back(g.at(k - 1) / (g.at(k - 1) + g.at(k)));
  }
  return MixingProfile(std::move(alphas));
}

std::vector<Rational> alpha_spacings(const MixingProfile& profile) {
  std::vector<Rational> out;
  auto alphas = profile.alphas();
  for (std::size_t k = 0; k + 1 < alphas.size(); ++k) out.emplace_back(alphas[k + 1] - alphas[k]);
  return out;
}

Rational a_product(const MixingProfile& profile, unsigned p, long k) {
  check_index(k, profile.degree(), "A_p");
  if (p == 0) return Rational(1);
  if (static_cast<long>(p) >= k + 1) return Rational(0);
  Rational result(1);
  for (long j = 0; j < static_cast<long>(p); ++j) result *= profile.alpha(k - j);
  return result;
}

Rational b_product(const MixingProfile& profile, unsigned p, long k) {
  if (p == 0) return Rational(1);
  if (static_cast<long>(p) > k + 1 || k + 1 > profile.degree() || k < 0) {
    throw std::domain_error("B_" + std::to_string(p) + "(" + std::to_string(k) +
                            ") is undefined (needs p <= k+1 <= n = " +
                            std::to_string(profile.degree()) + ")");
  }
  Rational result(1);
  const Rational& top = profile.beta(k + 1);
  for (long j = 0; j < static_cast<long>(p); ++j) result *= top - profile.beta(k - j);
  return result;
}

Rational q_poly(int m, std::span<const Rational> xs) {
  if (xs.empty()) throw std::invalid_argument("q_poly needs at least one variable");
  if (m < -1) throw std::invalid_argument("q_poly degree must be >= -1");
  if (m < 0) return Rational(0);
  // h[j] holds the degree-j polynomial in the variables seen so far.
  std::vector<Rational> h(static_cast<std::size_t>(m) + 1, Rational(0));
  h[0] = 1;
  for (const auto& x : xs) {
    for (std::size_t j = 1; j < h.size(); ++j) h[j] += x * h[j - 1];
  }
  return h.back();
}

Rational odd_central_moment(const ExactPmf& f, const MixingProfile& profile, unsigned r) {
  if (r < 1) throw std::invalid_argument("odd moment order r must be >= 1");
  if (f.degree() != profile.degree()) {
    throw std::invalid_argument("mass function and profile lengths differ");
  }
  Rational total(0);
  for (long k = 0; k <= f.degree(); ++k) {
    total += f.at(k) * pow(profile.beta(k), 2 * r + 1);
  }
  return total;
}

SChainReport s_chain(const ExactPmf& g, const ExactPmf& f, const MixingProfile& profile,
                     unsigned r) {
  if (r < 1) throw std::invalid_argument("s_chain order r must be >= 1");
  if (!(shifted_mixture(g, kHalf) == f)) {
    throw std::invalid_argument("s_chain: f is not g convolved with a fair coin");
  }
  if (!(mixing_profile(g) == profile)) {
    throw std::invalid_argument("s_chain: profile was not built from g");
  }
  const long n = profile.degree();
  std::vector<Rational> beta_squares;
  for (const auto& b : profile.betas()) beta_squares.emplace_back(b * b);

  SChainReport report;
  report.r = r;
  for (unsigned p = 1; p <= r + 1; ++p) {
    Rational total(0);
    const int q_degree = static_cast<int>(r) - static_cast<int>(p);
    for (long k = static_cast<long>(p) - 1; k <= n - 1; ++k) {
      // beta_{k+1}^2, beta_k^2, ..., beta_{k-p+1}^2
      std::span<const Rational> args(beta_squares.data() + (k + 1 - static_cast<long>(p)),
                                     p + 1);
      Rational q = q_poly(q_degree, args);
      if (sgn(q) == 0) continue;
      total += g.at(k) * a_product(profile, p - 1, k) * b_product(profile, p, k) * q *
               (profile.beta(k + 1) + profile.beta(k - static_cast<long>(p) + 1));
    }
    report.s_values.push_back(total);
  }
  report.moment = odd_central_moment(f, profile, r);
  report.chain_monotone = true;
  for (std::size_t i = 0; i + 1 < report.s_values.size(); ++i) {
    Rational gap = report.s_values[i + 1] - report.s_values[i];
    if (i == 0 || gap < report.min_gap) report.min_gap = gap;
    if (sgn(gap) < 0) report.chain_monotone = false;
  }
  report.equality_attained = sgn(report.moment) == 0;
  return report;
}

const Rational& IndexedTable::at(long k) const {
  if (!contains(k)) {
    throw std::out_of_range("table index " + std::to_string(k) + " outside " +
                            std::to_string(first) + ".." + std::to_string(last()));
  }
  return values[static_cast<std::size_t>(k - first)];
}

IndexedTable nabla(const IndexedTable& v) {
  IndexedTable out{v.first + 1, {}};
  for (long k = v.first + 1; k <= v.last(); ++k) out.values.emplace_back(v.at(k) - v.at(k - 1));
  return out;
}

IndexedTable product(const IndexedTable& v, const IndexedTable& w) {
  IndexedTable out{std::max(v.first, w.first), {}};
  for (long k = out.first; k <= std::min(v.last(), w.last()); ++k) {
    out.values.emplace_back(v.at(k) * w.at(k));
  }
  return out;
}

Rational ipp_residual(const ExactPmf& g, const MixingProfile& profile, unsigned p,
                      const IndexedTable& v) {
  const long n = profile.degree();
  const long lo = static_cast<long>(p);
  if (g.degree() + 1 != n) throw std::invalid_argument("ipp_residual: g and profile differ in length");
  const long expected = std::max(0L, n - lo);
  if (static_cast<long>(v.values.size()) != expected || (expected > 0 && v.first != lo)) {
    throw std::invalid_argument("ipp_residual: v must be tabulated on " + std::to_string(lo) +
                                ".." + std::to_string(n - 1));
  }
  Rational lhs(0);
  for (long k = lo; k <= n - 1; ++k) {
    lhs += g.at(k) * a_product(profile, p, k) * v.at(k) *
           (profile.beta(k + 1) + profile.beta(k - lo));
  }
  Rational rhs(0);
  for (long k = lo + 1; k <= n - 1; ++k) {
    rhs += g.at(k) * a_product(profile, p + 1, k) * (v.at(k) - v.at(k - 1));
  }
  return lhs - rhs;
}

}  // namespace polybern
