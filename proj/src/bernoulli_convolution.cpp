#include "polybern/bernoulli_convolution.hpp"

#include <string>

namespace polybern {

ParamVector::ParamVector(std::vector<Rational> probs) : probs_(std::move(probs)) {
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (sgn(probs_[i]) < 0 || probs_[i] > 1) {
      throw std::domain_error("parameter " + std::to_string(i + 1) + " = " +
                              to_string(probs_[i]) + " lies outside [0, 1]");
    }
  }
}

bool ParamVector::half_constrained() const {
  const Rational half(1, 2);
  for (const auto& p : probs_) {
    if (sgn(p) <= 0 || p > half) return false;
  }
  return true;
}

bool ParamVector::has_degenerate() const {
  for (const auto& p : probs_) {
    if (sgn(p) == 0 || p == 1) return true;
  }
  return false;
}

std::size_t ParamVector::zero_count() const {
  std::size_t count = 0;
  for (const auto& p : probs_) count += sgn(p) == 0 ? 1 : 0;
  return count;
}

ParamVector ParamVector::without_zeros() const {
  std::vector<Rational> kept;
  for (const auto& p : probs_) {
    if (sgn(p) != 0) kept.push_back(p);
  }
  return ParamVector(std::move(kept));
}

ParamVector ParamVector::with_appended(const Rational& p) const {
  std::vector<Rational> extended = probs_;
  extended.push_back(p);
  return ParamVector(std::move(extended));
}

std::vector<double> ParamVector::to_doubles() const {
  std::vector<double> out;
  out.reserve(probs_.size());
  for (const auto& p : probs_) out.push_back(to_double(p));
  return out;
}

ExactPmf exact_pmf(const ParamVector& params) {
  std::vector<Rational> masses{Rational(1)};
  for (const auto& p : params.probs()) masses = detail::convolve_coin(masses, p);
  return ExactPmf(std::move(masses));
}

FloatPmf float_pmf(const ParamVector& params) {
  std::vector<double> probs = params.to_doubles();
  return float_pmf<double>(std::span<const double>(probs));
}

MassFunction pmf(const ParamVector& params, Backend backend) {
  if (backend == Backend::exact) return exact_pmf(params);
  return float_pmf(params);
}

ExactPmf brute_force_pmf(const ParamVector& params) {
  const std::size_t n = params.size();
  if (n > kBruteForceLimit) {
    throw SizeLimitError("brute-force enumeration refuses n = " + std::to_string(n) +
                         " > " + std::to_string(kBruteForceLimit));
  }
  std::vector<Rational> masses(n + 1, Rational(0));
  const unsigned long outcomes = 1UL << n;
  for (unsigned long mask = 0; mask < outcomes; ++mask) {
    Rational weight(1);
    std::size_t heads = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1UL << i)) {
        weight *= params[i];
        ++heads;
      } else {
        weight *= 1 - params[i];
      }
    }
    masses[heads] += weight;
  }
  return ExactPmf(std::move(masses));
}

ParamVector drop_last(const ParamVector& params) {
  if (params.empty()) throw std::invalid_argument("drop_last of an empty parameter vector");
  return ParamVector(std::vector<Rational>(params.probs().begin(), params.probs().end() - 1));
}

ParamVector leave_one_out(const ParamVector& params, std::size_t i) {
  if (i < 1 || i > params.size()) {
    throw std::out_of_range("leave_one_out index " + std::to_string(i) +
                            " outside 1.." + std::to_string(params.size()));
  }
  std::vector<Rational> kept(params.probs().begin(), params.probs().end());
  kept.erase(kept.begin() + static_cast<long>(i - 1));
  return ParamVector(std::move(kept));
}

FloatPmf to_float(const ExactPmf& f) {
  std::vector<double> masses;
  masses.reserve(f.size());
  for (const auto& m : f.masses()) masses.push_back(to_double(m));
  return FloatPmf(std::move(masses));
}

Pmf<long double> to_long_double(const ExactPmf& f) {
  std::vector<long double> masses;
  masses.reserve(f.size());
  for (const auto& m : f.masses()) masses.push_back(to_long_double(m));
  return Pmf<long double>(std::move(masses));
}

Rational minor_d(const ExactPmf& g, long k) {
  return g.at(k) * g.at(k) - g.at(k + 1) * g.at(k - 1);
}

Rational minor_e(const ExactPmf& g, long k) {
  return g.at(k) * g.at(k + 1) - g.at(k + 2) * g.at(k - 1);
}

MinorSequence minors(const ExactPmf& g) {
  MinorSequence out;
  const long n = static_cast<long>(g.size());
  for (long k = 0; k < n; ++k) out.d_values.push_back(minor_d(g, k));
  for (long k = 0; k + 1 < n; ++k) out.e_values.push_back(minor_e(g, k));
  return out;
}

Rational MinorSequence::d(long k) const {
  if (k < 0 || k >= static_cast<long>(d_values.size())) return Rational(0);
  return d_values[static_cast<std::size_t>(k)];
}

Rational MinorSequence::e(long k) const {
  if (k < 0 || k >= static_cast<long>(e_values.size())) return Rational(0);
  return e_values[static_cast<std::size_t>(k)];
}

SheppOlkinPath::SheppOlkinPath(ParamVector prefix, Rational base)
    : prefix(std::move(prefix)), base(std::move(base)) {
  if (sgn(this->base) < 0 || this->base > 1) {
    throw std::domain_error("path base parameter outside [0, 1]");
  }
}

SheppOlkinPath SheppOlkinPath::ending_at(const ParamVector& params) {
  if (params.empty()) throw std::invalid_argument("a path needs at least one parameter");
  return SheppOlkinPath(drop_last(params), params.back());
}

ParamVector SheppOlkinPath::at(const Rational& t) const {
  Rational moved = base + t;
  if (sgn(moved) < 0 || moved > 1) throw std::domain_error("path offset leaves [0, 1]");
  return prefix.with_appended(moved);
}

std::vector<long double> SheppOlkinPath::at_float(long double t) const {
  long double moved = to_long_double(base) + t;
  if (!(moved >= 0.0L && moved <= 1.0L)) throw std::domain_error("path offset leaves [0, 1]");
  std::vector<long double> probs;
  probs.reserve(prefix.size() + 1);
  for (const auto& p : prefix.probs()) probs.push_back(to_long_double(p));
  probs.push_back(moved);
  return probs;
}

}  // namespace polybern
