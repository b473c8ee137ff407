#include "polybern/entropy.hpp"

#include <cmath>

namespace polybern {

namespace {

const Rational kHalf(1, 2);

std::vector<double> as_doubles(const ExactPmf& f) {
  std::vector<double> out;
  out.reserve(f.size());
  for (const auto& m : f.masses()) out.push_back(to_double(m));
  return out;
}

double at(const std::vector<double>& v, long k) {
  if (k < 0 || k >= static_cast<long>(v.size())) return 0.0;
  return v[static_cast<std::size_t>(k)];
}

void check_path_pair(const ExactPmf& g, const ExactPmf& f) {
  if (f.size() != g.size() + 1) {
    throw std::invalid_argument("f must have exactly one more entry than g");
  }
}

void require_tsallis_order(double q) {
  if (!(q >= 0.0)) throw std::domain_error("entropy order q must be >= 0");
  if (q == 1.0) throw std::domain_error("q = 1 is the Shannon case; use the Shannon formulas");
}

// (m^{q-1} - 1) / (q - 1), continuous through q = 1 where it tends to log m.
double power_minus_one_over(double m, double q) {
  const double lm = std::log(m);
  if (q == 1.0) return lm;
  return std::expm1((q - 1.0) * lm) / (q - 1.0);
}

// (1 - x)^q - (1 - x), written so that dividing by (q - 1) stays accurate
// near q = 1.
double shifted_power(double base, double q) {
  if (base == 0.0) return 0.0;
  return base * std::expm1((q - 1.0) * std::log(base));
}

bool bounds_hold(const EntropyOrder& order, bool base_is_half, double first, double second) {
  if (order.family() == EntropyFamily::renyi && !order.is_shannon()) return true;
  if (second > 0.0) return false;
  if (order.is_shannon() && base_is_half) {
    return std::abs(first) <= kShannonDerivativeBound + 1e-12;
  }
  return true;
}

}  // namespace

EntropyOrder::EntropyOrder(EntropyFamily family, double q) : family_(family), q_(q) {
  if (!(q >= 0.0) || std::isinf(q)) throw std::domain_error("entropy order q must be finite and >= 0");
  if (family == EntropyFamily::shannon && q != 1.0) {
    throw std::domain_error("the Shannon family has q = 1");
  }
}

EntropyFamily parse_family(const std::string& name) {
  if (name == "shannon") return EntropyFamily::shannon;
  if (name == "renyi") return EntropyFamily::renyi;
  if (name == "tsallis") return EntropyFamily::tsallis;
  throw std::invalid_argument("unknown entropy family '" + name + "'");
}

std::string to_string(EntropyFamily family) {
  switch (family) {
    case EntropyFamily::shannon:
      return "shannon";
    case EntropyFamily::renyi:
      return "renyi";
    case EntropyFamily::tsallis:
      return "tsallis";
  }
  return "?";
}

DerivativeMethod parse_method(const std::string& name) {
  if (name == "direct") return DerivativeMethod::direct;
  if (name == "mixing") return DerivativeMethod::mixing;
  if (name == "fd" || name == "finite_difference") return DerivativeMethod::finite_difference;
  throw std::invalid_argument("unknown derivative method '" + name + "'");
}

std::string to_string(DerivativeMethod method) {
  switch (method) {
    case DerivativeMethod::direct:
      return "direct";
    case DerivativeMethod::mixing:
      return "mixing";
    case DerivativeMethod::finite_difference:
      return "finite_difference";
  }
  return "?";
}

double entropy(const ExactPmf& f, const EntropyOrder& order) {
  return entropy(to_float(f), order);
}

double psi(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("psi needs alpha in [0, 1]");
  const double beta = 1.0 - alpha;
  const double a_log_a = alpha > 0.0 ? alpha * std::log(alpha) : 0.0;
  const double b_log_b = beta > 0.0 ? beta * std::log(beta) : 0.0;
  return a_log_a - b_log_b - (2.0 - 2.0 * std::numbers::ln2) * (alpha - 0.5);
}

double psi(const Rational& alpha) {
  if (sgn(alpha) < 0 || alpha > 1) throw std::domain_error("psi needs alpha in [0, 1]");
  return psi(to_double(alpha));
}

SeriesValue psi_series(double alpha, unsigned terms) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("psi_series needs alpha in [0, 1]");
  if (terms < 1) throw std::invalid_argument("psi_series needs at least one term");
  const double x = 2.0 * alpha - 1.0;
  const double x2 = x * x;
  double power = x;  // x^{2r+1}
  double sum = 0.0;
  for (unsigned r = 1; r <= terms; ++r) {
    power *= x2;
    const double rr = r;
    sum -= power / (2.0 * rr * (2.0 * rr + 1.0));
  }
  const double rr = terms;
  const double next = std::abs(power) * x2;  // |x|^{2R+3}
  double bound = next / (4.0 * rr);
  if (x2 < 1.0) {
    bound = std::min(bound, next / (2.0 * (rr + 1.0) * (2.0 * rr + 3.0) * (1.0 - x2)));
  }
  return {sum, bound};
}

double psi_q(double x, double q) {
  if (!(std::abs(x) <= 1.0)) throw std::domain_error("psi_q needs |x| <= 1");
  if (!(q > 0.0)) throw std::domain_error("psi_q needs q > 0");
  if (q == 1.0) throw std::domain_error("psi_q is undefined at q = 1; use psi");
  const double a = shifted_power(1.0 - x, q);
  const double b = shifted_power(1.0 + x, q);
  return -(a - b) / (q - 1.0) - 2.0 * x;
}

double psi_q_series_coefficient(double q, unsigned r) {
  if (r < 1) throw std::invalid_argument("series index r must be >= 1");
  double c = 2.0 * q;
  for (unsigned i = 2; i <= 2 * r; ++i) c *= (q - i);
  for (unsigned i = 2; i <= 2 * r + 1; ++i) c /= i;
  return c;
}

double shannon_derivative_direct(const ExactPmf& g, const ExactPmf& f) {
  check_path_pair(g, f);
  const auto gd = as_doubles(g);
  const auto fd = as_doubles(f);
  double total = 0.0;
  for (long k = 0; k <= f.degree(); ++k) {
    const Rational diff = g.at(k) - g.at(k - 1);
    if (sgn(diff) == 0) continue;
    if (sgn(f.at(k)) == 0) throw std::domain_error("zero mass inside the support of f");
    total += to_double(diff) * std::log(at(fd, k));
  }
  return total;
}

double shannon_derivative_mixing(const ExactPmf& f, const MixingProfile& profile) {
  if (f.degree() != profile.degree()) throw std::invalid_argument("f and profile lengths differ");
  double total = 0.0;
  for (long k = 0; k <= f.degree(); ++k) total += to_double(f.at(k)) * psi(profile.alpha(k));
  return 2.0 * total;
}

double shannon_second_derivative(const ExactPmf& g, const ExactPmf& f) {
  check_path_pair(g, f);
  double total = 0.0;
  for (long k = 0; k <= f.degree(); ++k) {
    const Rational diff = g.at(k) - g.at(k - 1);
    if (sgn(diff) == 0) continue;
    if (sgn(f.at(k)) == 0) throw std::domain_error("zero mass inside the support of f");
    const double d = to_double(diff);
    total -= d * d / to_double(f.at(k));
  }
  return total;
}

double tsallis_derivative(const ExactPmf& g, const ExactPmf& f, double q) {
  require_tsallis_order(q);
  check_path_pair(g, f);
  if (q == 0.0) return 0.0;
  // The differences g(k-1) - g(k) sum to zero, so f^{q-1} may be replaced by
  // f^{q-1} - 1 without changing the value.
  double total = 0.0;
  for (long k = 0; k <= f.degree(); ++k) {
    const Rational diff = g.at(k - 1) - g.at(k);
    if (sgn(diff) == 0) continue;
    if (sgn(f.at(k)) == 0) throw std::domain_error("zero mass inside the support of f");
    total += to_double(diff) * power_minus_one_over(to_double(f.at(k)), q);
  }
  return -q * total;
}

double tsallis_second_derivative(const ExactPmf& g, const ExactPmf& f, double q) {
  require_tsallis_order(q);
  check_path_pair(g, f);
  double total = 0.0;
  for (long k = 0; k <= f.degree(); ++k) {
    const Rational diff = g.at(k - 1) - g.at(k);
    if (sgn(diff) == 0) continue;
    if (sgn(f.at(k)) == 0) throw std::domain_error("zero mass inside the support of f");
    const double d = to_double(diff);
    total += d * d * std::pow(to_double(f.at(k)), q - 2.0);
  }
  return -q * total;
}

double tsallis_derivative_mixing(const ExactPmf& f, const MixingProfile& profile, double q) {
  require_tsallis_order(q);
  if (f.degree() != profile.degree()) throw std::invalid_argument("f and profile lengths differ");
  if (q == 0.0) return 0.0;
  double total = 0.0;
  for (long k = 0; k <= f.degree(); ++k) {
    const double m = to_double(f.at(k));
    total += std::pow(m, q) * psi_q(to_double(2 * profile.beta(k)), q);
  }
  return total;
}

RenyiDerivatives renyi_derivatives(const ExactPmf& g, const ExactPmf& f, double q) {
  require_tsallis_order(q);
  const double s = detail::power_sum(to_float(f), q);
  const double t1 = tsallis_derivative(g, f, q);
  const double t2 = tsallis_second_derivative(g, f, q);
  return {t1 / s, t2 / s + (q - 1.0) * t1 * t1 / (s * s)};
}

CounterexampleTerms counterexample_leading_term(double q, double eps) {
  if (!(q > 1.0)) throw std::domain_error("counterexample needs q > 1");
  if (!(eps > 0.0 && eps < 0.5)) throw std::domain_error("counterexample needs 0 < eps < 1/2");
  const double scale = q * std::pow(2.0, 1.0 - q) / (q - 1.0);
  const double exact = -scale * (std::pow(0.5 - eps, q) - std::pow(0.5 + eps, q) + 2.0 * eps);
  const double leading =
      -(q * std::pow(2.0, 2.0 - 2.0 * q) / (q - 1.0)) * (std::pow(2.0, q) - 2.0 * q) * eps;
  return {exact, leading};
}

DerivativeRecord finite_difference(const SheppOlkinPath& path, const EntropyOrder& order,
                                   FiniteDifferenceOptions options) {
  const long double h = options.step;
  if (!(h > 0.0L)) throw std::invalid_argument("finite-difference step must be positive");
  auto value_at = [&](long double t) {
    const auto probs = path.at_float(t);
    const auto f = float_pmf<long double>(std::span<const long double>(probs));
    return entropy(f, order);
  };
  const long double minus = value_at(-h);
  const long double plus = value_at(h);
  const long double centre = value_at(0.0L);
  DerivativeRecord record;
  record.method = DerivativeMethod::finite_difference;
  record.first = static_cast<double>((plus - minus) / (2.0L * h));
  record.second = static_cast<double>((plus - 2.0L * centre + minus) / (h * h));
  record.bound_check = bounds_hold(order, path.base == kHalf, record.first, record.second);
  return record;
}

DerivativeRecord derivative_record(const ParamVector& params, const EntropyOrder& order,
                                   DerivativeMethod method, FiniteDifferenceOptions options) {
  if (params.empty()) throw std::invalid_argument("derivative needs at least one parameter");
  const bool base_is_half = params.back() == kHalf;
  if (method == DerivativeMethod::finite_difference) {
    return finite_difference(SheppOlkinPath::ending_at(params), order, options);
  }
  DerivativeRecord record;
  record.method = method;
  ExactPmf g;
  ExactPmf f;
  if (method == DerivativeMethod::mixing) {
    if (!base_is_half) {
      throw std::domain_error("the mixing form holds at p_n = 1/2 only");
    }
    g = exact_pmf(drop_last(params).without_zeros());
    f = shifted_mixture(g, kHalf);
  } else {
    g = exact_pmf(drop_last(params));
    f = exact_pmf(params);
  }
  const double q = order.q();
  if (order.is_shannon()) {
    record.first = method == DerivativeMethod::mixing
                       ? shannon_derivative_mixing(f, mixing_profile(g))
                       : shannon_derivative_direct(g, f);
    record.second = shannon_second_derivative(g, f);
  } else if (order.family() == EntropyFamily::tsallis) {
    record.first = method == DerivativeMethod::mixing
                       ? tsallis_derivative_mixing(f, mixing_profile(g), q)
                       : tsallis_derivative(g, f, q);
    record.second = tsallis_second_derivative(g, f, q);
  } else {
    const auto renyi = renyi_derivatives(g, f, q);
    record.first = renyi.first;
    record.second = renyi.second;
    if (method == DerivativeMethod::mixing) {
      record.first = tsallis_derivative_mixing(f, mixing_profile(g), q) /
                     detail::power_sum(to_float(f), q);
    }
  }
  record.bound_check = bounds_hold(order, base_is_half, record.first, record.second);
  return record;
}

Rational third_central_moment(const ParamVector& params) {
  Rational total(0);
  for (const auto& p : params.probs()) total += p * (1 - p) * (1 - 2 * p);
  return total;
}

}  // namespace polybern
