#include "polybern/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polybern/entropy.hpp"
#include "polybern/parallel.hpp"

namespace polybern {

namespace {

const Rational kHalf(1, 2);

// Float derivative signs are accepted down to this value.
constexpr double kFloatSignTolerance = -1e-12;

void require_half_closed(const ParamVector& params, const std::string& suite) {
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i] > kHalf) {
      throw ConstraintViolation(suite + " requires every p_i <= 1/2; p_" + std::to_string(i + 1) +
                                " = " + to_string(params[i]));
    }
  }
}

Witness witness_for(const ParamVector& params, std::optional<long> k = std::nullopt,
                    std::optional<unsigned> r = std::nullopt) {
  Witness w;
  w.params = params;
  w.k = k;
  w.r = r;
  return w;
}

CheckRecord float_check(std::string name, bool ok, double value, const ParamVector& params,
                        std::string note = {}) {
  CheckRecord rec;
  rec.name = std::move(name);
  rec.status = ok ? CheckStatus::pass : CheckStatus::violated;
  rec.margin = value;
  rec.note = std::move(note);
  if (!ok) rec.witness = witness_for(params);
  return rec;
}

std::string indexed(const std::string& base, unsigned r) { return base + "_r" + std::to_string(r); }

// Strips zeros and returns the mass functions every suite starts from:
// g = law of the fixed coordinates, f = g mixed with a fair coin.
struct FixedCoordinates {
  ParamVector stripped;
  ParamVector prefix;
  ExactPmf g;
  ExactPmf f;
};

FixedCoordinates fixed_coordinates(const ParamVector& params) {
  FixedCoordinates fc;
  fc.stripped = params.without_zeros();
  fc.prefix = fc.stripped.empty() ? ParamVector() : drop_last(fc.stripped);
  fc.g = exact_pmf(fc.prefix);
  fc.f = shifted_mixture(fc.g, kHalf);
  return fc;
}

bool g_is_positive(const ExactPmf& g) {
  return std::all_of(g.masses().begin(), g.masses().end(),
                     [](const Rational& m) { return sgn(m) > 0; });
}

}  // namespace

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::violated:
      return "violated";
    case CheckStatus::skipped:
      return "skipped";
  }
  return "?";
}

std::string to_string(EqualityClass cls) {
  return cls == EqualityClass::stationary ? "stationary" : "strict_increase";
}

bool VerificationReport::has_violation() const { return count(CheckStatus::violated) > 0; }

std::size_t VerificationReport::count(CheckStatus status) const {
  return static_cast<std::size_t>(std::count_if(
      checks.begin(), checks.end(), [&](const CheckRecord& c) { return c.status == status; }));
}

const CheckRecord* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void VerificationReport::absorb(VerificationReport other) {
  for (auto& c : other.checks) checks.push_back(std::move(c));
  for (auto& f : other.findings) findings.push_back(std::move(f));
  for (auto& d : other.diagnostics) diagnostics.push_back(std::move(d));
  for (auto& s : other.chains) chains.push_back(std::move(s));
  if (other.equality_attained) equality_attained = other.equality_attained;
  stripped_zeros = std::max(stripped_zeros, other.stripped_zeros);
  probes += other.probes;
}

CheckRecord summarize_exact(std::string name, Expect expect,
                            const std::vector<ExactSample>& samples, const ParamVector& params,
                            std::optional<unsigned> r) {
  CheckRecord rec;
  rec.name = std::move(name);
  if (samples.empty()) {
    rec.note = "vacuous: no admissible index";
    return rec;
  }
  // Worst sample: the one closest to (or furthest past) violating.
  auto worse = [&](const Rational& a, const Rational& b) {
    switch (expect) {
      case Expect::zero:
        return abs(a) > abs(b);
      case Expect::nonnegative:
      case Expect::positive:
        return a < b;
      case Expect::nonpositive:
        return a > b;
    }
    return false;
  };
  const ExactSample* worst = &samples.front();
  for (const auto& s : samples) {
    if (worse(s.value, worst->value)) worst = &s;
  }
  bool ok = false;
  switch (expect) {
    case Expect::zero:
      ok = sgn(worst->value) == 0;
      break;
    case Expect::nonnegative:
      ok = sgn(worst->value) >= 0;
      break;
    case Expect::positive:
      ok = sgn(worst->value) > 0;
      break;
    case Expect::nonpositive:
      ok = sgn(worst->value) <= 0;
      break;
  }
  rec.margin = worst->value;
  rec.status = ok ? CheckStatus::pass : CheckStatus::violated;
  if (!ok) rec.witness = witness_for(params, worst->k, r);
  return rec;
}

CheckRecord skipped_check(std::string name, std::string reason) {
  CheckRecord rec;
  rec.name = std::move(name);
  rec.status = CheckStatus::skipped;
  rec.note = std::move(reason);
  return rec;
}

VerificationReport verify_monotonicity(const ParamVector& params, unsigned r_max) {
  require_half_closed(params, "monotonicity");
  if (r_max < 1) throw std::invalid_argument("r_max must be >= 1");
  VerificationReport report;
  report.suite = "monotonicity";
  report.params = params;
  report.stripped_zeros = params.zero_count();
  if (report.stripped_zeros > 0) {
    report.diagnostics.push_back("stripped " + std::to_string(report.stripped_zeros) +
                                 " zero parameter(s)");
  }
  const FixedCoordinates fc = fixed_coordinates(params);
  if (fc.stripped.empty()) {
    report.checks.push_back(skipped_check("monotonicity", "no non-zero parameters; H is constant"));
    report.equality_attained = true;
    return report;
  }
  const MixingProfile profile = mixing_profile(fc.g);

  bool exact_nonpositive = true;
  for (unsigned r = 1; r <= r_max; ++r) {
    SChainReport chain = s_chain(fc.g, fc.f, profile, r);
    exact_nonpositive = exact_nonpositive && sgn(chain.moment) <= 0;
    report.checks.push_back(summarize_exact(indexed("odd_moment_nonpositive", r),
                                            Expect::nonpositive, {{0, chain.moment}}, params, r));
    std::vector<ExactSample> gaps;
    for (std::size_t p = 0; p + 1 < chain.s_values.size(); ++p) {
      gaps.push_back({static_cast<long>(p + 1), chain.s_values[p + 1] - chain.s_values[p]});
    }
    auto chain_check = summarize_exact(indexed("s_chain_monotone", r), Expect::nonnegative, gaps,
                                       params, r);
    chain_check.note = "k holds p for a failing step S_{r,p} <= S_{r,p+1}";
    report.checks.push_back(std::move(chain_check));
    report.checks.push_back(summarize_exact(indexed("s_chain_terminal_zero", r), Expect::zero,
                                            {{static_cast<long>(r) + 1, chain.s_values.back()}},
                                            params, r));
    report.checks.push_back(summarize_exact(indexed("moment_matches_s_chain", r), Expect::zero,
                                            {{1, 4 * chain.moment - chain.s_values.front()}},
                                            params, r));
    if (r == 1) report.equality_attained = chain.equality_attained;
    report.chains.push_back(std::move(chain));
  }

  // Float witnesses: the derivative at the actual p_n and at p_n = 1/2.
  const ExactPmf f_actual = exact_pmf(fc.stripped);
  const double at_actual = shannon_derivative_direct(fc.g, f_actual);
  const double at_half = shannon_derivative_mixing(fc.f, profile);
  const double at_half_direct = shannon_derivative_direct(fc.g, fc.f);
  for (auto [name, value] : {std::pair{"derivative_nonnegative", at_actual},
                             std::pair{"derivative_nonnegative_at_half", at_half}}) {
    const bool ok = value >= kFloatSignTolerance;
    if (!ok && exact_nonpositive) {
      report.diagnostics.push_back(std::string(name) + ": float value " + std::to_string(value) +
                                   " is negative while every exact moment is <= 0");
      report.checks.push_back(float_check(name, true, value, params, "precision diagnostic"));
    } else {
      report.checks.push_back(float_check(name, ok, value, params));
    }
  }
  report.checks.push_back(float_check("derivative_forms_agree",
                                      std::abs(at_half - at_half_direct) <= 1e-12,
                                      at_half - at_half_direct, params));
  report.checks.push_back(float_check("derivative_bound_at_half",
                                      std::abs(at_half) <= kShannonDerivativeBound + 1e-12,
                                      kShannonDerivativeBound - std::abs(at_half), params));
  const double second = shannon_second_derivative(fc.g, f_actual);
  report.checks.push_back(float_check("second_derivative_nonpositive", second <= 0.0, second, params));
  return report;
}

EqualityClassification classify_equality(const ParamVector& params) {
  require_half_closed(params, "classify_equality");
  const ParamVector stripped = params.without_zeros();
  const ExactPmf g = exact_pmf(stripped);
  const ExactPmf f = shifted_mixture(g, kHalf);
  EqualityClassification out;
  out.m1 = odd_central_moment(f, mixing_profile(g), 1);
  const bool all_half = std::all_of(stripped.probs().begin(), stripped.probs().end(),
                                    [](const Rational& p) { return p == kHalf; });
  out.cls = all_half ? EqualityClass::stationary : EqualityClass::strict_increase;
  out.consistent = all_half == (sgn(out.m1) == 0);
  return out;
}

VerificationReport verify_spacing(const ParamVector& params) {
  require_half_closed(params, "spacing");
  VerificationReport report;
  report.suite = "spacing";
  report.params = params;
  report.stripped_zeros = params.zero_count();
  const FixedCoordinates fc = fixed_coordinates(params);
  if (fc.stripped.empty()) {
    report.checks.push_back(skipped_check("spacing", "no non-zero parameters"));
    return report;
  }
  const MixingProfile profile = mixing_profile(fc.g);
  const ExactPmf& g = fc.g;
  const long n = profile.degree();
  const auto spacings = alpha_spacings(profile);

  std::vector<ExactSample> spacing_drop, cleared, forms_agree, formula, lower_bound;
  for (long k = 0; k < n; ++k) {
    const Rational denom = (g.at(k + 1) + g.at(k)) * (g.at(k) + g.at(k - 1));
    formula.push_back({k, spacings[static_cast<std::size_t>(k)] - minor_d(g, k) / denom});
  }
  for (long k = 0; k + 1 < n; ++k) {
    const Rational drop = spacings[static_cast<std::size_t>(k)] - spacings[static_cast<std::size_t>(k + 1)];
    const Rational form = (g.at(k + 2) + g.at(k + 1)) * minor_d(g, k) -
                          (g.at(k - 1) + g.at(k)) * minor_d(g, k + 1);
    const Rational denom =
        (g.at(k + 1) + g.at(k)) * (g.at(k) + g.at(k - 1)) * (g.at(k + 2) + g.at(k + 1));
    spacing_drop.push_back({k, drop});
    cleared.push_back({k, form});
    forms_agree.push_back({k, drop * denom - form});
  }
  for (long k = 0; k <= n; ++k) {
    Rational bound(k, n);
    bound.canonicalize();
    lower_bound.push_back({k, profile.alpha(k) - bound});
  }
  report.checks.push_back(summarize_exact("alpha_spacing_nonincreasing", Expect::nonnegative,
                                          spacing_drop, params));
  report.checks.push_back(summarize_exact("cleared_spacing_inequality", Expect::nonnegative,
                                          cleared, params));
  report.checks.push_back(summarize_exact("spacing_forms_agree", Expect::zero, forms_agree, params));
  report.checks.push_back(summarize_exact("spacing_minor_formula", Expect::zero, formula, params));
  report.checks.push_back(summarize_exact("alpha_lower_bound", Expect::nonnegative, lower_bound, params));
  return report;
}

VerificationReport verify_appendix_identities(const ParamVector& params) {
  VerificationReport report;
  report.suite = "appendix";
  report.params = params;
  report.stripped_zeros = params.zero_count();
  const FixedCoordinates fc = fixed_coordinates(params);
  if (fc.stripped.empty()) {
    report.checks.push_back(skipped_check("appendix", "no non-zero parameters"));
    return report;
  }
  const ParamVector& prefix = fc.prefix;
  const ExactPmf& g = fc.g;
  const long m = static_cast<long>(prefix.size());
  std::vector<ExactPmf> loo;
  std::vector<Rational> weight;
  for (std::size_t i = 1; i <= prefix.size(); ++i) {
    loo.push_back(exact_pmf(leave_one_out(prefix, i)));
    weight.emplace_back(prefix[i - 1] * (1 - prefix[i - 1]));
  }
  auto minor2 = [&](std::size_t i, long k) -> Rational {
    const ExactPmf& h = loo[i];
    return minor_d(h, k) * minor_d(h, k) - minor_d(h, k - 1) * minor_d(h, k + 1);
  };

  std::vector<ExactSample> sum_d, sum_e, form1_mid, form2_mid, form1_red, form2_red, diff_tocontrol,
      minor_lc, dominance;
  std::size_t skipped = 0;
  for (long k = -1; k <= m + 1; ++k) {
    Rational rhs_d(0), rhs_e(0), mid1(0), mid2(0);
    for (std::size_t i = 0; i < loo.size(); ++i) {
      const ExactPmf& h = loo[i];
      rhs_d += weight[i] * minor_d(h, k - 1);
      rhs_e += weight[i] * minor_e(h, k - 1);
      mid1 += weight[i] * (g.at(k) * minor_d(h, k) + g.at(k + 2) * minor_d(h, k - 1) -
                           g.at(k + 1) * minor_e(h, k - 1));
      mid2 += weight[i] * (g.at(k + 1) * minor_d(h, k) + g.at(k - 1) * minor_d(h, k + 1) -
                           g.at(k) * minor_e(h, k));
      minor_lc.push_back({k, minor2(i, k)});
    }
    sum_d.push_back({k, g.at(k) * g.at(k - 1) - rhs_d});
    sum_e.push_back({k, 2 * g.at(k - 1) * g.at(k + 1) - rhs_e});

    const Rational lhs1 = g.at(k) * g.at(k) * g.at(k + 1) + g.at(k - 1) * g.at(k) * g.at(k + 2) -
                          2 * g.at(k - 1) * g.at(k + 1) * g.at(k + 1);
    const Rational lhs2 = g.at(k) * g.at(k + 1) * g.at(k + 1) +
                          g.at(k - 1) * g.at(k + 1) * g.at(k + 2) -
                          2 * g.at(k) * g.at(k) * g.at(k + 2);
    form1_mid.push_back({k, lhs1 - mid1});
    form2_mid.push_back({k, lhs2 - mid2});
    const Rational tocontrol = (g.at(k + 2) + g.at(k + 1)) * minor_d(g, k) -
                               (g.at(k - 1) + g.at(k)) * minor_d(g, k + 1);
    diff_tocontrol.push_back({k, (lhs1 - lhs2) - tocontrol});

    const bool divisible = std::all_of(loo.begin(), loo.end(),
                                       [&](const ExactPmf& h) { return sgn(h.at(k)) != 0; });
    if (!divisible) {
      ++skipped;
      continue;
    }
    Rational red1(0), red2(0);
    for (std::size_t i = 0; i < loo.size(); ++i) {
      const Rational ratio = minor2(i, k) / loo[i].at(k);
      red1 += weight[i] * (1 - prefix[i]) * ratio;
      red2 += weight[i] * prefix[i] * ratio;
    }
    form1_red.push_back({k, lhs1 - red1});
    form2_red.push_back({k, lhs2 - red2});
    dominance.push_back({k, red1 - red2});
  }

  report.checks.push_back(summarize_exact("leave_one_out_d_sum", Expect::zero, sum_d, params));
  report.checks.push_back(summarize_exact("leave_one_out_e_sum", Expect::zero, sum_e, params));
  report.checks.push_back(summarize_exact("form1_expansion", Expect::zero, form1_mid, params));
  report.checks.push_back(summarize_exact("form2_expansion", Expect::zero, form2_mid, params));
  auto red1 = summarize_exact("form1_reduced", Expect::zero, form1_red, params);
  auto red2 = summarize_exact("form2_reduced", Expect::zero, form2_red, params);
  const std::string skip_note = std::to_string(skipped) + " index(es) skipped where some g^(i)(k) = 0";
  red1.note = red2.note = skip_note;
  report.checks.push_back(std::move(red1));
  report.checks.push_back(std::move(red2));
  report.checks.push_back(
      summarize_exact("form_difference_is_cleared_spacing", Expect::zero, diff_tocontrol, params));
  report.checks.push_back(
      summarize_exact("leave_one_out_minor_log_concavity", Expect::nonnegative, minor_lc, params));
  if (params.without_zeros().half_constrained()) {
    auto dom = summarize_exact("form1_dominates_form2", Expect::nonnegative, dominance, params);
    dom.note = skip_note;
    report.checks.push_back(std::move(dom));
  } else {
    report.checks.push_back(skipped_check("form1_dominates_form2", "requires every p_i <= 1/2"));
  }
  if (skipped > 0) report.diagnostics.push_back("appendix: " + skip_note);
  return report;
}

VerificationReport verify_identities(const ParamVector& params, std::uint64_t seed) {
  VerificationReport report;
  report.suite = "identities";
  report.params = params;
  report.stripped_zeros = params.zero_count();
  const FixedCoordinates fc = fixed_coordinates(params);
  if (fc.stripped.empty()) {
    report.checks.push_back(skipped_check("identities", "no non-zero parameters"));
    return report;
  }
  if (!g_is_positive(fc.g)) {
    report.checks.push_back(
        skipped_check("identities", "a fixed coordinate equals 1, so g has an internal zero"));
    return report;
  }
  const ExactPmf& g = fc.g;
  const ExactPmf& f = fc.f;
  const MixingProfile profile = mixing_profile(g);
  const long n = profile.degree();
  const bool constrained = fc.stripped.half_constrained();
  ProbeRng rng(derive_seed(seed, 0x1de47));
  auto random_rational = [&] {
    const auto den = static_cast<long>(rng.uniform_int(1, 97));
    const auto num = static_cast<long>(rng.uniform_int(0, 200)) - 100;
    Rational r(num, den);
    r.canonicalize();
    return r;
  };

  std::vector<ExactSample> endpoints{{0, profile.alpha(0)}, {n, profile.alpha(n) - 1}};
  report.checks.push_back(summarize_exact("alpha_endpoints", Expect::zero, endpoints, params));

  std::vector<ExactSample> increase;
  const auto spacings = alpha_spacings(profile);
  for (long k = 0; k < n; ++k) increase.push_back({k, spacings[static_cast<std::size_t>(k)]});
  report.checks.push_back(summarize_exact("alpha_strictly_increasing", Expect::positive, increase, params));

  Rational mean(0);
  for (long k = 0; k <= n; ++k) mean += f.at(k) * profile.alpha(k);
  report.checks.push_back(summarize_exact("alpha_mean_half", Expect::zero, {{0, mean - kHalf}}, params));

  std::vector<ExactSample> upper, lower, vals2, beta_rep, mode_split, strict_lc;
  for (long k = 0; k <= n; ++k) {
    if (k < n) upper.push_back({k, g.at(k) - 2 * profile.alpha(k + 1) * f.at(k + 1)});
    lower.push_back({k, g.at(k) - 2 * (1 - profile.alpha(k)) * f.at(k)});
    if (k < n) {
      vals2.push_back({k, profile.alpha(k + 1) * g.at(k + 1) - (1 - profile.alpha(k + 1)) * g.at(k)});
    }
    beta_rep.push_back({k, profile.beta(k) - (g.at(k - 1) - g.at(k)) / (4 * f.at(k))});
    const bool below_half = profile.alpha(k) <= kHalf;
    const bool rising = g.at(k - 1) <= g.at(k);
    mode_split.push_back({k, Rational(below_half == rising ? 0 : 1)});
  }
  for (long k = 0; k < n; ++k) strict_lc.push_back({k, minor_d(g, k)});
  report.checks.push_back(summarize_exact("g_from_next_f", Expect::zero, upper, params));
  report.checks.push_back(summarize_exact("g_from_same_f", Expect::zero, lower, params));
  report.checks.push_back(summarize_exact("alpha_g_balance", Expect::zero, vals2, params));
  report.checks.push_back(summarize_exact("beta_representation", Expect::zero, beta_rep, params));
  report.checks.push_back(summarize_exact("mode_split", Expect::zero, mode_split, params));
  report.checks.push_back(summarize_exact("strict_log_concavity", Expect::positive, strict_lc, params));

  // Cubic rewrite of 4 M_1 by summation by parts.
  Rational cubic_lhs(0), cubic_rhs(0);
  for (long k = 0; k <= n - 1; ++k) {
    const Rational up = profile.beta(k + 1) - profile.beta(k);
    cubic_lhs += g.at(k) * up * (profile.beta(k + 1) + profile.beta(k));
    if (k >= 1) cubic_rhs += g.at(k) * profile.alpha(k) * (up - (profile.beta(k) - profile.beta(k - 1)));
  }
  report.checks.push_back(summarize_exact("cubic_rewrite", Expect::zero, {{0, cubic_lhs - cubic_rhs}}, params));

  std::vector<ExactSample> ipp;
  for (long p = 0; p < n; ++p) {
    IndexedTable squares{p, {}}, noise{p, {}}, constant{p, {}};
    for (long k = p; k <= n - 1; ++k) {
      squares.values.emplace_back(k * k);
      noise.values.push_back(random_rational());
      constant.values.emplace_back(1);
    }
    for (const auto* v : {&squares, &noise, &constant}) {
      ipp.push_back({p, ipp_residual(g, profile, static_cast<unsigned>(p), *v)});
    }
  }
  auto ipp_check = summarize_exact("summation_by_parts", Expect::zero, ipp, params);
  ipp_check.note = "k holds the order p";
  report.checks.push_back(std::move(ipp_check));

  // Q recurrence and generating function on windows of squared betas.
  std::vector<Rational> squares;
  for (const auto& b : profile.betas()) squares.emplace_back(b * b);
  std::vector<ExactSample> recurrence, generating;
  constexpr int kMaxDegree = 6;
  for (std::size_t p = 1; p <= 5; ++p) {
    std::vector<Rational> xs;
    for (std::size_t j = 0; j <= p; ++j) {
      xs.push_back(j < squares.size() ? squares[j] : random_rational());
    }
    std::span<const Rational> all(xs);
    for (int deg = 0; deg <= kMaxDegree; ++deg) {
      const Rational value = q_poly(deg, all.subspan(1, p)) - q_poly(deg, all.first(p)) -
                             (xs[p] - xs[0]) * q_poly(deg - 1, all);
      recurrence.push_back({deg, value});
    }
    // Truncated product of geometric series 1 / (1 - t x_j).
    std::vector<Rational> series(kMaxDegree + 1, Rational(0));
    series[0] = 1;
    for (std::size_t j = 0; j < p; ++j) {
      for (int deg = 1; deg <= kMaxDegree; ++deg) series[deg] += xs[j] * series[deg - 1];
    }
    for (int deg = 0; deg <= kMaxDegree; ++deg) {
      generating.push_back({deg, series[deg] - q_poly(deg, all.first(p))});
    }
  }
  report.checks.push_back(summarize_exact("q_recurrence", Expect::zero, recurrence, params));
  report.checks.push_back(summarize_exact("q_generating_function", Expect::zero, generating, params));

  IndexedTable v{0, {}}, w{0, {}};
  for (long k = 0; k <= n; ++k) {
    v.values.emplace_back(k * k);
    w.values.push_back(random_rational());
  }
  std::vector<ExactSample> product_rule;
  const IndexedTable lhs = nabla(product(v, w));
  const IndexedTable dv = nabla(v);
  const IndexedTable dw = nabla(w);
  for (long k = 1; k <= n; ++k) {
    product_rule.push_back({k, lhs.at(k) - (v.at(k) * dw.at(k) + w.at(k - 1) * dv.at(k))});
  }
  report.checks.push_back(summarize_exact("nabla_product_rule", Expect::zero, product_rule, params));

  if (constrained) {
    std::vector<ExactSample> b_drop;
    for (long p = 0; p < n; ++p) {
      for (long k = std::max(p, 1L); k <= n - 1; ++k) {
        const auto pu = static_cast<unsigned>(p);
        b_drop.push_back({k, b_product(profile, pu, k) - b_product(profile, pu, k - 1)});
      }
    }
    report.checks.push_back(summarize_exact("b_product_nonincreasing", Expect::nonpositive, b_drop, params));
    report.checks.push_back(summarize_exact("third_central_moment_nonnegative", Expect::nonnegative,
                                            {{0, third_central_moment(fc.prefix)}}, params));
  } else {
    report.checks.push_back(skipped_check("b_product_nonincreasing", "requires every p_i <= 1/2"));
    report.checks.push_back(
        skipped_check("third_central_moment_nonnegative", "requires every p_i <= 1/2"));
  }
  return report;
}

ParamConstraint parse_constraint(const std::string& name) {
  if (name == "unit") return ParamConstraint::unit;
  if (name == "open_unit" || name == "open") return ParamConstraint::open_unit;
  if (name == "half") return ParamConstraint::half;
  throw std::invalid_argument("unknown constraint '" + name + "'");
}

std::string to_string(ParamConstraint constraint) {
  switch (constraint) {
    case ParamConstraint::unit:
      return "unit";
    case ParamConstraint::open_unit:
      return "open_unit";
    case ParamConstraint::half:
      return "half";
  }
  return "?";
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finaliser over the combined value
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ProbeRng::ProbeRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t ProbeRng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return engine_();  // full 64-bit range
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + x % span;
}

double ProbeRng::uniform_real() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

ParamVector random_params(std::size_t n, ProbeRng& rng, ParamConstraint constraint) {
  constexpr std::uint64_t kMaxDenominator = 10000;
  std::vector<Rational> probs;
  probs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t den = rng.uniform_int(2, kMaxDenominator);
    std::uint64_t num = 0;
    switch (constraint) {
      case ParamConstraint::unit:
        num = rng.uniform_int(0, den);
        break;
      case ParamConstraint::open_unit:
        num = rng.uniform_int(1, den - 1);
        break;
      case ParamConstraint::half:
        num = rng.uniform_int(1, den / 2);
        break;
    }
    Rational p(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
    p.canonicalize();
    probs.push_back(std::move(p));
  }
  return ParamVector(std::move(probs));
}

ParamVector random_params(std::size_t n, std::uint64_t seed, ParamConstraint constraint) {
  ProbeRng rng(derive_seed(seed, 0));
  return random_params(n, rng, constraint);
}

std::vector<double> search_q_grid(double q_min, double q_max) {
  static const std::vector<double> kGrid{1e-3, 0.25, 0.5, 0.75, 1.0 - 1e-9,
                                         1.0 + 1e-9, 1.25, 1.5, 1.75, 2.0};
  std::vector<double> grid;
  for (double q : kGrid) {
    if (q >= q_min && q <= q_max) grid.push_back(q);
  }
  if (grid.empty()) grid.push_back(q_max);
  return grid;
}

namespace {

struct ProbeOutcome {
  ParamVector params;
  double q = 0;
  double derivative_actual = 0;
  double derivative_half = 0;
  double derivative_half_mixing = 0;
  double second = 0;
  std::optional<double> shannon_gap;
  std::vector<std::pair<unsigned, double>> positive_moments;
};

ProbeOutcome run_probe(const SearchConfig& config, std::size_t index,
                       const std::vector<double>& grid) {
  ProbeRng rng(derive_seed(config.seed, index));
  const auto n = static_cast<std::size_t>(rng.uniform_int(config.n_min, config.n_max));
  ProbeOutcome out;
  out.params = random_params(n, rng, config.constraint);
  const double u = rng.uniform_real();
  out.q = index % 2 == 0 ? grid[(index / 2) % grid.size()]
                         : config.q_max - (config.q_max - config.q_min) * u;

  const ParamVector prefix = drop_last(out.params);
  const ExactPmf g = exact_pmf(prefix);
  const ExactPmf f_actual = exact_pmf(out.params);
  const ExactPmf f_half = shifted_mixture(g, kHalf);
  const MixingProfile profile = mixing_profile(g);
  const double q = out.q;
  if (q == 1.0) {
    out.derivative_actual = shannon_derivative_direct(g, f_actual);
    out.derivative_half = shannon_derivative_direct(g, f_half);
    out.derivative_half_mixing = shannon_derivative_mixing(f_half, profile);
    out.second = shannon_second_derivative(g, f_actual);
  } else {
    out.derivative_actual = tsallis_derivative(g, f_actual, q);
    out.derivative_half = tsallis_derivative(g, f_half, q);
    out.derivative_half_mixing = tsallis_derivative_mixing(f_half, profile, q);
    out.second = tsallis_second_derivative(g, f_actual, q);
  }
  if (std::abs(q - 1.0) <= 1e-9) {
    out.shannon_gap = out.derivative_half - shannon_derivative_direct(g, f_half);
  }
  for (unsigned r = 1; r <= config.r_max; ++r) {
    double sum = 0.0;
    double scale = 0.0;
    for (long k = 0; k <= f_half.degree(); ++k) {
      const double w = std::pow(to_double(f_half.at(k)), q);
      const double b = to_double(pow(profile.beta(k), 2 * r + 1));
      sum += w * b;
      scale += w * std::abs(b);
    }
    if (sum > 1e-12 * scale) out.positive_moments.emplace_back(r, sum);
  }
  return out;
}

// Running worst value of a float check across probes.
struct FloatTally {
  FloatTally(std::string name, bool lower_is_worse)
      : name(std::move(name)), lower_is_worse(lower_is_worse) {}

  std::string name;
  bool lower_is_worse = true;
  std::optional<double> worst;
  std::optional<std::size_t> worst_probe;
  bool violated = false;
  std::optional<std::size_t> first_violation;

  void add(double value, bool ok, std::size_t probe) {
    if (!worst || (lower_is_worse ? value < *worst : value > *worst)) {
      worst = value;
      worst_probe = probe;
    }
    if (!ok && !violated) {
      violated = true;
      first_violation = probe;
    }
  }
};

}  // namespace

VerificationReport search_tsallis(const SearchConfig& config) {
  if (!(config.q_min > 0.0) || !(config.q_max <= 2.0) || config.q_min > config.q_max) {
    throw std::domain_error("search q range must lie in (0, 2]");
  }
  if (config.n_min < 1 || config.n_min > config.n_max) {
    throw std::invalid_argument("search needs 1 <= n_min <= n_max");
  }
  if (config.constraint != ParamConstraint::half) {
    throw std::invalid_argument("the conjecture probe samples p_i in (0, 1/2] only");
  }
  const auto grid = search_q_grid(config.q_min, config.q_max);
  const unsigned threads = config.threads == 0 ? probe_threads() : config.threads;
  const auto outcomes = parallel_map(
      config.samples, [&](std::size_t i) { return run_probe(config, i, grid); }, threads);

  VerificationReport report;
  report.suite = "search_tsallis";
  report.probes = outcomes.size();
  FloatTally nonneg{"tsallis_derivative_nonnegative", true};
  FloatTally agree{"tsallis_forms_agree", false};
  FloatTally second{"tsallis_second_derivative_nonpositive", false};
  FloatTally shannon{"shannon_continuity", false};
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    const double lowest = std::min(o.derivative_actual, o.derivative_half);
    nonneg.add(lowest, lowest >= kFloatSignTolerance, i);
    const double gap = std::abs(o.derivative_half - o.derivative_half_mixing);
    agree.add(gap, gap <= 1e-12 * std::max(1.0, std::abs(o.derivative_half)), i);
    second.add(o.second, o.second <= 0.0, i);
    if (o.shannon_gap) shannon.add(std::abs(*o.shannon_gap), std::abs(*o.shannon_gap) <= 1e-8, i);
    for (auto [r, value] : o.positive_moments) {
      Finding finding;
      finding.name = "weighted_odd_moment_positive";
      finding.value = value;
      finding.witness = witness_for(o.params, std::nullopt, r);
      finding.witness.q = o.q;
      finding.witness.probe = i;
      finding.note = "sufficient condition fails for this probe; the derivative itself is checked separately";
      report.findings.push_back(std::move(finding));
    }
  }
  for (const FloatTally* tally : {&nonneg, &agree, &second, &shannon}) {
    CheckRecord rec;
    rec.name = tally->name;
    if (!tally->worst) {
      rec.status = CheckStatus::skipped;
      rec.note = "no probe exercised this check";
      report.checks.push_back(std::move(rec));
      continue;
    }
    rec.margin = *tally->worst;
    rec.status = tally->violated ? CheckStatus::violated : CheckStatus::pass;
    if (tally->violated) {
      const auto& o = outcomes[*tally->first_violation];
      Witness w = witness_for(o.params);
      w.q = o.q;
      w.probe = *tally->first_violation;
      rec.witness = std::move(w);
    }
    report.checks.push_back(std::move(rec));
  }
  return report;
}

VerificationReport verify_all(const ParamVector& params, unsigned r_max) {
  VerificationReport report;
  report.suite = "all";
  report.params = params;
  report.stripped_zeros = params.zero_count();
  auto gated = [&](const char* name, auto&& run) {
    try {
      report.absorb(run());
    } catch (const ConstraintViolation& e) {
      report.checks.push_back(skipped_check(name, e.what()));
    }
  };
  gated("monotonicity", [&] { return verify_monotonicity(params, r_max); });
  gated("spacing", [&] { return verify_spacing(params); });
  report.absorb(verify_appendix_identities(params));
  report.absorb(verify_identities(params));
  return report;
}

}  // namespace polybern
