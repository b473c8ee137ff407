// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.
// Every tolerance and corpus size is fixed here; nothing is read from the
// environment except POLYBERN_THREADS (which must not change any result).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "polybern/bernoulli_convolution.hpp"
#include "polybern/entropy.hpp"
#include "polybern/mixing.hpp"
#include "polybern/report_io.hpp"
#include "polybern/sweep.hpp"
#include "polybern/verification.hpp"

using namespace polybern;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body, double budget_s = 0) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_s > 0 && elapsed > budget_s) {
    out.pass = false;
    out.detail += "; over time budget";
  }
  if (!out.pass) ++failures;
  std::printf("criterion %2d %s  %s: %s [%.2f s]\n", id, out.pass ? "PASS" : "FAIL", title,
              out.detail.c_str(), elapsed);
  std::fflush(stdout);
}

ParamVector corpus_vector(std::uint64_t stream, std::size_t n_lo, std::size_t n_hi,
                          ParamConstraint constraint) {
  ProbeRng rng(derive_seed(kSeed ^ static_cast<std::uint64_t>(constraint) << 32, stream));
  const auto n = static_cast<std::size_t>(rng.uniform_int(n_lo, n_hi));
  return random_params(n, rng, constraint);
}

Rational small_rational(ProbeRng& rng) {
  Rational r(static_cast<long>(rng.uniform_int(0, 40)) - 20, static_cast<long>(rng.uniform_int(1, 20)));
  r.canonicalize();
  return r;
}

// The criterion-2 corpus: 1000 vectors in (0, 1/2], n = 1..12.
const std::vector<ParamVector>& theorem_corpus() {
  static const std::vector<ParamVector> corpus = [] {
    std::vector<ParamVector> v;
    for (std::uint64_t i = 0; i < 1000; ++i) v.push_back(corpus_vector(i, 1, 12, ParamConstraint::half));
    return v;
  }();
  return corpus;
}

std::string counts(std::size_t cases, std::size_t bad, const char* what) {
  std::ostringstream s;
  s << cases << " cases, " << bad << " " << what;
  return s.str();
}

}  // namespace

int main() {
  criterion(1, "pmf equals brute-force enumeration", [] {
    std::size_t bad = 0;
    for (std::uint64_t i = 0; i < 500; ++i) {
      ParamVector p = corpus_vector(i, 0, 12, ParamConstraint::unit);
      if (!(exact_pmf(p) == brute_force_pmf(p))) ++bad;
    }
    return Outcome{bad == 0, counts(500, bad, "mismatches")};
  }, 30.0);

  criterion(2, "odd moments nonpositive, S-chain monotone, 4M_r = S_r1", [] {
    std::size_t bad = 0, suite_bad = 0, checks = 0;
    for (const auto& p : theorem_corpus()) {
      const ExactPmf g = exact_pmf(p);
      const ExactPmf f = shifted_mixture(g, Rational(1, 2));
      const MixingProfile profile = mixing_profile(g);
      for (unsigned r = 1; r <= 5; ++r) {
        const SChainReport chain = s_chain(g, f, profile, r);
        bool ok = sgn(chain.moment) <= 0 && sgn(chain.s_values.back()) == 0 &&
                  4 * chain.moment == chain.s_values.front();
        for (std::size_t i = 1; i < chain.s_values.size(); ++i) {
          ok = ok && chain.s_values[i - 1] <= chain.s_values[i];
        }
        ++checks;
        if (!ok) ++bad;
      }
      // The packaged suite, with the last coordinate as the moving one.
      if (verify_monotonicity(p, 5).has_violation()) ++suite_bad;
    }
    std::ostringstream s;
    s << counts(checks, bad, "exact violations") << "; monotonicity suite on " << theorem_corpus().size()
      << " vectors: " << suite_bad << " reports with violations";
    return Outcome{bad == 0 && suite_bad == 0, s.str()};
  }, 300.0);

  criterion(3, "M_1 = 0 iff every non-zero p_i is 1/2", [] {
    std::vector<ParamVector> grid;
    std::vector<std::vector<Rational>> frontier{{}};
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<std::vector<Rational>> next;
      for (const auto& base : frontier) {
        for (long j = 1; j <= 5; ++j) {
          auto v = base;
          Rational p(j, 10);
          p.canonicalize();
          v.push_back(p);
          next.push_back(v);
        }
      }
      frontier = next;
      for (const auto& v : frontier) grid.emplace_back(v);
    }
    // Stationary points: every entry 0 or 1/2.
    for (std::size_t n = 1; n <= 4; ++n) {
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<Rational> v;
        for (std::size_t i = 0; i < n; ++i) v.push_back(mask >> i & 1u ? Rational(1, 2) : Rational(0));
        grid.emplace_back(v);
      }
    }
    std::size_t bad = 0;
    for (const auto& p : grid) {
      bool all_half = true;
      for (const auto& x : p.probs()) all_half = all_half && (sgn(x) == 0 || x == Rational(1, 2));
      const ExactPmf g = exact_pmf(p.without_zeros());
      const Rational m1 = odd_central_moment(shifted_mixture(g, Rational(1, 2)), mixing_profile(g), 1);
      const auto cls = classify_equality(p);
      const bool stationary = cls.cls == EqualityClass::stationary;
      if ((sgn(m1) == 0) != all_half || stationary != all_half || !cls.consistent) ++bad;
    }
    return Outcome{bad == 0, counts(grid.size(), bad, "misclassifications")};
  });

  struct DerivativeProbe {
    double direct, mixing, fd_first, second, fd_second;
  };
  static std::vector<DerivativeProbe> probes;
  criterion(4, "direct = mixing to 1e-12, analytic = finite difference to 1e-6", [] {
    std::size_t bad_forms = 0, bad_fd = 0;
    double worst_forms = 0, worst_fd = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
      ParamVector p = corpus_vector(10000 + i, 0, 11, ParamConstraint::half).with_appended(Rational(1, 2));
      const ExactPmf g = exact_pmf(drop_last(p));
      const ExactPmf f = exact_pmf(p);
      DerivativeProbe d{};
      d.direct = shannon_derivative_direct(g, f);
      d.mixing = shannon_derivative_mixing(f, mixing_profile(g));
      d.second = shannon_second_derivative(g, f);
      const auto fd = finite_difference(SheppOlkinPath::ending_at(p), EntropyOrder::shannon(), {1e-5});
      d.fd_first = fd.first;
      d.fd_second = fd.second;
      probes.push_back(d);
      const double forms = std::abs(d.direct - d.mixing);
      const double rel1 = std::abs(d.fd_first - d.direct) / std::max(1.0, std::abs(d.direct));
      const double rel2 = std::abs(d.fd_second - d.second) / std::max(1.0, std::abs(d.second));
      worst_forms = std::max(worst_forms, forms);
      worst_fd = std::max({worst_fd, rel1, rel2});
      if (forms > 1e-12) ++bad_forms;
      if (rel1 > 1e-6 || rel2 > 1e-6) ++bad_fd;
    }
    std::ostringstream s;
    s << "200 probes; form gaps > 1e-12: " << bad_forms << " (worst " << worst_forms
      << "); fd gaps > 1e-6: " << bad_fd << " (worst " << worst_fd << ")";
    return Outcome{bad_forms == 0 && bad_fd == 0, s.str()};
  });

  criterion(5, "|dH/dt| <= 2(1 - log 2) + 1e-12 at p_n = 1/2", [] {
    std::size_t bad = 0;
    double largest = 0;
    for (const auto& d : probes) {
      for (double v : {d.direct, d.mixing}) {
        largest = std::max(largest, std::abs(v));
        if (std::abs(v) > kShannonDerivativeBound + 1e-12) ++bad;
      }
    }
    std::ostringstream s;
    s << counts(2 * probes.size(), bad, "over the bound") << "; largest " << largest << " vs "
      << kShannonDerivativeBound;
    return Outcome{!probes.empty() && bad == 0, s.str()};
  });

  criterion(6, "alpha endpoints, mean 1/2, decreasing spacing, alpha_k >= k/n", [] {
    std::size_t bad = 0;
    for (const auto& p : theorem_corpus()) {
      const ExactPmf g = exact_pmf(p);
      const ExactPmf f = shifted_mixture(g, Rational(1, 2));
      const MixingProfile profile = mixing_profile(g);
      const long n = profile.degree();
      bool ok = sgn(profile.alpha(0)) == 0 && profile.alpha(n) == 1;
      Rational mean(0);
      for (long k = 0; k <= n; ++k) {
        mean += f.at(k) * profile.alpha(k);
        Rational bound(k, n);
        bound.canonicalize();
        ok = ok && profile.alpha(k) >= bound;
      }
      ok = ok && mean == Rational(1, 2);
      const auto spacings = alpha_spacings(profile);
      for (std::size_t k = 1; k < spacings.size(); ++k) ok = ok && spacings[k] <= spacings[k - 1];
      // The packaged spacing suite, which also checks the cleared form.
      ok = ok && !verify_spacing(p.with_appended(Rational(1, 2))).has_violation();
      if (!ok) ++bad;
    }
    return Outcome{bad == 0, counts(theorem_corpus().size(), bad, "vectors with a violation")};
  });

  criterion(7, "summation by parts, Q recurrence and series, nabla product rule", [] {
    ProbeRng rng(derive_seed(kSeed, 7));
    std::size_t bad_ipp = 0, bad_rec = 0, bad_gen = 0, bad_prod = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
      ParamVector p = corpus_vector(20000 + t, 1, 10, ParamConstraint::open_unit);
      const ExactPmf g = exact_pmf(p);
      const MixingProfile profile = mixing_profile(g);
      const auto pp = static_cast<unsigned>(rng.uniform_int(0, static_cast<std::uint64_t>(g.degree())));
      IndexedTable v{static_cast<long>(pp), {}};
      for (long k = pp; k <= g.degree(); ++k) v.values.push_back(small_rational(rng));
      if (sgn(ipp_residual(g, profile, pp, v)) != 0) ++bad_ipp;
    }
    for (int m = 0; m <= 6; ++m) {
      for (std::size_t p = 1; p <= 5; ++p) {
        for (int rep = 0; rep < 4; ++rep) {
          std::vector<Rational> xs;
          for (std::size_t i = 0; i <= p; ++i) xs.push_back(small_rational(rng));
          const std::vector<Rational> head(xs.begin(), xs.end() - 1);
          const std::vector<Rational> tail(xs.begin() + 1, xs.end());
          if (q_poly(m, tail) - q_poly(m, head) != (xs[p] - xs[0]) * q_poly(m - 1, xs)) ++bad_rec;
        }
      }
    }
    for (std::size_t p = 1; p <= 5; ++p) {
      for (int rep = 0; rep < 4; ++rep) {
        std::vector<Rational> xs;
        for (std::size_t i = 0; i < p; ++i) xs.push_back(small_rational(rng));
        std::vector<Rational> series(7, Rational(0));
        series[0] = 1;
        for (const auto& x : xs) {
          std::vector<Rational> next(7, Rational(0));
          for (int i = 0; i <= 6; ++i) {
            Rational power(1);
            for (int j = 0; i + j <= 6; ++j, power *= x) next[i + j] += series[i] * power;
          }
          series = std::move(next);
        }
        for (int m = 0; m <= 6; ++m) {
          if (series[m] != q_poly(m, xs)) ++bad_gen;
        }
      }
    }
    for (int rep = 0; rep < 100; ++rep) {
      IndexedTable a{-3, {}}, b{-3, {}};
      for (int i = 0; i < 9; ++i) {
        a.values.push_back(small_rational(rng));
        b.values.push_back(small_rational(rng));
      }
      const auto lhs = nabla(product(a, b));
      const auto da = nabla(a);
      const auto db = nabla(b);
      for (long k = lhs.first; k <= lhs.last(); ++k) {
        if (lhs.at(k) != a.at(k) * db.at(k) + b.at(k - 1) * da.at(k)) ++bad_prod;
      }
    }
    std::ostringstream s;
    s << "ipp 100 triples: " << bad_ipp << " nonzero; recurrence 140: " << bad_rec
      << "; series 20x7 coefficients: " << bad_gen << "; product rule 100 tables: " << bad_prod;
    return Outcome{bad_ipp + bad_rec + bad_gen + bad_prod == 0, s.str()};
  });

  criterion(8, "leave-one-out sums and both cubic expansions", [] {
    const char* names[] = {"leave_one_out_d_sum", "leave_one_out_e_sum", "form1_expansion",
                           "form2_expansion",     "form1_reduced",       "form2_reduced",
                           "form_difference_is_cleared_spacing", "leave_one_out_minor_log_concavity"};
    std::size_t bad = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
      // n counts the moving coordinate too, so the fixed part has up to 7 entries.
      ParamVector p = corpus_vector(30000 + i, 2, 8, ParamConstraint::open_unit);
      const auto report = verify_appendix_identities(p);
      for (const char* name : names) {
        const auto* rec = report.find(name);
        if (rec == nullptr || rec->status != CheckStatus::pass) ++bad;
      }
      if (p.half_constrained()) {
        const auto* dom = report.find("form1_dominates_form2");
        if (dom == nullptr || dom->status != CheckStatus::pass) ++bad;
      }
    }
    return Outcome{bad == 0, counts(100, bad, "failed identity checks")};
  });

  criterion(9, "collision entropy derivative closed form for any parameters", [] {
    std::size_t bad = 0;
    double worst = 0;
    for (std::uint64_t i = 0; i < 500; ++i) {
      ParamVector p = corpus_vector(40000 + i, 1, 12, ParamConstraint::open_unit);
      const ExactPmf g = exact_pmf(drop_last(p));
      const ExactPmf f = exact_pmf(p);
      Rational sum(0);
      for (long k = 0; k <= f.degree(); ++k) {
        const Rational d = g.at(k - 1) - g.at(k);
        sum += d * d;
      }
      const double closed = to_double((1 - 2 * p.back()) * sum);
      const double gap = std::abs(tsallis_derivative(g, f, 2.0) - closed);
      worst = std::max(worst, gap);
      if (gap > 1e-12) ++bad;
    }
    std::ostringstream s;
    s << counts(500, bad, "gaps over 1e-12") << " (worst " << worst << ")";
    return Outcome{bad == 0, s.str()};
  });

  criterion(10, "q = 3 counterexample and O(eps^3) remainder", [] {
    const double q = 3.0;
    const double eps = 0.01;
    const double closed = -(q * std::pow(2.0, 1.0 - q) / (q - 1.0)) *
                          (std::pow(0.5 - eps, q) - std::pow(0.5 + eps, q) + 2.0 * eps);
    const ExactPmf g = exact_pmf(ParamVector({Rational(49, 100)}));
    const double from_pmf = tsallis_derivative(g, shifted_mixture(g, Rational(1, 2)), q);
    const auto terms = counterexample_leading_term(q, eps);
    const auto halved = counterexample_leading_term(q, eps / 2);
    const double ratio = (terms.exact - terms.leading) / (halved.exact - halved.leading);
    const bool ok = std::abs(from_pmf - closed) <= 1e-9 && std::abs(terms.exact - closed) <= 1e-9 &&
                    std::abs(closed - (-0.00187425)) <= 1e-9 && std::abs(terms.leading + 0.001875) <= 1e-15 &&
                    std::abs(ratio - 8.0) <= 0.1;
    std::ostringstream s;
    s.precision(12);
    s << "derivative " << from_pmf << ", closed form " << closed << ", leading " << terms.leading
      << ", remainder ratio on halving " << ratio;
    return Outcome{ok, s.str()};
  });

  criterion(11, "Tsallis conjecture probe, q in (0, 2] (reported, not a theorem)", [] {
    SearchConfig config;
    config.samples = 1000;
    config.seed = kSeed;
    config.n_min = 1;
    config.n_max = 12;
    const auto report = search_tsallis(config);
    const auto* nonneg = report.find("tsallis_derivative_nonnegative");
    std::ostringstream s;
    s << report.probes << " probes; negative derivatives: "
      << (nonneg && nonneg->status == CheckStatus::violated ? "found" : "none") << " (lowest "
      << (nonneg ? std::get<double>(nonneg->margin) : 0.0) << "); weighted-moment findings: "
      << report.findings.size() << "; other checks violated: "
      << report.count(CheckStatus::violated) - (nonneg && nonneg->status == CheckStatus::violated ? 1 : 0);
    return Outcome{!report.has_violation(), s.str()};
  });

  criterion(12, "seeded sweeps and searches are byte-identical across runs", [] {
    SweepSpec spec;
    spec.mode = SweepMode::random;
    spec.n = 6;
    spec.samples = 300;
    spec.seed = 7;
    spec.qs = {0.5, 1.0, 1.5, 2.0};
    auto render = [&](unsigned threads) {
      spec.threads = threads;
      std::ostringstream csv;
      write_csv(csv, spec, run_sweep(spec));
      return csv.str() + sweep_json(spec, run_sweep(spec)).dump();
    };
    const std::string a = render(1);
    const std::string b = render(1);
    const std::string c = render(4);
    SearchConfig config;
    config.samples = 300;
    config.seed = 99;
    config.threads = 1;
    const std::string s1 = to_json(search_tsallis(config)).dump();
    config.threads = 3;
    const std::string s2 = to_json(search_tsallis(config)).dump();
    std::ostringstream s;
    s << "sweep " << a.size() << " bytes, repeat " << (a == b ? "identical" : "differs")
      << ", 4 threads " << (a == c ? "identical" : "differs") << "; search "
      << (s1 == s2 ? "identical" : "differs") << " across thread counts";
    return Outcome{a == b && a == c && s1 == s2, s.str()};
  });

  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
