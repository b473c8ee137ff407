// polybern: command-line front end for the Poisson-binomial entropy library.
//
// Exit codes: 0 when every check passes or is skipped, 1 when a check is
// violated, 2 for usage and input errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polybern/bernoulli_convolution.hpp"
#include "polybern/entropy.hpp"
#include "polybern/mixing.hpp"
#include "polybern/rational.hpp"
#include "polybern/report_io.hpp"
#include "polybern/sweep.hpp"
#include "polybern/verification.hpp"

namespace {

using namespace polybern;
using nlohmann::json;

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ParamVector parse_params(const std::vector<std::string>& literals) {
  std::vector<Rational> probs;
  for (const auto& s : literals) probs.push_back(parse_rational(s));
  return ParamVector(std::move(probs));
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + out_path + "' for writing");
  file << text;
  if (!file) throw UsageError("failed writing '" + out_path + "'");
}

void emit_json(const json& doc, const std::string& out_path) { emit(doc.dump(2) + "\n", out_path); }

EntropyOrder make_order(const std::string& family, std::optional<double> q) {
  switch (parse_family(family)) {
    case EntropyFamily::shannon:
      return EntropyOrder::shannon();
    case EntropyFamily::renyi:
    case EntropyFamily::tsallis:
      if (!q) throw UsageError("--q is required for the " + family + " family");
      if (*q == 1.0) throw UsageError("q = 1 is the Shannon entropy; use --family shannon");
      return parse_family(family) == EntropyFamily::renyi ? EntropyOrder::renyi(*q)
                                                           : EntropyOrder::tsallis(*q);
  }
  throw UsageError("unknown family");
}

struct Options {
  std::vector<std::string> params;
  bool exact = false;
  bool floating = false;
  std::string family = "shannon";
  std::optional<double> q;
  std::string method = "direct";
  double step = 1e-5;
  std::string suite = "all";
  unsigned r_max = 5;
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  std::string out;
  std::string format = "csv";
  std::string mode = "grid";
  std::size_t n = 2;
  std::string p_min = "1/10";
  std::string p_max = "1/2";
  std::string p_step = "1/10";
  std::string last = "1/2";
  std::vector<double> qs;
  std::string eps = "1/100";
  std::size_t n_min = 1;
  std::size_t n_max = 8;
  double q_min = 1e-3;
  double q_max = 2.0;
};

int run_pmf(const Options& o) {
  ParamVector p = parse_params(o.params);
  std::ostringstream line;
  if (o.floating) {
    FloatPmf f = float_pmf(p);
    for (std::size_t k = 0; k < f.size(); ++k) line << (k ? " " : "") << format_double(f.masses()[k]);
  } else {
    ExactPmf f = exact_pmf(p);
    for (std::size_t k = 0; k < f.size(); ++k) line << (k ? " " : "") << to_string(f.masses()[k]);
  }
  std::cout << line.str() << '\n';
  return 0;
}

int run_entropy(const Options& o) {
  ParamVector p = parse_params(o.params);
  const EntropyOrder order = make_order(o.family, o.q);
  const double h = o.floating ? entropy(float_pmf(p), order) : entropy(exact_pmf(p), order);
  std::cout << format_double(h) << '\n';
  return 0;
}

int run_derivative(const Options& o) {
  ParamVector p = parse_params(o.params);
  if (p.empty()) throw UsageError("derivative needs at least one parameter");
  const EntropyOrder order = make_order(o.family, o.q);
  DerivativeRecord rec = derivative_record(p, order, parse_method(o.method), {o.step});
  json payload = to_json(rec);
  payload["kind"] = "derivative";
  payload["family"] = to_string(order.family());
  payload["q"] = order.q();
  payload["params"] = to_json(p);
  emit_json(document(payload), o.out);
  return 0;
}

int run_mixing(const Options& o) {
  ParamVector p = parse_params(o.params);
  if (p.empty()) throw UsageError("mixing needs at least one parameter");
  const ParamVector prefix = drop_last(p).without_zeros();
  const ExactPmf g = exact_pmf(prefix);
  const ExactPmf f = shifted_mixture(g, Rational(1, 2));
  const MixingProfile profile = mixing_profile(g);
  json moments = json::array();
  json chains = json::array();
  for (unsigned r = 1; r <= o.r_max; ++r) {
    SChainReport chain = s_chain(g, f, profile, r);
    moments.push_back(to_string(chain.moment));
    chains.push_back(to_json(chain));
  }
  json payload = to_json(profile);
  payload["kind"] = "mixing";
  payload["params"] = to_json(p);
  payload["fixed_params"] = to_json(prefix);
  payload["note"] = "profile of the fixed coordinates with the last coin at 1/2";
  payload["odd_moments"] = moments;
  payload["s_chains"] = chains;
  emit_json(document(payload), o.out);
  return 0;
}

int run_verify(const Options& o) {
  ParamVector p = parse_params(o.params);
  VerificationReport report;
  auto gated = [&](const std::string& suite, auto&& run) {
    try {
      report = run();
    } catch (const ConstraintViolation& e) {
      report.suite = suite;
      report.params = p;
      report.checks.push_back(skipped_check(suite, e.what()));
    }
  };
  if (o.suite == "all") {
    report = verify_all(p, o.r_max);
  } else if (o.suite == "monotonicity") {
    gated(o.suite, [&] { return verify_monotonicity(p, o.r_max); });
  } else if (o.suite == "spacing") {
    gated(o.suite, [&] { return verify_spacing(p); });
  } else if (o.suite == "appendix") {
    report = verify_appendix_identities(p);
  } else if (o.suite == "identities") {
    report = verify_identities(p, o.seed);
  } else {
    throw UsageError("unknown suite '" + o.suite + "'");
  }
  json payload = to_json(report);
  payload["kind"] = "verify";
  emit_json(document(payload), o.out);
  return report.has_violation() ? kExitViolation : 0;
}

int run_sweep_cmd(const Options& o) {
  SweepSpec spec;
  spec.mode = parse_sweep_mode(o.mode);
  spec.n = o.n;
  spec.p_min = parse_rational(o.p_min);
  spec.p_max = parse_rational(o.p_max);
  spec.p_step = parse_rational(o.p_step);
  spec.last = parse_rational(o.last);
  spec.samples = o.samples;
  spec.seed = o.seed;
  spec.qs = o.qs;
  spec.r_max = o.r_max;
  const auto rows = run_sweep(spec);
  if (o.format == "json") {
    emit_json(sweep_json(spec, rows), o.out);
  } else {
    std::ostringstream csv;
    write_csv(csv, spec, rows);
    emit(csv.str(), o.out);
  }
  for (const auto& row : rows) {
    if (!row.monotone_pass) return kExitViolation;
  }
  return 0;
}

int run_counterexample(const Options& o) {
  if (!o.q) throw UsageError("--q is required");
  const double q = *o.q;
  const Rational eps = parse_rational(o.eps);
  if (!(sgn(eps) > 0 && eps < Rational(1, 2))) throw UsageError("--eps must lie in (0, 1/2)");
  const double e = to_double(eps);
  const auto terms = counterexample_leading_term(q, e);
  const auto half = counterexample_leading_term(q, e / 2);
  // The same derivative from the mass functions of (1/2 - eps, 1/2).
  const ExactPmf g = exact_pmf(ParamVector({Rational(1, 2) - eps}));
  const ExactPmf f = shifted_mixture(g, Rational(1, 2));
  const double direct = tsallis_derivative(g, f, q);
  json payload{{"kind", "counterexample"},
               {"q", q},
               {"eps", to_string(eps)},
               {"params", to_json(ParamVector({Rational(1, 2) - eps, Rational(1, 2)}))},
               {"exact", terms.exact},
               {"leading", terms.leading},
               {"derivative_direct", direct},
               {"remainder", terms.exact - terms.leading},
               {"remainder_ratio_on_halving",
                (terms.exact - terms.leading) / (half.exact - half.leading)},
               {"negative", terms.exact < 0.0}};
  emit_json(document(payload), o.out);
  return 0;
}

int run_search(const Options& o) {
  SearchConfig config;
  config.n_min = o.n_min;
  config.n_max = o.n_max;
  config.q_min = o.q_min;
  config.q_max = o.q_max;
  config.samples = o.samples;
  config.seed = o.seed;
  config.r_max = o.r_max;
  VerificationReport report = search_tsallis(config);
  json payload = to_json(report);
  payload["kind"] = "search";
  payload["seed"] = o.seed;
  payload["note"] = "probes an open conjecture; findings are not failures";
  emit_json(document(payload), o.out);
  return report.has_violation() ? kExitViolation : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact entropy monotonicity checks for sums of Bernoulli variables"};
  app.require_subcommand(1);
  Options o;

  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("params", o.params, "Bernoulli parameters as a/b or short decimals");
  };
  auto add_backend = [&](CLI::App* cmd) {
    auto* exact = cmd->add_flag("--exact", o.exact, "Exact rational arithmetic (default)");
    auto* fl = cmd->add_flag("--float", o.floating, "Binary64 arithmetic");
    exact->excludes(fl);
  };
  auto add_order = [&](CLI::App* cmd) {
    cmd->add_option("--family", o.family, "shannon, renyi or tsallis")
        ->check(CLI::IsMember({"shannon", "renyi", "tsallis"}));
    cmd->add_option("--q", o.q, "Entropy order")->check(CLI::NonNegativeNumber);
  };
  auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", o.out, "Output file (default stdout)"); };

  auto* pmf = app.add_subcommand("pmf", "Print the mass function");
  add_params(pmf);
  add_backend(pmf);

  auto* ent = app.add_subcommand("entropy", "Print the entropy of the sum");
  add_params(ent);
  add_backend(ent);
  add_order(ent);

  auto* der = app.add_subcommand("derivative", "Entropy derivative in the last parameter");
  add_params(der);
  add_order(der);
  der->add_option("--method", o.method, "direct, mixing or fd")
      ->check(CLI::IsMember({"direct", "mixing", "fd", "finite_difference"}));
  der->set_help_flag("--help", "Print this help message and exit");  // frees -h / --h
  der->add_option("--h", o.step, "Finite-difference step")->check(CLI::PositiveNumber);
  add_out(der);

  auto* mix = app.add_subcommand("mixing", "Mixing coefficients, odd moments and S-chains");
  add_params(mix);
  mix->add_option("--rmax", o.r_max, "Largest moment order")->check(CLI::Range(1u, 64u));
  add_out(mix);

  auto* ver = app.add_subcommand("verify", "Run exact verification suites");
  add_params(ver);
  ver->add_option("--suite", o.suite, "all, monotonicity, spacing, appendix or identities")
      ->check(CLI::IsMember({"all", "monotonicity", "spacing", "appendix", "identities"}));
  ver->add_option("--rmax", o.r_max, "Largest moment order")->check(CLI::Range(1u, 64u));
  ver->add_option("--seed", o.seed, "Seed for randomised identity tables");
  add_out(ver);

  auto* sw = app.add_subcommand("sweep", "Tabulate a grid or random parameter sweep");
  sw->add_option("--mode", o.mode, "grid or random")->check(CLI::IsMember({"grid", "random"}));
  sw->add_option("--n", o.n, "Number of Bernoulli parameters")->check(CLI::PositiveNumber);
  sw->add_option("--p-min", o.p_min, "Grid lower end");
  sw->add_option("--p-max", o.p_max, "Grid upper end");
  sw->add_option("--p-step", o.p_step, "Grid step");
  sw->add_option("--last", o.last, "Last parameter in grid mode");
  sw->add_option("--samples", o.samples, "Random mode row count");
  sw->add_option("--seed", o.seed, "Random mode seed");
  sw->add_option("--q", o.qs, "Tsallis orders for extra derivative columns");
  sw->add_option("--rmax", o.r_max, "Largest moment order")->check(CLI::Range(1u, 64u));
  sw->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  add_out(sw);

  auto* ce = app.add_subcommand("counterexample", "Tsallis derivative at (1/2 - eps, 1/2)");
  ce->add_option("--q", o.q, "Entropy order, q > 1")->required();
  ce->add_option("--eps", o.eps, "Offset from 1/2");
  add_out(ce);

  auto* se = app.add_subcommand("search", "Seeded probe of the Tsallis derivative sign");
  se->add_option("--n-min", o.n_min, "Smallest n")->check(CLI::PositiveNumber);
  se->add_option("--n-max", o.n_max, "Largest n")->check(CLI::PositiveNumber);
  se->add_option("--q-min", o.q_min, "Smallest q");
  se->add_option("--q-max", o.q_max, "Largest q");
  se->add_option("--samples", o.samples, "Probe count");
  se->add_option("--seed", o.seed, "Seed");
  se->add_option("--rmax", o.r_max, "Largest weighted moment order")->check(CLI::Range(1u, 64u));
  add_out(se);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*pmf) return run_pmf(o);
    if (*ent) return run_entropy(o);
    if (*der) return run_derivative(o);
    if (*mix) return run_mixing(o);
    if (*ver) return run_verify(o);
    if (*sw) return run_sweep_cmd(o);
    if (*ce) return run_counterexample(o);
    if (*se) return run_search(o);
  } catch (const std::exception& e) {
    std::cerr << "polybern: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
