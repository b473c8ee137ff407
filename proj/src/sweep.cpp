#include "polybern/sweep.hpp"

#include <ostream>

#include "polybern/entropy.hpp"
#include "polybern/mixing.hpp"
#include "polybern/parallel.hpp"
#include "polybern/report_io.hpp"

namespace polybern {

namespace {

const Rational kHalf(1, 2);

std::vector<ParamVector> grid_points(const SweepSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("sweep needs n >= 1");
  if (sgn(spec.p_step) <= 0) throw std::invalid_argument("grid step must be positive");
  std::vector<Rational> lattice;
  for (Rational p = spec.p_min; p <= spec.p_max; p += spec.p_step) lattice.push_back(p);
  if (lattice.empty()) throw std::invalid_argument("empty grid lattice");
  const std::size_t free = spec.n - 1;
  std::vector<std::size_t> digits(free, 0);
  std::vector<ParamVector> points;
  while (true) {
    std::vector<Rational> probs;
    for (std::size_t d : digits) probs.push_back(lattice[d]);
    probs.push_back(spec.last);
    points.emplace_back(std::move(probs));
    // Odometer increment, last digit fastest.
    std::size_t pos = free;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < lattice.size()) break;
      digits[pos] = 0;
      if (pos == 0) return points;
    }
    if (free == 0) return points;
  }
}

SweepRow evaluate(const SweepSpec& spec, std::size_t index, ParamVector params) {
  if (!params.half_constrained()) {
    throw ConstraintViolation("sweep rows need every p_i in (0, 1/2]");
  }
  SweepRow row;
  row.index = index;
  row.params = std::move(params);
  const ExactPmf g = exact_pmf(drop_last(row.params));
  const ExactPmf f = exact_pmf(row.params);
  const ExactPmf f_half = shifted_mixture(g, kHalf);
  const MixingProfile profile = mixing_profile(g);

  row.entropy = shannon_entropy(to_float(f));
  row.derivative = shannon_derivative_direct(g, f);
  row.derivative_half_direct = shannon_derivative_direct(g, f_half);
  row.derivative_half_mixing = shannon_derivative_mixing(f_half, profile);
  row.monotone_pass = row.derivative >= -1e-12;
  for (unsigned r = 1; r <= spec.r_max; ++r) {
    const SChainReport chain = s_chain(g, f_half, profile, r);
    row.moments.push_back(chain.moment);
    if (r == 1 || chain.min_gap < row.min_s_gap) row.min_s_gap = chain.min_gap;
    row.monotone_pass = row.monotone_pass && chain.chain_monotone && sgn(chain.moment) <= 0;
  }
  row.tsallis_nonnegative = true;
  for (double q : spec.qs) {
    const double d = q == 1.0 ? row.derivative : tsallis_derivative(g, f, q);
    row.tsallis.push_back(d);
    row.tsallis_nonnegative = row.tsallis_nonnegative && d >= -1e-12;
  }
  return row;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::string joined(const ParamVector& params) {
  std::string out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ' ';
    out += to_string(params[i]);
  }
  return out;
}

}  // namespace

SweepMode parse_sweep_mode(const std::string& name) {
  if (name == "grid") return SweepMode::grid;
  if (name == "random") return SweepMode::random;
  throw std::invalid_argument("unknown sweep mode '" + name + "'");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.r_max < 1) throw std::invalid_argument("r_max must be >= 1");
  for (double q : spec.qs) {
    if (!(q > 0.0)) throw std::domain_error("sweep q values must be positive");
  }
  std::vector<ParamVector> points;
  if (spec.mode == SweepMode::grid) {
    points = grid_points(spec);
  } else {
    if (spec.n < 1) throw std::invalid_argument("sweep needs n >= 1");
    for (std::size_t i = 0; i < spec.samples; ++i) {
      ProbeRng rng(derive_seed(spec.seed, i));
      points.push_back(random_params(spec.n, rng, ParamConstraint::half));
    }
  }
  const unsigned threads = spec.threads == 0 ? probe_threads() : spec.threads;
  return parallel_map(
      points.size(), [&](std::size_t i) { return evaluate(spec, i, points[i]); }, threads);
}

void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  out << "index,n,params,entropy,dH_dt,dH_dt_half_direct,dH_dt_half_mixing";
  for (unsigned r = 1; r <= spec.r_max; ++r) out << ",M_" << r;
  out << ",min_s_gap,monotone_pass";
  for (double q : spec.qs) out << ",dT_dt_q" << format_double(q);
  if (!spec.qs.empty()) out << ",tsallis_nonnegative";
  out << '\n';
  for (const auto& row : rows) {
    out << row.index << ',' << row.params.size() << ',' << quoted(joined(row.params)) << ','
        << format_double(row.entropy) << ',' << format_double(row.derivative) << ','
        << format_double(row.derivative_half_direct) << ','
        << format_double(row.derivative_half_mixing);
    for (const auto& m : row.moments) out << ',' << quoted(to_string(m));
    out << ',' << quoted(to_string(row.min_s_gap)) << ',' << (row.monotone_pass ? "true" : "false");
    for (double d : row.tsallis) out << ',' << format_double(d);
    if (!spec.qs.empty()) out << ',' << (row.tsallis_nonnegative ? "true" : "false");
    out << '\n';
  }
}

nlohmann::json sweep_json(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json moments = nlohmann::json::array();
    for (const auto& m : row.moments) moments.push_back(to_string(m));
    nlohmann::json tsallis = nlohmann::json::array();
    for (std::size_t i = 0; i < row.tsallis.size(); ++i) {
      tsallis.push_back({{"q", spec.qs[i]}, {"derivative", row.tsallis[i]}});
    }
    items.push_back({{"index", row.index},
                     {"params", to_json(row.params)},
                     {"entropy", row.entropy},
                     {"derivative", row.derivative},
                     {"derivative_half_direct", row.derivative_half_direct},
                     {"derivative_half_mixing", row.derivative_half_mixing},
                     {"moments", moments},
                     {"min_s_gap", to_string(row.min_s_gap)},
                     {"monotone_pass", row.monotone_pass},
                     {"tsallis", tsallis},
                     {"tsallis_nonnegative", row.tsallis_nonnegative}});
  }
  return document({{"kind", "sweep"},
                   {"mode", spec.mode == SweepMode::grid ? "grid" : "random"},
                   {"n", spec.n},
                   {"seed", spec.seed},
                   {"r_max", spec.r_max},
                   {"tsallis_note", "Tsallis columns probe an open conjecture, not a theorem"},
                   {"rows", items}});
}

}  // namespace polybern
