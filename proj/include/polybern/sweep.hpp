#pragma once

// Parameter sweeps: one row per probe with entropies, derivatives and exact
// moments, written as CSV or JSON for external plotting.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "polybern/bernoulli_convolution.hpp"
#include "polybern/verification.hpp"

namespace polybern {

enum class SweepMode { grid, random };

SweepMode parse_sweep_mode(const std::string& name);

struct SweepSpec {
  SweepMode mode = SweepMode::grid;
  std::size_t n = 2;
  /// Grid lattice for the first n - 1 coordinates: p_min, p_min + step, ...
  /// up to p_max inclusive.
  Rational p_min{1, 10};
  Rational p_max{1, 2};
  Rational p_step{1, 10};
  /// Grid mode: value of the moving (last) coordinate.
  Rational last{1, 2};
  /// Random mode.
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  /// Tsallis orders for the extra derivative columns; q = 1 means Shannon.
  std::vector<double> qs;
  unsigned r_max = 3;
  unsigned threads = 0;
};

struct SweepRow {
  std::size_t index = 0;
  ParamVector params;
  double entropy = 0;
  /// dH/dt at the actual last coordinate.
  double derivative = 0;
  /// dH/dt with the last coordinate at 1/2, direct and mixing forms.
  double derivative_half_direct = 0;
  double derivative_half_mixing = 0;
  std::vector<Rational> moments;
  Rational min_s_gap;
  bool monotone_pass = false;
  /// Tsallis derivative at the actual parameters, one per q.
  std::vector<double> tsallis;
  bool tsallis_nonnegative = false;
};

/// Every row of the sweep; grid rows in lexicographic order, random rows in
/// probe order. Requires every generated p_i in (0, 1/2].
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Header row plus one line per row. Rationals are quoted "a/b"; the params
/// column is a quoted space-separated list.
void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

nlohmann::json sweep_json(const SweepSpec& spec, const std::vector<SweepRow>& rows);

}  // namespace polybern
