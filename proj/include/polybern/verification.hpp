#pragma once

// Runnable check suites for the monotonicity theorem and its lemmas, the
// equality characterisation, and a seeded probe for the Tsallis conjecture.
//
// Exact checks decide pass/violated on rationals. Float checks (entropy
// derivatives) only witness what the exact checks establish.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "polybern/bernoulli_convolution.hpp"
#include "polybern/mixing.hpp"

namespace polybern {

/// Thrown when a suite's parameter constraint does not hold.
class ConstraintViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class CheckStatus { pass, violated, skipped };
std::string to_string(CheckStatus status);

using Margin = std::variant<std::monostate, Rational, double>;

struct Witness {
  ParamVector params;
  std::optional<long> k;
  std::optional<unsigned> r;
  std::optional<double> q;
  std::optional<std::size_t> probe;
};

struct CheckRecord {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  /// Worst value seen; exact for exact checks.
  Margin margin;
  /// Present iff status == violated.
  std::optional<Witness> witness;
  std::string note;
};

/// Something worth reporting that is not a failure, e.g. a sufficient
/// condition that does not hold.
struct Finding {
  std::string name;
  double value = 0;
  Witness witness;
  std::string note;
};

struct VerificationReport {
  std::string suite;
  std::optional<ParamVector> params;
  std::vector<CheckRecord> checks;
  std::vector<Finding> findings;
  std::vector<std::string> diagnostics;
  std::size_t stripped_zeros = 0;
  std::optional<bool> equality_attained;
  std::vector<SChainReport> chains;
  std::size_t probes = 0;

  bool has_violation() const;
  std::size_t count(CheckStatus status) const;
  const CheckRecord* find(const std::string& name) const;
  /// Appends another report's checks, findings and diagnostics.
  void absorb(VerificationReport other);
};

/// Exact sign/zero expectation of a family of sampled values.
enum class Expect { zero, nonnegative, nonpositive, positive };

struct ExactSample {
  long k = 0;
  Rational value;
};

/// Reduces samples to one record holding the worst value.
CheckRecord summarize_exact(std::string name, Expect expect,
                            const std::vector<ExactSample>& samples, const ParamVector& params,
                            std::optional<unsigned> r = std::nullopt);

CheckRecord skipped_check(std::string name, std::string reason);

/// Exact moment, S-chain and float derivative checks for r = 1..r_max.
/// The last parameter is the moving coordinate. Requires every p_i in
/// [0, 1/2]; zeros are stripped and counted.
VerificationReport verify_monotonicity(const ParamVector& params, unsigned r_max);

enum class EqualityClass { strict_increase, stationary };
std::string to_string(EqualityClass cls);

struct EqualityClassification {
  EqualityClass cls = EqualityClass::strict_increase;
  /// Exact M_1 for g = law of params and f = g mixed with a fair coin.
  Rational m1;
  /// True iff (cls == stationary) agrees with (m1 == 0).
  bool consistent = false;
};

/// Treats params as the fixed coordinates and asks whether the entropy is
/// stationary when one more coin moves through 1/2. Stationary iff every
/// non-zero p_i equals 1/2. Requires every p_i in [0, 1/2].
EqualityClassification classify_equality(const ParamVector& params);

/// Decreasing alpha spacings, both as differences and in the cleared
/// log-concavity form, plus alpha_k >= k/n. Requires every p_i in [0, 1/2].
VerificationReport verify_spacing(const ParamVector& params);

/// The leave-one-out expansions of g(k)g(k-1) and 2g(k-1)g(k+1), the two
/// cubic expansions built from them, and minor log-concavity. Exact for any
/// parameters; the comparison of the two expansions is only asserted when
/// every p_i <= 1/2.
VerificationReport verify_appendix_identities(const ParamVector& params);

/// Mixing identities that hold for any parameters in (0, 1): endpoints,
/// strict increase, mean 1/2, the g/f consistency relations, the beta
/// representation, the cubic rewrite, summation by parts, the Q recurrence
/// and the nabla product rule. B_p monotonicity is checked only under the
/// 1/2 constraint.
VerificationReport verify_identities(const ParamVector& params, std::uint64_t seed = 1);

enum class ParamConstraint {
  /// [0, 1]
  unit,
  /// (0, 1)
  open_unit,
  /// (0, 1/2]
  half,
};

ParamConstraint parse_constraint(const std::string& name);
std::string to_string(ParamConstraint constraint);

/// Deterministic engine used by every seeded routine.
class ProbeRng {
 public:
  explicit ProbeRng(std::uint64_t seed);
  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi], lo <= hi.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
  /// Uniform in [0, 1) with 53 random bits.
  double uniform_real();

 private:
  std::mt19937_64 engine_;
};

/// Mixes a base seed with a stream index into an independent seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Rationals with denominators in [2, 10^4] drawn inside the constraint.
ParamVector random_params(std::size_t n, ProbeRng& rng, ParamConstraint constraint);
ParamVector random_params(std::size_t n, std::uint64_t seed, ParamConstraint constraint);

struct SearchConfig {
  std::size_t n_min = 1;
  std::size_t n_max = 8;
  double q_min = 1e-3;
  double q_max = 2.0;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  ParamConstraint constraint = ParamConstraint::half;
  unsigned r_max = 5;
  /// 0 means probe_threads().
  unsigned threads = 0;
};

/// The fixed q values visited by even-numbered probes (clipped to the range).
std::vector<double> search_q_grid(double q_min, double q_max);

/// Probes the Tsallis derivative over random constrained parameters and
/// q in (0, 2]. A negative derivative is a violation; a positive weighted
/// odd moment sum_k f(k)^q beta_k^{2r+1} is a finding.
VerificationReport search_tsallis(const SearchConfig& config);

/// Every exact suite applicable to params. Constraint-gated suites are
/// recorded as skipped when params are not in [0, 1/2].
VerificationReport verify_all(const ParamVector& params, unsigned r_max);

}  // namespace polybern
