#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mcpac/aggregation.hpp"
#include "mcpac/constructions.hpp"
#include "mcpac/core.hpp"
#include "mcpac/learners.hpp"
#include "mcpac/splitting.hpp"

namespace mcpac {

enum class FamilyKind { CANTOR, CANTOR_EXPLICIT };
enum class LearnerKind { ERM, ERM_BAD };
enum class SplitterKind { NONE, HANNEKE, BAGGING, THREE };

// A complete, serializable description of one Monte Carlo experiment. The
// pair (config, seed-inside-config) pins every record bit-for-bit.
struct ExperimentConfig {
  FamilyKind family = FamilyKind::CANTOR;
  int d = 1;               // family budget; also the certified graph dimension
  double epsilon = 0.01;   // sets the domain size unless domain_size overrides
  std::optional<int> domain_size;
  LearnerKind learner = LearnerKind::ERM;
  SplitterKind splitter = SplitterKind::NONE;
  double rho = 0.5;                 // bagging subsample fraction
  double delta = 0.01;              // experiment-level failure budget
  std::optional<double> bag_delta;  // bagging bag count budget; defaults to delta
  TiePolicy tie_policy = TiePolicy::IDK;
  std::vector<int> m_grid;          // strictly increasing
  int trials = 1;
  std::uint64_t seed = 0;
  std::string out;                  // report directory; empty = don't write

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Flat key=value text, one pair per line, '#' comments allowed. Unknown keys
// and malformed values raise InvalidInputError. serialize_config emits a
// fixed key order and round-trips through parse_config_text exactly.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_text(const std::string& text);
std::string serialize_config(const ExperimentConfig& config);

// Invariant checks (grid strictly increasing, trials >= 1, parameter
// ranges); InvalidInputError on violation.
void validate_config(const ExperimentConfig& config);

// The concrete objects a config denotes: label space, hypothesis class,
// realizable target and distribution, and the learner to train.
struct ExperimentInstance {
  std::shared_ptr<LabelSpace> space;
  std::shared_ptr<const HypothesisClass> cls;
  Hypothesis target;
  LabeledDistribution dist;
  Learner learner;
};

ExperimentInstance build_instance(const ExperimentConfig& config);

// One trained-and-scored ensemble. All four metrics are exact masses under
// the instance distribution, never sampled estimates.
struct TrialRecord {
  int m = 0;
  int trial = 0;
  double majority_error = 0.0;
  double half_vote_error = 0.0;
  double list_error = 0.0;
  double bottom_rate = 0.0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// Runs one trial: draws S of length m on the stream keyed by (seed, m,
// trial_index), builds the split plan, trains one voter per subsequence, and
// scores the ensemble.
TrialRecord run_trial(const ExperimentInstance& instance, const ExperimentConfig& config,
                      int m, int trial_index);

struct MetricAggregate {
  double mean = 0.0;
  double median = 0.0;
  double prob_exceed_epsilon = 0.0;  // empirical P[value > config.epsilon]
};

struct GridPointSummary {
  int m = 0;
  MetricAggregate majority_error;
  MetricAggregate half_vote_error;
  MetricAggregate list_error;
  MetricAggregate bottom_rate;
  double c_hat = 0.0;  // median(majority_error) * m / d, the fitted rate constant
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;  // (m ascending, trial ascending)
  std::vector<GridPointSummary> per_m;
};

// Full sweep over m_grid x trials. With threads > 1 the trials run on a
// pool, each writing its preassigned record slot, so the result is identical
// to the serial run.
ExperimentResult run_grid(const ExperimentConfig& config, int threads = 1);

// The sample sizes at which the hard instance provably defeats (a) the
// majority ensemble and (b) the single bad ERM.
struct LowerBoundThresholds {
  int majority_m = 0;      // floor(d / (16 epsilon))
  int single_delta_m = 0;  // floor(ln(1/delta) / (8 epsilon))
  int single_log_m = 0;    // floor(d ln(1/(8 e^sqrt(2) epsilon)) / (4 epsilon))
};

LowerBoundThresholds lower_bound_thresholds(int d, double epsilon, double delta);

// run_grid with the m-grid defaulted to the thresholds above when empty.
ExperimentResult run_lower_bound(const ExperimentConfig& config, int threads = 1);

// run_grid with the m-grid defaulted to a doubling ladder when empty;
// per-m summaries carry the fitted constant c_hat.
ExperimentResult run_upper_bound(const ExperimentConfig& config, int threads = 1);

struct CouponStats {
  int domain_size = 0;
  int budget = 0;
  int trials = 0;
  double empirical_mean = 0.0;
  double empirical_variance = 0.0;  // unbiased sample variance
  double exact_mean = 0.0;
  double mean_lower_bound = 0.0;
  double exact_variance = 0.0;
  double variance_bound = 0.0;
};

// config.trials draws of coupon_trial on the config's instance geometry,
// stream keyed by (seed, 0, trial).
CouponStats run_coupon(const ExperimentConfig& config);

// Writes <dir>/records.csv (columns m,trial,metric,value; metrics in the
// fixed order majority_error, half_vote_error, list_error, bottom_rate) and
// <dir>/summary.json (config echo, thresholds-free aggregates, seed).
// Reruns of the same config produce byte-identical files. IoError when the
// directory cannot be created or written.
void emit_report(const ExperimentResult& result, const std::string& dir);

}  // namespace mcpac
