// End-to-end acceptance checks. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero when any criterion fails. Every tolerance
// and seed is pinned here so reruns are bit-for-bit comparable.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mcpac/aggregation.hpp"
#include "mcpac/constructions.hpp"
#include "mcpac/core.hpp"
#include "mcpac/dimensions.hpp"
#include "mcpac/experiments.hpp"
#include "mcpac/learners.hpp"
#include "mcpac/properness.hpp"
#include "mcpac/reduction.hpp"
#include "mcpac/splitting.hpp"
#include "support/helpers.hpp"

using namespace mcpac;

namespace {

using Criterion = std::function<std::optional<std::string>()>;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int capped_hyp_count(RandomSource& rng, int n, int k, int want_max) {
  long long cap = 1;
  for (int i = 0; i < n && cap <= want_max; ++i) cap *= k;
  long long hi = std::min<long long>(want_max, cap);
  return 2 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(hi - 1)));
}

// -------------------------------------------------------------------------
// 1. The nested-subset family splits its two dimensions: graph equals the
//    budget, ds stays at one.
std::optional<std::string> family_dimensions() {
  const int domains[] = {0, 6, 8, 10};
  for (int budget = 1; budget <= 3; ++budget) {
    auto cls = cantor_explicit(budget, domains[budget]);
    int graph = graph_dimension(*cls).value;
    int ds = ds_dimension(*cls).value;
    if (graph != budget) {
      return "budget " + std::to_string(budget) + ": graph dimension " +
             std::to_string(graph);
    }
    if (ds != 1) {
      return "budget " + std::to_string(budget) + ": ds dimension " + std::to_string(ds);
    }
  }
  return std::nullopt;
}

// -------------------------------------------------------------------------
// 2. Binarizing a class onto the product domain preserves its dimension:
//    vc of the image equals graph of the source on 50 seeded random classes.
std::optional<std::string> binarized_dimension() {
  RandomSource rng(45, 0);
  DimensionCaps caps{20, 6};
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng.uniform_below(4));
    int k = 2 + static_cast<int>(rng.uniform_below(3));
    int h = capped_hyp_count(rng, n, k, 12);
    auto cls = mcpac::testing::random_class(rng, n, k, h);
    BarContext ctx = make_bar_context(*cls);
    int graph = graph_dimension(*cls, caps).value;
    int vc = vc_dimension(*bar_class(*cls, ctx), caps).value;
    if (graph != vc) {
      return "trial " + std::to_string(trial) + ": graph " + std::to_string(graph) +
             " vs binarized vc " + std::to_string(vc);
    }
  }
  return std::nullopt;
}

// -------------------------------------------------------------------------
// 3. Splitting schemes: the recursive counts triple as promised, bag counts
//    obey their ceiling formula, and every scheme selects purely by position.
std::optional<std::string> splitting_schemes() {
  if (hanneke_split(4).index_sequences.size() != 3 ||
      hanneke_split(16).index_sequences.size() != 9 ||
      hanneke_split(64).index_sequences.size() != 27) {
    return "recursive subsequence counts are off the 3/9/27 ladder";
  }
  for (int m : {10, 25, 50, 100, 250}) {
    for (double delta : {0.2, 0.1, 0.05, 0.01}) {
      int expected = static_cast<int>(std::ceil(18.0 * std::log(2.0 * m / delta)));
      if (bagging_count(m, delta) != expected) {
        return "bag count at m=" + std::to_string(m) + " delta=" + fmt(delta);
      }
    }
  }

  RandomSource rng(46, 0);
  for (int test = 0; test < 100; ++test) {
    int m = 4 + static_cast<int>(rng.uniform_below(57));
    SplitPlan plan;
    switch (test % 3) {
      case 0: plan = hanneke_split(m); break;
      case 1: plan = three_split(m); break;
      default: plan = bagging_split(m, 0.5, 0.1, rng); break;
    }
    TrainingSequence first, second;
    for (int i = 1; i <= m; ++i) {
      first.push_back({i, 0});
      second.push_back({m + 1 - i, 1});
    }
    auto a = materialize(plan, first);
    auto b = materialize(plan, second);
    if (a.size() != plan.index_sequences.size()) return "materialized count mismatch";
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < a[i].size(); ++j) {
        auto idx = static_cast<std::size_t>(plan.index_sequences[i][j]);
        if (!(a[i][j] == first[idx - 1]) || !(b[i][j] == second[idx - 1])) {
          return "plan consulted the payload at test " + std::to_string(test);
        }
      }
    }
  }
  return std::nullopt;
}

// -------------------------------------------------------------------------
// 4. Per trial, the multiclass abstaining-majority error never exceeds the
//    binarized ensemble's half-vote mass: 500 trained ensembles across the
//    three splitting schemes.
std::optional<std::string> majority_versus_lifted() {
  auto cls = cantor_explicit(3, 15);
  CantorParams params{3, 15};
  Learner learner = make_bad_cantor_learner(params, cls->space());
  LabeledDistribution dist = LabeledDistribution::uniform_over(15, cls->at(0));

  const int m = 24;
  int ran = 0;
  for (int trial = 0; trial < 500; ++trial) {
    RandomSource rng = RandomSource(13, static_cast<std::uint64_t>(m))
                           .fork(static_cast<std::uint64_t>(trial));
    TrainingSequence sample;
    for (int i = 0; i < m; ++i) sample.push_back(dist.sample(rng));
    SplitPlan plan;
    switch (trial % 3) {
      case 0: plan = hanneke_split(m); break;
      case 1: plan = three_split(m); break;
      default: plan = bagging_split(m, 0.5, 0.01, rng); break;
    }
    std::vector<Hypothesis> voters;
    for (const auto& sub : materialize(plan, sample)) voters.push_back(learner.fn(sub));
    double majority =
        majority_error_exact(*cls->space(), voters, dist, TiePolicy::IDK);
    double lifted = lifted_half_vote_error(voters, dist);
    if (majority > lifted) {
      return "trial " + std::to_string(trial) + ": majority " + fmt(majority) +
             " above lifted half-vote " + fmt(lifted);
    }
    ++ran;
  }
  if (ran != 500) return "expected 500 trials, ran " + std::to_string(ran);
  return std::nullopt;
}

// -------------------------------------------------------------------------
// 5. At the critical sample size m = floor(d / (16 eps)) the three-way
//    ensemble over the adversarial erm still fails: the majority errs above
//    eps in at least 40% of 200 trials, and whenever the majority fails the
//    whole voter list was wrong too.
std::optional<std::string> ensemble_lower_bound() {
  ExperimentConfig c;
  c.family = FamilyKind::CANTOR;
  c.d = 10;
  c.epsilon = 0.01;
  c.learner = LearnerKind::ERM_BAD;
  c.splitter = SplitterKind::THREE;
  c.m_grid = {62};
  c.trials = 200;
  c.seed = 3;
  ExperimentResult r = run_grid(c);
  double exceed = r.per_m[0].majority_error.prob_exceed_epsilon;
  if (exceed < 0.4) {
    return "majority exceeded eps in only " + fmt(exceed) + " of trials";
  }
  for (const TrialRecord& rec : r.records) {
    if (rec.majority_error > c.epsilon && !(rec.list_error > c.epsilon)) {
      return "trial " + std::to_string(rec.trial) +
             " failed by majority but not by list error";
    }
  }
  return std::nullopt;
}

// -------------------------------------------------------------------------
// 6. A single adversarial erm stays at least 2*eps wrong in at least 40% of
//    200 trials at m = 250 on the d = 10, eps = 0.01 instance.
std::optional<std::string> single_erm_lower_bound() {
  ExperimentConfig c;
  c.family = FamilyKind::CANTOR;
  c.d = 10;
  c.epsilon = 0.01;
  c.learner = LearnerKind::ERM_BAD;
  c.splitter = SplitterKind::NONE;
  c.m_grid = {250};
  c.trials = 200;
  c.seed = 3;
  ExperimentResult r = run_grid(c);
  int hits = 0;
  for (const TrialRecord& rec : r.records) {
    if (rec.majority_error >= 2.0 * c.epsilon) ++hits;
  }
  double frac = static_cast<double>(hits) / 200.0;
  if (frac < 0.4) return "error reached 2*eps in only " + fmt(frac) + " of trials";
  return std::nullopt;
}

// -------------------------------------------------------------------------
// 7. Coupon statistics on the d = 10 instance (250 points): the empirical
//    mean of 10000 draws lands within 2% of the exact mean, above the
//    logarithmic lower bound, with sample variance at most twice the bound.
std::optional<std::string> coupon_statistics() {
  ExperimentConfig c;
  c.family = FamilyKind::CANTOR;
  c.d = 10;
  c.epsilon = 0.01;
  c.trials = 10000;
  c.seed = 7;
  CouponStats stats = run_coupon(c);
  double rel = std::abs(stats.empirical_mean - stats.exact_mean) / stats.exact_mean;
  if (rel > 0.02) {
    return "empirical mean " + fmt(stats.empirical_mean) + " is " + fmt(rel) +
           " away from exact " + fmt(stats.exact_mean);
  }
  if (stats.empirical_mean < stats.mean_lower_bound) {
    return "empirical mean " + fmt(stats.empirical_mean) + " below bound " +
           fmt(stats.mean_lower_bound);
  }
  if (stats.empirical_variance > 2.0 * stats.variance_bound) {
    return "sample variance " + fmt(stats.empirical_variance) + " above twice the bound " +
           fmt(stats.variance_bound);
  }
  return std::nullopt;
}

// -------------------------------------------------------------------------
// 8. On the doubling ladder {48, 96, 192, 384} over the explicit d = 3
//    family, both ensemble schemes drive the median majority error down by
//    at least 30% per doubling, and the fitted constant c_hat is stable
//    (within a factor of two, or identically flat) over the top half.
std::optional<std::string> upper_bound_decay() {
  for (SplitterKind splitter : {SplitterKind::HANNEKE, SplitterKind::THREE}) {
    ExperimentConfig c;
    c.family = FamilyKind::CANTOR_EXPLICIT;
    c.d = 3;
    c.epsilon = 0.05;  // 15-point domain
    c.learner = LearnerKind::ERM_BAD;
    c.splitter = splitter;
    c.m_grid = {48, 96, 192, 384};
    c.trials = 300;
    c.seed = 5;
    ExperimentResult r = run_upper_bound(c);
    const char* name = splitter == SplitterKind::HANNEKE ? "recursive" : "three-way";

    for (std::size_t i = 0; i + 1 < r.per_m.size(); ++i) {
      double cur = r.per_m[i].majority_error.median;
      double next = r.per_m[i + 1].majority_error.median;
      if (next > 0.7 * cur + 1e-12) {
        return std::string(name) + ": median at m=" + std::to_string(r.per_m[i + 1].m) +
               " is " + fmt(next) + ", above 0.7 * " + fmt(cur);
      }
    }
    double lo = std::min(r.per_m[2].c_hat, r.per_m[3].c_hat);
    double hi = std::max(r.per_m[2].c_hat, r.per_m[3].c_hat);
    bool stable = (hi == lo) || (lo > 0.0 && hi < 2.0 * lo);
    if (!stable) {
      return std::string(name) + ": c_hat drifts from " + fmt(lo) + " to " + fmt(hi);
    }
  }
  return std::nullopt;
}

// -------------------------------------------------------------------------
// 9. Minimum covers: members cover themselves with one hypothesis, branch
//    and bound matches the exhaustive oracle, and star-heavy targets over
//    the witness class need covers proportional to their star count.
std::optional<std::string> minimum_covers() {
  {
    std::vector<std::shared_ptr<ExplicitClass>> corpus = {
        two_constant_class(4), cantor_explicit(2, 6), properness_witness(4).cls};
    for (const auto& cls : corpus) {
      for (std::size_t i = 0; i < cls->size(); ++i) {
        PropernessResult r = properness_exact(cls->at(i), *cls);
        if (!r.value || *r.value != 1) {
          return "a class member needed more than itself as cover";
        }
      }
    }
  }
  {
    auto constants = two_constant_class(3);
    LabelId zero = constants->space()->parse("0");
    LabelId one = constants->space()->parse("1");
    PropernessResult r =
        properness_exact(Hypothesis::dense({zero, one, zero}), *constants);
    if (!r.value || *r.value != 2) return "the two-patch function did not need 2 covers";
  }

  RandomSource rng(47, 0);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng.uniform_below(4));
    int k = 2 + static_cast<int>(rng.uniform_below(3));
    int h = capped_hyp_count(rng, n, k, 12);
    auto cls = mcpac::testing::random_class(rng, n, k, h);
    std::vector<LabelId> row;
    for (int x = 1; x <= n; ++x) {
      row.push_back(cls->at(rng.uniform_below(cls->size()))(x));
    }
    Hypothesis f = Hypothesis::dense(std::move(row));
    PropernessResult exact = properness_exact(f, *cls);
    auto oracle = mcpac::testing::exhaustive_min_cover(f, *cls);
    if (exact.value != oracle) {
      return "branch and bound disagreed with the exhaustive oracle at trial " +
             std::to_string(trial);
    }
  }

  WitnessInstance four = properness_witness(4);
  RandomSource wrng(48, 0);
  for (int trial = 0; trial < 20; ++trial) {
    int p = 1 + static_cast<int>(wrng.uniform_below(3));
    std::vector<std::size_t> sources;
    for (int i = 0; i < p; ++i) sources.push_back(wrng.uniform_below(four.cls->size()));
    std::vector<LabelId> row;
    int stars = 0;
    for (Point x = 1; x <= 4; ++x) {
      LabelId y = four.cls->at(sources[wrng.uniform_below(sources.size())])(x);
      stars += y == four.star ? 1 : 0;
      row.push_back(y);
    }
    PropernessResult r = properness_exact(Hypothesis::dense(std::move(row)), *four.cls);
    if (!r.value) return "a patchwork of members lost its finite cover";
    int needed = (stars + four.root - 1) / four.root;
    if (*r.value < needed || *r.value > p) {
      return "witness cover " + std::to_string(*r.value) + " outside [" +
             std::to_string(needed) + ", " + std::to_string(p) + "]";
    }
  }
  return std::nullopt;
}

// -------------------------------------------------------------------------
// 10. Reports are deterministic: the same configuration and seed produce
//     byte-identical records.csv and summary.json, serial or threaded.
std::optional<std::string> deterministic_reports() {
  ExperimentConfig c;
  c.family = FamilyKind::CANTOR_EXPLICIT;
  c.d = 2;
  c.epsilon = 0.05;
  c.learner = LearnerKind::ERM_BAD;
  c.splitter = SplitterKind::THREE;
  c.m_grid = {6, 12};
  c.trials = 10;
  c.seed = 29;

  namespace fs = std::filesystem;
  fs::path base = fs::temp_directory_path() / "mcpac_acceptance_reports";
  fs::remove_all(base);
  emit_report(run_grid(c, 1), (base / "serial").string());
  emit_report(run_grid(c, 3), (base / "threaded").string());
  emit_report(run_grid(c, 1), (base / "rerun").string());

  for (const char* file : {"records.csv", "summary.json"}) {
    std::string serial = slurp(base / "serial" / file);
    if (serial.empty()) return std::string("empty ") + file;
    if (serial != slurp(base / "threaded" / file)) {
      return std::string(file) + " differs between serial and threaded runs";
    }
    if (serial != slurp(base / "rerun" / file)) {
      return std::string(file) + " differs between reruns";
    }
  }
  return std::nullopt;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Criterion run;
  };
  const Entry entries[] = {
      {"1. family dimensions: graph equals the budget, ds stays at one", family_dimensions},
      {"2. binarization preserves dimension on 50 random classes", binarized_dimension},
      {"3. splitting schemes: counts and pure index selection", splitting_schemes},
      {"4. majority error never exceeds the lifted half-vote mass", majority_versus_lifted},
      {"5. the three-way ensemble fails at the critical sample size", ensemble_lower_bound},
      {"6. a single adversarial erm stays 2*eps wrong at m = 250", single_erm_lower_bound},
      {"7. coupon statistics match the closed forms", coupon_statistics},
      {"8. ensemble error decays on the doubling ladder", upper_bound_decay},
      {"9. minimum covers match oracles and witness bounds", minimum_covers},
      {"10. identical configurations yield byte-identical reports", deterministic_reports},
  };

  int failed = 0;
  for (const Entry& entry : entries) {
    std::optional<std::string> detail;
    try {
      detail = entry.run();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (detail) {
      ++failed;
      std::cout << "FAIL  " << entry.name << " (" << *detail << ")\n";
    } else {
      std::cout << "PASS  " << entry.name << "\n";
    }
  }
  return failed == 0 ? 0 : 1;
}
