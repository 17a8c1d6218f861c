// Instance generators used by the experiments and tests.
//
// Nested-subset ("cantor") family over X = {1..n}: one hypothesis h_A per
// subset A with |A| <= budget, where h_A labels members of A with the set
// label "A" and everything else with the atom "*". The all-star hypothesis
// (A empty) is the target of the hard instance; the hard distribution is
// uniform over X labeled "*". The family's graph dimension equals the budget
// while its ds dimension is 1, which is what makes it useful: learners can
// be consistent yet commit to budget-many wrong set labels on unseen points.
//
// Properness witness over X = {1..d} (d a perfect square): all h_A with
// |A| = d - sqrt(d), so every hypothesis emits "*" on exactly sqrt(d)
// points. Any function assembled pointwise from p of these hypotheses emits
// "*" on at most p * sqrt(d) points, forcing large covers for star-heavy
// targets. witness_composite glues two such blocks side by side (hypotheses
// emit "$" off their own block).
//
// Coupon accounting: draws from the uniform distribution over n points until
// all but `budget` distinct points have been seen.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mcpac/core.hpp"
#include "mcpac/learners.hpp"

namespace mcpac {

// Membership and consistency queries for the nested-subset family, without
// enumerating its (typically astronomical) member list.
class CantorFamily : public HypothesisClass {
 public:
  CantorFamily(const CantorParams& params, std::shared_ptr<LabelSpace> space);

  int domain_size() const override { return params_.domain_size; }
  std::shared_ptr<LabelSpace> space() const override { return space_; }
  bool is_explicit() const override { return false; }
  std::size_t size() const override;                       // always throws
  const Hypothesis& at(std::size_t index) const override;  // always throws
  bool contains(const Hypothesis& h) const override;
  std::optional<Hypothesis> find_consistent(const TrainingSequence& sample) const override;

  const CantorParams& params() const { return params_; }
  LabelId star() const { return star_; }

 private:
  CantorParams params_;
  std::shared_ptr<LabelSpace> space_;
  LabelId star_ = 0;
};

struct CantorInstance {
  CantorParams params;
  double epsilon = 0.0;
  std::shared_ptr<LabelSpace> space;
  LabelId star = 0;
  Hypothesis target;            // the all-star hypothesis
  LabeledDistribution hard;     // uniform over the domain, labeled "*"
  std::shared_ptr<CantorFamily> family;
  std::vector<std::string> warnings;
};

// Guarantees for the hard instance are proved for small epsilon; instances
// with larger epsilon are produced with a warning attached.
inline constexpr double kHardInstanceEpsilonBound = 0.01;

// Domain size ceil(budget / (4 * epsilon)). InvalidInputError when epsilon
// is so large the domain could not contain A.
CantorInstance cantor_instance(int budget, double epsilon);

// Same instance with the domain size pinned; epsilon is back-filled as
// budget / (4 * domain_size) for reporting.
CantorInstance cantor_instance_sized(int budget, int domain_size);

// Materializes all subsets with |A| <= budget, sizes ascending and
// lexicographic within a size, the all-star hypothesis first. OverCapError
// when the member count exceeds max_members.
std::shared_ptr<ExplicitClass> cantor_explicit(int budget, int domain_size,
                                               std::size_t max_members = 10000);

struct WitnessInstance {
  int d = 0;          // domain size, a perfect square
  int root = 0;       // sqrt(d) = number of star points per hypothesis
  std::shared_ptr<ExplicitClass> cls;
  LabelId star = 0;
};

WitnessInstance properness_witness(int d, std::size_t max_members = 100000);

// Uniform over the star points of hypothesis `index`, labeled "*"; the
// realizable distribution that hypothesis induces.
LabeledDistribution witness_distribution(const WitnessInstance& instance, std::size_t index);

// Two witness blocks over a shared domain [1 .. d1 + d2]; each hypothesis
// emits "$" everywhere off its own block.
std::shared_ptr<ExplicitClass> witness_composite(int d1, int d2,
                                                 std::size_t max_members = 100000);

// The two constant binary hypotheses over 1..domain_size.
std::shared_ptr<ExplicitClass> two_constant_class(int domain_size);

// Draws until domain_size - budget distinct points have appeared; returns
// the number of draws. Requires 0 <= budget < domain_size.
long long coupon_trial(int domain_size, int budget, RandomSource& rng);
long long coupon_trial(const CantorInstance& instance, RandomSource& rng);

// n * sum_{i=budget+1}^{n} 1/i  (exact expectation of coupon_trial).
double coupon_exact_mean(int domain_size, int budget);
// n * ln((n + 1) / (budget + 1))  (lower bound on the expectation).
double coupon_mean_lower_bound(int domain_size, int budget);
// n * sum_{i=budget+1}^{n} (n - i) / i^2  (exact variance).
double coupon_exact_variance(int domain_size, int budget);
// n^2 / budget  (upper bound on the variance; budget >= 1).
double coupon_variance_bound(int domain_size, int budget);

}  // namespace mcpac
