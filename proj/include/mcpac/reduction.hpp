// Product-space binarization: a multiclass hypothesis h over X becomes the
// binary indicator h_bar(x, y) = [h(x) == y] over X x Y. The map preserves
// class size, turns a multiclass label-consistency question into a binary
// one, and the VC dimension of the image class equals the graph dimension of
// the original class.
//
// Bar points are flattened 1-based: (x, y) -> (x - 1) * k + y + 1, where k is
// the label-space size captured in the context.
//
// Materializing the image class costs |X| * |Y| cells and is capped; for
// larger products use lifted_half_vote_error, which evaluates the binarized
// ensemble's abstaining-majority error directly from the multiclass voters.

#pragma once

#include <memory>
#include <utility>

#include "mcpac/core.hpp"

namespace mcpac {

struct BarContext {
  int n = 0;  // |X|
  int k = 0;  // |Y| snapshot
  std::shared_ptr<LabelSpace> source_space;
  std::shared_ptr<LabelSpace> bar_space;  // atoms "0", "1"
  LabelId zero = 0;
  LabelId one = 1;

  int bar_domain_size() const { return n * k; }
  Point bar_point(Point x, LabelId y) const;
  Example unbar_point(Point bar_x) const;  // x in .x, label id in .y
};

// Captures the product geometry of cls; OverCapError when |X| * |Y| exceeds
// max_product.
BarContext make_bar_context(const HypothesisClass& cls, std::size_t max_product = 100000);

// Dense binary row of h over the product domain.
Hypothesis bar_hypothesis(const Hypothesis& h, const BarContext& ctx);

// Image class {h_bar : h in cls}, in enumeration order.
std::shared_ptr<ExplicitClass> bar_class(const ExplicitClass& cls, const BarContext& ctx);

// Pushes mass from (x, y) to the bar point of (x, y) labeled "1".
LabeledDistribution lift_distribution(const LabeledDistribution& d, const BarContext& ctx);

// The sample (x_i, y_i) relabeled onto the product domain with bit 1.
TrainingSequence lift_sequence(const TrainingSequence& sample, const BarContext& ctx);

// Wraps a multiclass learner into one over the product domain: the bit
// column of the lifted sample is discarded, the inner learner runs on the
// recovered (x, y) pairs, and its output is binarized.
LearnerFn bar_learner(const LearnerFn& inner, const BarContext& ctx);

// Error of the abstaining majority of the binarized voters under the lifted
// distribution, computed without materializing the product: at a lifted
// point the bar votes are [voter(x) == y] against truth 1, so the majority
// errs exactly when at most half the voters agree with y.
double lifted_half_vote_error(const std::vector<Hypothesis>& voters,
                              const LabeledDistribution& d);

}  // namespace mcpac
