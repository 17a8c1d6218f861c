#pragma once

#include <optional>
#include <vector>

#include "mcpac/core.hpp"
#include "mcpac/learners.hpp"

namespace mcpac {

// prop(f): the size of the smallest subset of the class that covers f, where
// hypothesis h covers point x iff h(x) = f(x). No finite cover exists exactly
// when some point is matched by no hypothesis at all; `value` is empty then.
struct PropernessResult {
  std::optional<int> value;
  std::vector<std::size_t> cover;  // indices into the class, ascending
};

// Minimum cover by branch and bound: points are attacked rarest-candidates
// first, the greedy cover seeds the incumbent, and branches that cannot beat
// it are cut by a coverage-per-hypothesis bound. Every returned cover is
// re-verified pointwise before it leaves this module.
PropernessResult properness_exact(const Hypothesis& f, const ExplicitClass& cls);

// Greedy max-coverage cover; an upper bound on the exact value.
PropernessResult properness_greedy(const Hypothesis& f, const ExplicitClass& cls);

// Max of properness_exact(A(S)) over the supplied samples: a certified lower
// bound on the learner's properness (the true value takes a supremum over all
// realizable samples, which no finite corpus can exhaust). Empty optional
// means some output had no finite cover. InvalidInputError on a sample no
// class member is consistent with.
std::optional<int> learner_properness(const Learner& learner, const ExplicitClass& cls,
                                      const std::vector<TrainingSequence>& samples);

}  // namespace mcpac
