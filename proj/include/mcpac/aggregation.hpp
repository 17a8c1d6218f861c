// Vote aggregation over an ensemble of hypotheses, and exact error masses of
// the aggregate under a finite-support distribution.
//
// majority_vote returns the strictly most popular label when one exists
// (votes counted with multiplicity). Otherwise the tie policy decides:
//   * IDK         -> kBottom (the maj_bottom rule)
//   * FIRST_VOTER -> whatever the first voter predicted
//   * LABEL_ORDER -> the smallest tied leader in canonical label order
// kBottom never equals a true label, so an IDK tie always scores as an error.
//
// The three error measures obey, pointwise on the support,
//   list_error <= majority_error (any policy) <= half_vote_error:
// a strict majority for the truth forces every policy to output it, and a
// correct majority output must have been somebody's vote.

#pragma once

#include <vector>

#include "mcpac/core.hpp"

namespace mcpac {

enum class TiePolicy { IDK, FIRST_VOTER, LABEL_ORDER };

// Aggregate prediction at x; voters must be nonempty. May return kBottom
// (IDK policy only).
LabelId majority_vote(const LabelSpace& space, const std::vector<Hypothesis>& voters,
                      Point x, TiePolicy policy);

// P[majority_vote(x) != y] under d.
double majority_error_exact(const LabelSpace& space, const std::vector<Hypothesis>& voters,
                            const LabeledDistribution& d, TiePolicy policy);

// P[at most half of the voters predict y] under d. This is exactly the error
// of the abstaining majority over the one-vs-all binarized voters, so it
// upper-bounds every majority_error above.
double half_vote_error_exact(const std::vector<Hypothesis>& voters,
                             const LabeledDistribution& d);

// P[no voter predicts y] under d.
double list_error_exact(const std::vector<Hypothesis>& voters,
                        const LabeledDistribution& d);

// P[the IDK majority abstains] under d.
double bottom_rate_exact(const LabelSpace& space, const std::vector<Hypothesis>& voters,
                         const LabeledDistribution& d);

}  // namespace mcpac
