#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mcpac/core.hpp"

namespace mcpac::testing {

// All 2^n binary hypotheses over 1..n, atoms "0" and "1".
std::shared_ptr<ExplicitClass> full_binary_cube(int n);

// A class of hyp_count distinct uniformly random rows over 1..domain_size
// with label atoms "y1".."y<label_count>". hyp_count must not exceed the
// number of distinct rows.
std::shared_ptr<ExplicitClass> random_class(RandomSource& rng, int domain_size,
                                            int label_count, int hyp_count);

// m examples labeled by a uniformly chosen member of cls, points uniform.
TrainingSequence random_realizable_sample(const ExplicitClass& cls, RandomSource& rng, int m);

// Exhaustive minimum-cover oracle (h covers x iff h(x) = f(x)); empty when
// no cover exists. Meant for |cls| small enough to enumerate all subsets.
std::optional<int> exhaustive_min_cover(const Hypothesis& f, const ExplicitClass& cls);

// Behavior-deletion fixpoint reached by deleting one uniformly random
// violating behavior at a time; an order-randomized cross-check for
// ds_shatters.
bool ds_fixpoint_randomized(const ExplicitClass& cls, const std::vector<Point>& points,
                            RandomSource& rng);

}  // namespace mcpac::testing
