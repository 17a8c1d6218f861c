// Learners: canonical ERM over explicit classes and the adversarial ERM for
// the nested-subset ("Cantor") families.
//
// erm_bad_cantor is an empirical risk minimizer that is deliberately
// unhelpful: given an all-star sample it returns the hypothesis h_A whose
// set A consists of the `budget` smallest unseen points, i.e. it commits to
// wrong predictions on exactly the part of the domain the sample cannot
// rule out. It stays a legitimate ERM: the returned hypothesis is always a
// family member consistent with the sample.

#pragma once

#include <memory>
#include <string>

#include "mcpac/core.hpp"

namespace mcpac {

struct Learner {
  std::string name;
  bool proper = false;  // outputs stay inside the class the learner targets
  LearnerFn fn;
};

// First hypothesis in the class's stable enumeration order consistent with
// the sample; NoConsistentHypothesisError when none is.
Hypothesis erm_first_consistent(const ExplicitClass& cls, const TrainingSequence& sample);

// Parameters of a nested-subset family over points 1..domain_size: members
// are all h_A with |A| <= budget, where h_A maps A to the set label "A" and
// everything else to the atom "*".
struct CantorParams {
  int budget = 1;      // maximum |A|
  int domain_size = 1; // |X|
};

// The adversarial ERM described above. Every sample label must be the star
// atom (InvalidInputError otherwise); sample points must lie in the domain.
// When fewer than `budget` points are unseen, A is the whole unseen set.
Hypothesis erm_bad_cantor(const CantorParams& params, LabelSpace& space,
                          const TrainingSequence& sample);

Learner make_erm_learner(std::shared_ptr<const ExplicitClass> cls);
Learner make_bad_cantor_learner(const CantorParams& params,
                                std::shared_ptr<LabelSpace> space);

}  // namespace mcpac
