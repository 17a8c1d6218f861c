#include "mcpac/learners.hpp"

#include <algorithm>

namespace mcpac {

Hypothesis erm_first_consistent(const ExplicitClass& cls, const TrainingSequence& sample) {
  auto found = cls.find_consistent(sample);
  if (!found) {
    throw NoConsistentHypothesisError("no hypothesis in the class is consistent with the sample");
  }
  return *found;
}

Hypothesis erm_bad_cantor(const CantorParams& params, LabelSpace& space,
                          const TrainingSequence& sample) {
  if (params.domain_size < 1) throw InvalidInputError("cantor family needs a nonempty domain");
  if (params.budget < 0 || params.budget > params.domain_size) {
    throw InvalidInputError("cantor budget must lie in [0, domain_size]");
  }
  LabelId star = space.intern_atom("*");
  std::vector<char> seen(static_cast<std::size_t>(params.domain_size) + 1, 0);
  for (const auto& e : sample) {
    if (e.x < 1 || e.x > params.domain_size) {
      throw DomainMismatchError("sample point " + std::to_string(e.x) +
                                " outside domain of size " + std::to_string(params.domain_size));
    }
    if (e.y != star) {
      throw InvalidInputError("erm_bad_cantor expects every sample label to be '*'");
    }
    seen[static_cast<std::size_t>(e.x)] = 1;
  }
  std::vector<Point> a;
  a.reserve(static_cast<std::size_t>(params.budget));
  for (Point x = 1; x <= params.domain_size && static_cast<int>(a.size()) < params.budget; ++x) {
    if (!seen[static_cast<std::size_t>(x)]) a.push_back(x);
  }
  LabelId inside = a.empty() ? star : space.intern_set(a);
  return Hypothesis::subset_rule(params.domain_size, std::move(a), inside, star);
}

Learner make_erm_learner(std::shared_ptr<const ExplicitClass> cls) {
  if (!cls) throw InvalidInputError("make_erm_learner needs a class");
  Learner learner;
  learner.name = "erm_first_consistent";
  learner.proper = true;
  learner.fn = [cls](const TrainingSequence& sample) {
    return erm_first_consistent(*cls, sample);
  };
  return learner;
}

Learner make_bad_cantor_learner(const CantorParams& params,
                                std::shared_ptr<LabelSpace> space) {
  if (!space) throw InvalidInputError("make_bad_cantor_learner needs a label space");
  if (params.domain_size < 1) throw InvalidInputError("cantor family needs a nonempty domain");
  if (params.budget < 0 || params.budget > params.domain_size) {
    throw InvalidInputError("cantor budget must lie in [0, domain_size]");
  }
  Learner learner;
  learner.name = "erm_bad_cantor";
  learner.proper = true;
  learner.fn = [params, space](const TrainingSequence& sample) {
    return erm_bad_cantor(params, *space, sample);
  };
  return learner;
}

}  // namespace mcpac
