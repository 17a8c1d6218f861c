#include "mcpac/aggregation.hpp"

#include <algorithm>
#include <unordered_map>

namespace mcpac {

namespace {

std::vector<LabelId> collect_votes(const std::vector<Hypothesis>& voters, Point x) {
  if (voters.empty()) throw InvalidInputError("majority_vote needs at least one voter");
  std::vector<LabelId> votes;
  votes.reserve(voters.size());
  for (const auto& h : voters) votes.push_back(h(x));
  return votes;
}

LabelId decide(const LabelSpace& space, const std::vector<LabelId>& votes, TiePolicy policy) {
  std::unordered_map<LabelId, int> counts;
  for (LabelId v : votes) ++counts[v];
  int best = 0;
  for (const auto& [label, count] : counts) {
    (void)label;
    best = std::max(best, count);
  }
  // Tied leaders in first-vote order keeps everything deterministic.
  std::vector<LabelId> leaders;
  for (LabelId v : votes) {
    if (counts[v] == best && std::find(leaders.begin(), leaders.end(), v) == leaders.end()) {
      leaders.push_back(v);
    }
  }
  if (leaders.size() == 1) return leaders.front();
  switch (policy) {
    case TiePolicy::IDK:
      return kBottom;
    case TiePolicy::FIRST_VOTER:
      return votes.front();
    case TiePolicy::LABEL_ORDER: {
      LabelId smallest = leaders.front();
      for (std::size_t i = 1; i < leaders.size(); ++i) {
        if (space.label_less(leaders[i], smallest)) smallest = leaders[i];
      }
      return smallest;
    }
  }
  throw InvalidInputError("unknown tie policy");
}

}  // namespace

LabelId majority_vote(const LabelSpace& space, const std::vector<Hypothesis>& voters,
                      Point x, TiePolicy policy) {
  return decide(space, collect_votes(voters, x), policy);
}

double majority_error_exact(const LabelSpace& space, const std::vector<Hypothesis>& voters,
                            const LabeledDistribution& d, TiePolicy policy) {
  if (voters.empty()) throw InvalidInputError("majority_error_exact needs at least one voter");
  double err = 0.0;
  for (const auto& w : d.support()) {
    if (decide(space, collect_votes(voters, w.x), policy) != w.y) err += w.mass;
  }
  return err;
}

double half_vote_error_exact(const std::vector<Hypothesis>& voters,
                             const LabeledDistribution& d) {
  if (voters.empty()) throw InvalidInputError("half_vote_error_exact needs at least one voter");
  double err = 0.0;
  auto n = static_cast<long long>(voters.size());
  for (const auto& w : d.support()) {
    long long correct = 0;
    for (const auto& h : voters) {
      if (h(w.x) == w.y) ++correct;
    }
    if (2 * correct <= n) err += w.mass;
  }
  return err;
}

double list_error_exact(const std::vector<Hypothesis>& voters,
                        const LabeledDistribution& d) {
  if (voters.empty()) throw InvalidInputError("list_error_exact needs at least one voter");
  double err = 0.0;
  for (const auto& w : d.support()) {
    bool hit = false;
    for (const auto& h : voters) {
      if (h(w.x) == w.y) {
        hit = true;
        break;
      }
    }
    if (!hit) err += w.mass;
  }
  return err;
}

double bottom_rate_exact(const LabelSpace& space, const std::vector<Hypothesis>& voters,
                         const LabeledDistribution& d) {
  if (voters.empty()) throw InvalidInputError("bottom_rate_exact needs at least one voter");
  double rate = 0.0;
  for (const auto& w : d.support()) {
    if (decide(space, collect_votes(voters, w.x), TiePolicy::IDK) == kBottom) rate += w.mass;
  }
  return rate;
}

}  // namespace mcpac
