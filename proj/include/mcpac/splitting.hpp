// Index-splitting schemes: plans that carve a training sequence of length m
// into subsequences purely by position. A plan never looks at the payload,
// so the same plan can be replayed against any sequence of the same length
// (in particular against a relabeled copy).
//
// Schemes:
//   * hanneke_split: recursive 3-way ensemble. With quarters of size q =
//     floor(|S|/4), the head of size |S| - 3q recurses while each branch
//     withholds one quarter and appends the other two to the carried tail;
//     sequences of length <= 3 stop the recursion. Subsequence count obeys
//     count(m) = 1 for m <= 3, else 3 * count(m - 3*floor(m/4)).
//   * bagging_split: ceil(18 * ln(2m/delta)) bags, each floor(rho * m)
//     positions drawn i.i.d. uniform from [1..m].
//   * three_split: three disjoint consecutive blocks of floor(m/3); the
//     remainder is unused.
//   * single_split: the whole sequence as one subsequence (no ensemble).
//
// Indices are 1-based positions into [1..m].

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcpac/core.hpp"

namespace mcpac {

struct SplitPlan {
  std::string scheme;
  int m = 0;
  std::vector<std::vector<int>> index_sequences;

  // Bagging parameters, echoed for reporting; unused by other schemes.
  double rho = 0.0;
  double delta = 0.0;

  friend bool operator==(const SplitPlan& a, const SplitPlan& b) {
    return a.scheme == b.scheme && a.m == b.m && a.index_sequences == b.index_sequences;
  }
};

SplitPlan hanneke_split(int m);                 // m >= 1
SplitPlan three_split(int m);                   // m >= 3
SplitPlan single_split(int m);                  // m >= 0
// m >= 1, rho in [0.02, 1], delta in (0, 1). Draws come from rng.
SplitPlan bagging_split(int m, double rho, double delta, RandomSource& rng);

// Subsequence counts without building a plan.
long long hanneke_count(long long m);
int bagging_count(int m, double delta);

// Applies the plan's index sequences to a sequence of length plan.m.
std::vector<TrainingSequence> materialize(const SplitPlan& plan,
                                          const TrainingSequence& sample);

}  // namespace mcpac
