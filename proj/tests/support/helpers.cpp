#include "helpers.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

namespace mcpac::testing {

std::shared_ptr<ExplicitClass> full_binary_cube(int n) {
  auto space = std::make_shared<LabelSpace>();
  LabelId zero = space->intern_atom("0");
  LabelId one = space->intern_atom("1");
  std::vector<Hypothesis> hyps;
  for (int bits = 0; bits < (1 << n); ++bits) {
    std::vector<LabelId> row(static_cast<std::size_t>(n), zero);
    for (int i = 0; i < n; ++i) {
      if ((bits >> i) & 1) row[static_cast<std::size_t>(i)] = one;
    }
    hyps.push_back(Hypothesis::dense(std::move(row)));
  }
  return std::make_shared<ExplicitClass>(space, n, std::move(hyps));
}

std::shared_ptr<ExplicitClass> random_class(RandomSource& rng, int domain_size,
                                            int label_count, int hyp_count) {
  auto space = std::make_shared<LabelSpace>();
  std::vector<LabelId> labels;
  for (int i = 1; i <= label_count; ++i) {
    labels.push_back(space->intern_atom("y" + std::to_string(i)));
  }
  std::set<std::vector<LabelId>> rows;
  while (static_cast<int>(rows.size()) < hyp_count) {
    std::vector<LabelId> row;
    for (int x = 0; x < domain_size; ++x) {
      row.push_back(labels[rng.uniform_below(labels.size())]);
    }
    rows.insert(std::move(row));
  }
  std::vector<Hypothesis> hyps;
  for (const auto& row : rows) hyps.push_back(Hypothesis::dense(row));
  return std::make_shared<ExplicitClass>(space, domain_size, std::move(hyps));
}

TrainingSequence random_realizable_sample(const ExplicitClass& cls, RandomSource& rng, int m) {
  const Hypothesis& h = cls.at(rng.uniform_below(cls.size()));
  TrainingSequence sample;
  for (int i = 0; i < m; ++i) {
    Point x = static_cast<Point>(rng.uniform_below(static_cast<std::uint64_t>(cls.domain_size()))) + 1;
    sample.push_back(Example{x, h(x)});
  }
  return sample;
}

std::optional<int> exhaustive_min_cover(const Hypothesis& f, const ExplicitClass& cls) {
  int n = cls.domain_size();
  std::size_t h = cls.size();
  auto covers = [&](unsigned long long mask) {
    for (Point x = 1; x <= n; ++x) {
      bool matched = false;
      for (std::size_t i = 0; i < h && !matched; ++i) {
        if ((mask >> i) & 1ULL) matched = cls.at(i)(x) == f(x);
      }
      if (!matched) return false;
    }
    return true;
  };
  int best = -1;
  for (unsigned long long mask = 0; mask < (1ULL << h); ++mask) {
    int size = std::popcount(mask);
    if (best >= 0 && size >= best) continue;
    if (covers(mask)) best = size;
  }
  if (best < 0) return std::nullopt;
  return best;
}

bool ds_fixpoint_randomized(const ExplicitClass& cls, const std::vector<Point>& points,
                            RandomSource& rng) {
  std::set<std::vector<LabelId>> behaviors;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    std::vector<LabelId> row;
    for (Point x : points) row.push_back(cls.at(i)(x));
    behaviors.insert(std::move(row));
  }
  std::vector<std::vector<LabelId>> pool(behaviors.begin(), behaviors.end());
  auto violates = [&](std::size_t idx) {
    for (std::size_t c = 0; c < points.size(); ++c) {
      bool has_neighbor = false;
      for (std::size_t j = 0; j < pool.size() && !has_neighbor; ++j) {
        if (j == idx) continue;
        int diffs = 0;
        std::size_t where = 0;
        for (std::size_t k = 0; k < points.size(); ++k) {
          if (pool[j][k] != pool[idx][k]) {
            ++diffs;
            where = k;
          }
        }
        has_neighbor = diffs == 1 && where == c;
      }
      if (!has_neighbor) return true;
    }
    return false;
  };
  while (!pool.empty()) {
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (violates(i)) bad.push_back(i);
    }
    if (bad.empty()) return true;
    std::size_t victim = bad[rng.uniform_below(bad.size())];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  return false;
}

}  // namespace mcpac::testing
