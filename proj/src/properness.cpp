#include "mcpac/properness.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mcpac {

namespace {

using Mask = std::vector<std::uint64_t>;

struct CoverSets {
  int n = 0;
  std::size_t words = 0;
  Mask full;
  std::vector<Mask> covers;                        // per hypothesis
  std::vector<std::vector<std::size_t>> candidates;  // per point, hypotheses matching f there
  int max_single = 0;                              // largest |covers[h]|
};

int popcount(const Mask& m) {
  int total = 0;
  for (std::uint64_t w : m) total += std::popcount(w);
  return total;
}

int gain(const Mask& cover, const Mask& covered) {
  int total = 0;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    total += std::popcount(cover[i] & ~covered[i]);
  }
  return total;
}

bool covers_all(const Mask& covered, const Mask& full) {
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if ((covered[i] & full[i]) != full[i]) return false;
  }
  return true;
}

CoverSets build_cover_sets(const Hypothesis& f, const ExplicitClass& cls) {
  if (f.domain_size() != cls.domain_size()) {
    throw DomainMismatchError("function is over " + std::to_string(f.domain_size()) +
                              " points, class over " + std::to_string(cls.domain_size()));
  }
  CoverSets cs;
  cs.n = cls.domain_size();
  cs.words = static_cast<std::size_t>((cs.n + 63) / 64);
  cs.full.assign(cs.words, 0);
  for (int i = 0; i < cs.n; ++i) {
    cs.full[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64);
  }
  cs.covers.reserve(cls.size());
  cs.candidates.assign(static_cast<std::size_t>(cs.n), {});
  for (std::size_t h = 0; h < cls.size(); ++h) {
    Mask m(cs.words, 0);
    const Hypothesis& hyp = cls.at(h);
    for (Point x = 1; x <= cs.n; ++x) {
      if (hyp(x) == f(x)) {
        int i = x - 1;
        m[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64);
        cs.candidates[static_cast<std::size_t>(i)].push_back(h);
      }
    }
    cs.max_single = std::max(cs.max_single, popcount(m));
    cs.covers.push_back(std::move(m));
  }
  return cs;
}

bool has_uncoverable_point(const CoverSets& cs) {
  return std::any_of(cs.candidates.begin(), cs.candidates.end(),
                     [](const auto& c) { return c.empty(); });
}

void verify_cover(const Hypothesis& f, const ExplicitClass& cls,
                  const std::vector<std::size_t>& cover) {
  for (Point x = 1; x <= cls.domain_size(); ++x) {
    bool matched = std::any_of(cover.begin(), cover.end(),
                               [&](std::size_t h) { return cls.at(h)(x) == f(x); });
    if (!matched) {
      throw std::logic_error("cover fails to match the function at point " + std::to_string(x));
    }
  }
}

std::vector<std::size_t> greedy_cover(const CoverSets& cs) {
  Mask covered(cs.words, 0);
  std::vector<std::size_t> cover;
  while (!covers_all(covered, cs.full)) {
    std::size_t best_h = 0;
    int best_gain = -1;
    for (std::size_t h = 0; h < cs.covers.size(); ++h) {
      int g = gain(cs.covers[h], covered);
      if (g > best_gain) {
        best_gain = g;
        best_h = h;
      }
    }
    cover.push_back(best_h);
    for (std::size_t i = 0; i < cs.words; ++i) covered[i] |= cs.covers[best_h][i];
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

struct BranchAndBound {
  const CoverSets& cs;
  std::vector<std::size_t> best;
  std::vector<std::size_t> chosen;

  void recurse(Mask& covered) {
    if (covers_all(covered, cs.full)) {
      if (chosen.size() < best.size()) best = chosen;
      return;
    }
    int remaining = 0;
    int pick = -1;
    std::size_t pick_width = 0;
    for (int i = 0; i < cs.n; ++i) {
      bool is_covered =
          (covered[static_cast<std::size_t>(i) / 64] >> (i % 64)) & std::uint64_t{1};
      if (is_covered) continue;
      ++remaining;
      std::size_t width = cs.candidates[static_cast<std::size_t>(i)].size();
      if (pick < 0 || width < pick_width) {
        pick = i;
        pick_width = width;
      }
    }
    std::size_t floor_needed =
        chosen.size() +
        static_cast<std::size_t>((remaining + cs.max_single - 1) / cs.max_single);
    if (floor_needed >= best.size()) return;
    for (std::size_t h : cs.candidates[static_cast<std::size_t>(pick)]) {
      Mask saved = covered;
      for (std::size_t i = 0; i < cs.words; ++i) covered[i] |= cs.covers[h][i];
      chosen.push_back(h);
      recurse(covered);
      chosen.pop_back();
      covered = std::move(saved);
    }
  }
};

}  // namespace

PropernessResult properness_exact(const Hypothesis& f, const ExplicitClass& cls) {
  CoverSets cs = build_cover_sets(f, cls);
  if (has_uncoverable_point(cs)) return PropernessResult{std::nullopt, {}};
  BranchAndBound search{cs, greedy_cover(cs), {}};
  Mask covered(cs.words, 0);
  search.recurse(covered);
  std::sort(search.best.begin(), search.best.end());
  verify_cover(f, cls, search.best);
  return PropernessResult{static_cast<int>(search.best.size()), std::move(search.best)};
}

PropernessResult properness_greedy(const Hypothesis& f, const ExplicitClass& cls) {
  CoverSets cs = build_cover_sets(f, cls);
  if (has_uncoverable_point(cs)) return PropernessResult{std::nullopt, {}};
  std::vector<std::size_t> cover = greedy_cover(cs);
  verify_cover(f, cls, cover);
  return PropernessResult{static_cast<int>(cover.size()), std::move(cover)};
}

std::optional<int> learner_properness(const Learner& learner, const ExplicitClass& cls,
                                      const std::vector<TrainingSequence>& samples) {
  int worst = 0;
  for (const auto& sample : samples) {
    if (!cls.find_consistent(sample)) {
      throw InvalidInputError("sample is not realizable by the class");
    }
    Hypothesis out = learner.fn(sample);
    PropernessResult r = properness_exact(out, cls);
    if (!r.value) return std::nullopt;
    worst = std::max(worst, *r.value);
  }
  return worst;
}

}  // namespace mcpac
