#include "mcpac/splitting.hpp"

#include <cmath>

namespace mcpac {

namespace {

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// head recurses, each branch withholds one quarter and carries the other two.
void hanneke_recurse(const std::vector<int>& s, const std::vector<int>& tail,
                     std::vector<std::vector<int>>& out) {
  if (s.size() <= 3) {
    out.push_back(concat(s, tail));
    return;
  }
  std::size_t q = s.size() / 4;
  std::size_t head = s.size() - 3 * q;
  std::vector<int> s0(s.begin(), s.begin() + head);
  std::vector<int> s1(s.begin() + head, s.begin() + head + q);
  std::vector<int> s2(s.begin() + head + q, s.begin() + head + 2 * q);
  std::vector<int> s3(s.begin() + head + 2 * q, s.end());
  hanneke_recurse(s0, concat(concat(s2, s3), tail), out);
  hanneke_recurse(s0, concat(concat(s1, s3), tail), out);
  hanneke_recurse(s0, concat(concat(s1, s2), tail), out);
}

}  // namespace

SplitPlan hanneke_split(int m) {
  if (m < 1) throw InvalidInputError("hanneke_split needs m >= 1");
  std::vector<int> all(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i + 1;
  SplitPlan plan;
  plan.scheme = "hanneke";
  plan.m = m;
  hanneke_recurse(all, {}, plan.index_sequences);
  return plan;
}

SplitPlan three_split(int m) {
  if (m < 3) throw InvalidInputError("three_split needs m >= 3");
  int block = m / 3;
  SplitPlan plan;
  plan.scheme = "three";
  plan.m = m;
  for (int b = 0; b < 3; ++b) {
    std::vector<int> seq(static_cast<std::size_t>(block));
    for (int i = 0; i < block; ++i) seq[static_cast<std::size_t>(i)] = b * block + i + 1;
    plan.index_sequences.push_back(std::move(seq));
  }
  return plan;
}

SplitPlan single_split(int m) {
  if (m < 0) throw InvalidInputError("single_split needs m >= 0");
  SplitPlan plan;
  plan.scheme = "single";
  plan.m = m;
  std::vector<int> seq(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) seq[static_cast<std::size_t>(i)] = i + 1;
  plan.index_sequences.push_back(std::move(seq));
  return plan;
}

SplitPlan bagging_split(int m, double rho, double delta, RandomSource& rng) {
  if (m < 1) throw InvalidInputError("bagging_split needs m >= 1");
  if (!(rho >= 0.02 && rho <= 1.0)) {
    throw InvalidInputError("bagging_split needs rho in [0.02, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidInputError("bagging_split needs delta in (0, 1)");
  }
  int bags = bagging_count(m, delta);
  auto bag_size = static_cast<std::size_t>(std::floor(rho * static_cast<double>(m)));
  SplitPlan plan;
  plan.scheme = "bagging";
  plan.m = m;
  plan.rho = rho;
  plan.delta = delta;
  plan.index_sequences.reserve(static_cast<std::size_t>(bags));
  for (int b = 0; b < bags; ++b) {
    std::vector<int> seq(bag_size);
    for (std::size_t i = 0; i < bag_size; ++i) {
      seq[i] = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(m))) + 1;
    }
    plan.index_sequences.push_back(std::move(seq));
  }
  return plan;
}

long long hanneke_count(long long m) {
  if (m < 1) throw InvalidInputError("hanneke_count needs m >= 1");
  if (m <= 3) return 1;
  return 3 * hanneke_count(m - 3 * (m / 4));
}

int bagging_count(int m, double delta) {
  if (m < 1) throw InvalidInputError("bagging_count needs m >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidInputError("bagging_count needs delta in (0, 1)");
  }
  double raw = 18.0 * std::log(2.0 * static_cast<double>(m) / delta);
  return static_cast<int>(std::ceil(raw));
}

std::vector<TrainingSequence> materialize(const SplitPlan& plan,
                                          const TrainingSequence& sample) {
  if (plan.m != static_cast<int>(sample.size())) {
    throw InvalidInputError("plan was built for length " + std::to_string(plan.m) +
                            " but the sample has length " + std::to_string(sample.size()));
  }
  std::vector<TrainingSequence> parts;
  parts.reserve(plan.index_sequences.size());
  for (const auto& seq : plan.index_sequences) {
    TrainingSequence part;
    part.reserve(seq.size());
    for (int idx : seq) {
      if (idx < 1 || idx > plan.m) {
        throw InvalidInputError("plan index " + std::to_string(idx) + " outside [1.." +
                                std::to_string(plan.m) + "]");
      }
      part.push_back(sample[static_cast<std::size_t>(idx - 1)]);
    }
    parts.push_back(std::move(part));
  }
  return parts;
}

}  // namespace mcpac
