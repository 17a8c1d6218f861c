#include "mcpac/constructions.hpp"

#include <algorithm>
#include <cmath>

namespace mcpac {

namespace {

// ceil with a relative snap so quotients that are integers up to double
// rounding (e.g. 10 / (4 * 0.01)) do not get bumped one past the intent.
int ceil_snapped(double q) {
  double r = std::round(q);
  if (std::abs(q - r) <= 1e-9 * std::max(1.0, std::abs(q))) return static_cast<int>(r);
  return static_cast<int>(std::ceil(q));
}

bool first_combination(std::vector<Point>& combo, int n, int size) {
  if (size > n) return false;
  combo.resize(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) combo[static_cast<std::size_t>(i)] = i + 1;
  return true;
}

bool next_combination(std::vector<Point>& combo, int n) {
  int size = static_cast<int>(combo.size());
  for (int i = size - 1; i >= 0; --i) {
    if (combo[static_cast<std::size_t>(i)] < n - size + i + 1) {
      ++combo[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j) {
        combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

// Sum of binomials C(n, 0..budget) with an early exit above the cap.
std::size_t count_subsets_capped(int n, int budget, std::size_t cap) {
  unsigned long long total = 0;
  unsigned long long c = 1;  // C(n, 0)
  for (int k = 0; k <= budget; ++k) {
    if (k > 0) {
      // C(n, k) = C(n, k-1) * (n - k + 1) / k, exact at every step
      c = c * static_cast<unsigned long long>(n - k + 1) / static_cast<unsigned long long>(k);
    }
    total += c;
    if (total > cap) {
      throw OverCapError("explicit family would have more than " + std::to_string(cap) +
                         " members");
    }
  }
  return static_cast<std::size_t>(total);
}

}  // namespace

// ---------------------------------------------------------------------------
// CantorFamily

CantorFamily::CantorFamily(const CantorParams& params, std::shared_ptr<LabelSpace> space)
    : params_(params), space_(std::move(space)) {
  if (!space_) throw InvalidInputError("cantor family needs a label space");
  if (params_.domain_size < 1) throw InvalidInputError("cantor family needs a nonempty domain");
  if (params_.budget < 0 || params_.budget > params_.domain_size) {
    throw InvalidInputError("cantor budget must lie in [0, domain_size]");
  }
  star_ = space_->intern_atom("*");
}

std::size_t CantorFamily::size() const {
  throw InvalidInputError("implicit family does not enumerate; use contains/find_consistent");
}

const Hypothesis& CantorFamily::at(std::size_t) const {
  throw InvalidInputError("implicit family does not enumerate; use contains/find_consistent");
}

bool CantorFamily::contains(const Hypothesis& h) const {
  if (h.domain_size() != params_.domain_size) return false;
  std::vector<Point> a;
  LabelId inside = star_;
  if (h.is_subset_rule() && h.outside_label() == star_) {
    a = h.members();
    inside = h.inside_label();
  } else {
    std::vector<LabelId> row = h.to_row();
    for (Point x = 1; x <= params_.domain_size; ++x) {
      LabelId y = row[static_cast<std::size_t>(x - 1)];
      if (y == star_) continue;
      a.push_back(x);
      if (inside != star_ && inside != y) return false;
      inside = y;
    }
  }
  if (static_cast<int>(a.size()) > params_.budget) return false;
  if (a.empty()) return true;  // the all-star hypothesis
  Label want;
  want.is_set = true;
  want.elements = a;
  auto id = space_->find(want);
  return id.has_value() && *id == inside;
}

std::optional<Hypothesis> CantorFamily::find_consistent(const TrainingSequence& sample) const {
  std::optional<LabelId> set_label;
  for (const auto& e : sample) {
    if (e.x < 1 || e.x > params_.domain_size) {
      throw DomainMismatchError("sample point " + std::to_string(e.x) +
                                " outside domain of size " + std::to_string(params_.domain_size));
    }
    if (e.y == star_) continue;
    Label label = space_->at(e.y);
    if (!label.is_set) return std::nullopt;  // no member emits foreign atoms
    if (set_label && *set_label != e.y) return std::nullopt;
    set_label = e.y;
  }
  if (!set_label) {
    // Every label is star: the all-star hypothesis fits.
    return Hypothesis::subset_rule(params_.domain_size, {}, star_, star_);
  }
  Label label = space_->at(*set_label);
  const std::vector<Point>& a = label.elements;
  if (static_cast<int>(a.size()) > params_.budget) return std::nullopt;
  if (!a.empty() && (a.front() < 1 || a.back() > params_.domain_size)) return std::nullopt;
  for (const auto& e : sample) {
    bool in_a = std::binary_search(a.begin(), a.end(), e.x);
    if (e.y == star_ && in_a) return std::nullopt;
    if (e.y != star_ && !in_a) return std::nullopt;
  }
  return Hypothesis::subset_rule(params_.domain_size, a, *set_label, star_);
}

// ---------------------------------------------------------------------------
// Instances

namespace {

CantorInstance build_cantor_instance(int budget, int domain_size, double epsilon,
                                     std::vector<std::string> warnings) {
  auto space = std::make_shared<LabelSpace>();
  LabelId star = space->intern_atom("*");
  Hypothesis target = Hypothesis::subset_rule(domain_size, {}, star, star);
  LabeledDistribution hard = LabeledDistribution::uniform_over(domain_size, target);
  CantorParams params{budget, domain_size};
  return CantorInstance{params,
                        epsilon,
                        space,
                        star,
                        target,
                        std::move(hard),
                        std::make_shared<CantorFamily>(params, space),
                        std::move(warnings)};
}

}  // namespace

CantorInstance cantor_instance(int budget, double epsilon) {
  if (budget < 1) throw InvalidInputError("cantor instance needs budget >= 1");
  if (!(epsilon > 0.0) || epsilon >= 1.0) {
    throw InvalidInputError("cantor instance needs epsilon in (0, 1)");
  }
  std::vector<std::string> warnings;
  if (epsilon > kHardInstanceEpsilonBound) {
    warnings.push_back("epsilon " + std::to_string(epsilon) +
                       " is above 1/100; hard-instance guarantees assume small epsilon");
  }
  int domain_size = ceil_snapped(static_cast<double>(budget) / (4.0 * epsilon));
  if (domain_size < budget) {
    throw InvalidInputError("epsilon too large: domain would be smaller than the budget");
  }
  return build_cantor_instance(budget, domain_size, epsilon, std::move(warnings));
}

CantorInstance cantor_instance_sized(int budget, int domain_size) {
  if (budget < 1) throw InvalidInputError("cantor instance needs budget >= 1");
  if (domain_size < budget) {
    throw InvalidInputError("cantor instance needs domain_size >= budget");
  }
  double epsilon = static_cast<double>(budget) / (4.0 * static_cast<double>(domain_size));
  std::vector<std::string> warnings;
  if (epsilon > kHardInstanceEpsilonBound) {
    warnings.push_back("epsilon " + std::to_string(epsilon) +
                       " is above 1/100; hard-instance guarantees assume small epsilon");
  }
  return build_cantor_instance(budget, domain_size, epsilon, std::move(warnings));
}

std::shared_ptr<ExplicitClass> cantor_explicit(int budget, int domain_size,
                                               std::size_t max_members) {
  if (domain_size < 1) throw InvalidInputError("cantor_explicit needs a nonempty domain");
  if (budget < 0 || budget > domain_size) {
    throw InvalidInputError("cantor_explicit needs budget in [0, domain_size]");
  }
  std::size_t total = count_subsets_capped(domain_size, budget, max_members);
  auto space = std::make_shared<LabelSpace>();
  LabelId star = space->intern_atom("*");
  std::vector<Hypothesis> hyps;
  hyps.reserve(total);
  hyps.push_back(Hypothesis::dense(
      std::vector<LabelId>(static_cast<std::size_t>(domain_size), star)));
  for (int size = 1; size <= budget; ++size) {
    std::vector<Point> combo;
    if (!first_combination(combo, domain_size, size)) break;
    do {
      LabelId inside = space->intern_set(combo);
      std::vector<LabelId> row(static_cast<std::size_t>(domain_size), star);
      for (Point x : combo) row[static_cast<std::size_t>(x - 1)] = inside;
      hyps.push_back(Hypothesis::dense(std::move(row)));
    } while (next_combination(combo, domain_size));
  }
  return std::make_shared<ExplicitClass>(space, domain_size, std::move(hyps));
}

WitnessInstance properness_witness(int d, std::size_t max_members) {
  if (d < 1) throw InvalidInputError("properness witness needs d >= 1");
  int root = static_cast<int>(std::llround(std::sqrt(static_cast<double>(d))));
  if (root * root != d) {
    throw InvalidInputError("properness witness needs d to be a perfect square");
  }
  int a_size = d - root;
  auto space = std::make_shared<LabelSpace>();
  LabelId star = space->intern_atom("*");
  std::vector<Hypothesis> hyps;
  if (a_size == 0) {
    hyps.push_back(
        Hypothesis::dense(std::vector<LabelId>(static_cast<std::size_t>(d), star)));
  } else {
    std::vector<Point> combo;
    first_combination(combo, d, a_size);
    do {
      LabelId inside = space->intern_set(combo);
      std::vector<LabelId> row(static_cast<std::size_t>(d), star);
      for (Point x : combo) row[static_cast<std::size_t>(x - 1)] = inside;
      hyps.push_back(Hypothesis::dense(std::move(row)));
      if (hyps.size() > max_members) {
        throw OverCapError("witness class would have more than " +
                           std::to_string(max_members) + " members");
      }
    } while (next_combination(combo, d));
  }
  WitnessInstance instance;
  instance.d = d;
  instance.root = root;
  instance.cls = std::make_shared<ExplicitClass>(space, d, std::move(hyps));
  instance.star = star;
  return instance;
}

LabeledDistribution witness_distribution(const WitnessInstance& instance, std::size_t index) {
  if (!instance.cls) throw InvalidInputError("witness instance has no class");
  const Hypothesis& h = instance.cls->at(index);
  std::vector<WeightedExample> support;
  for (Point x = 1; x <= instance.d; ++x) {
    if (h(x) == instance.star) support.push_back(WeightedExample{x, instance.star, 0.0});
  }
  if (support.empty()) throw InvalidInputError("witness hypothesis has no star points");
  double mass = 1.0 / static_cast<double>(support.size());
  for (auto& w : support) w.mass = mass;
  return LabeledDistribution(std::move(support));
}

std::shared_ptr<ExplicitClass> witness_composite(int d1, int d2, std::size_t max_members) {
  WitnessInstance first = properness_witness(d1, max_members);
  WitnessInstance second = properness_witness(d2, max_members);
  if (first.cls->size() + second.cls->size() > max_members) {
    throw OverCapError("composite witness class would have more than " +
                       std::to_string(max_members) + " members");
  }
  int n = d1 + d2;
  auto space = std::make_shared<LabelSpace>();
  LabelId star = space->intern_atom("*");
  LabelId dollar = space->intern_atom("$");
  std::vector<Hypothesis> hyps;
  hyps.reserve(first.cls->size() + second.cls->size());
  for (std::size_t i = 0; i < first.cls->size(); ++i) {
    const Hypothesis& h = first.cls->at(i);
    std::vector<LabelId> row(static_cast<std::size_t>(n), dollar);
    std::vector<Point> a;
    for (Point x = 1; x <= d1; ++x) {
      if (h(x) != first.star) a.push_back(x);
    }
    LabelId inside = a.empty() ? star : space->intern_set(a);
    for (Point x = 1; x <= d1; ++x) {
      bool in_a = std::binary_search(a.begin(), a.end(), x);
      row[static_cast<std::size_t>(x - 1)] = in_a ? inside : star;
    }
    hyps.push_back(Hypothesis::dense(std::move(row)));
  }
  for (std::size_t i = 0; i < second.cls->size(); ++i) {
    const Hypothesis& h = second.cls->at(i);
    std::vector<LabelId> row(static_cast<std::size_t>(n), dollar);
    std::vector<Point> b;
    for (Point x = 1; x <= d2; ++x) {
      if (h(x) != second.star) b.push_back(x + d1);  // global numbering
    }
    LabelId inside = b.empty() ? star : space->intern_set(b);
    for (Point x = d1 + 1; x <= n; ++x) {
      bool in_b = std::binary_search(b.begin(), b.end(), x);
      row[static_cast<std::size_t>(x - 1)] = in_b ? inside : star;
    }
    hyps.push_back(Hypothesis::dense(std::move(row)));
  }
  return std::make_shared<ExplicitClass>(space, n, std::move(hyps));
}

std::shared_ptr<ExplicitClass> two_constant_class(int domain_size) {
  if (domain_size < 1) throw InvalidInputError("two_constant_class needs a nonempty domain");
  auto space = std::make_shared<LabelSpace>();
  LabelId zero = space->intern_atom("0");
  LabelId one = space->intern_atom("1");
  std::vector<Hypothesis> hyps;
  hyps.push_back(Hypothesis::dense(std::vector<LabelId>(static_cast<std::size_t>(domain_size), zero)));
  hyps.push_back(Hypothesis::dense(std::vector<LabelId>(static_cast<std::size_t>(domain_size), one)));
  return std::make_shared<ExplicitClass>(space, domain_size, std::move(hyps));
}

// ---------------------------------------------------------------------------
// Coupon accounting

long long coupon_trial(int domain_size, int budget, RandomSource& rng) {
  if (domain_size < 1) throw InvalidInputError("coupon_trial needs a nonempty domain");
  if (budget < 0 || budget >= domain_size) {
    throw InvalidInputError("coupon_trial needs budget in [0, domain_size)");
  }
  int target = domain_size - budget;
  std::vector<char> seen(static_cast<std::size_t>(domain_size) + 1, 0);
  int distinct = 0;
  long long draws = 0;
  while (distinct < target) {
    auto x = static_cast<std::size_t>(rng.uniform_below(static_cast<std::uint64_t>(domain_size))) + 1;
    ++draws;
    if (!seen[x]) {
      seen[x] = 1;
      ++distinct;
    }
  }
  return draws;
}

long long coupon_trial(const CantorInstance& instance, RandomSource& rng) {
  return coupon_trial(instance.params.domain_size, instance.params.budget, rng);
}

double coupon_exact_mean(int domain_size, int budget) {
  if (domain_size < 1 || budget < 0 || budget >= domain_size) {
    throw InvalidInputError("coupon mean needs 0 <= budget < domain_size");
  }
  double sum = 0.0;
  for (int i = budget + 1; i <= domain_size; ++i) sum += 1.0 / static_cast<double>(i);
  return static_cast<double>(domain_size) * sum;
}

double coupon_mean_lower_bound(int domain_size, int budget) {
  if (domain_size < 1 || budget < 0 || budget >= domain_size) {
    throw InvalidInputError("coupon bound needs 0 <= budget < domain_size");
  }
  return static_cast<double>(domain_size) *
         std::log(static_cast<double>(domain_size + 1) / static_cast<double>(budget + 1));
}

double coupon_exact_variance(int domain_size, int budget) {
  if (domain_size < 1 || budget < 0 || budget >= domain_size) {
    throw InvalidInputError("coupon variance needs 0 <= budget < domain_size");
  }
  double sum = 0.0;
  for (int i = budget + 1; i <= domain_size; ++i) {
    double di = static_cast<double>(i);
    sum += (static_cast<double>(domain_size) - di) / (di * di);
  }
  return static_cast<double>(domain_size) * sum;
}

double coupon_variance_bound(int domain_size, int budget) {
  if (domain_size < 1 || budget < 1 || budget >= domain_size) {
    throw InvalidInputError("coupon variance bound needs 1 <= budget < domain_size");
  }
  return static_cast<double>(domain_size) * static_cast<double>(domain_size) /
         static_cast<double>(budget);
}

}  // namespace mcpac
