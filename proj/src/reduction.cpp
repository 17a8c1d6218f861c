#include "mcpac/reduction.hpp"

namespace mcpac {

Point BarContext::bar_point(Point x, LabelId y) const {
  if (x < 1 || x > n) {
    throw DomainMismatchError("bar_point: point " + std::to_string(x) +
                              " outside domain of size " + std::to_string(n));
  }
  if (y < 0 || y >= k) {
    throw InvalidInputError("bar_point: label id " + std::to_string(y) +
                            " outside the captured label space of size " + std::to_string(k));
  }
  return (x - 1) * k + y + 1;
}

Example BarContext::unbar_point(Point bar_x) const {
  if (bar_x < 1 || bar_x > n * k) {
    throw DomainMismatchError("unbar_point: point " + std::to_string(bar_x) +
                              " outside product domain of size " + std::to_string(n * k));
  }
  return Example{(bar_x - 1) / k + 1, (bar_x - 1) % k};
}

BarContext make_bar_context(const HypothesisClass& cls, std::size_t max_product) {
  BarContext ctx;
  ctx.n = cls.domain_size();
  ctx.source_space = cls.space();
  ctx.k = static_cast<int>(ctx.source_space->size());
  if (ctx.k < 1) throw InvalidInputError("bar context needs a nonempty label space");
  auto product = static_cast<std::size_t>(ctx.n) * static_cast<std::size_t>(ctx.k);
  if (product > max_product) {
    throw OverCapError("product domain has " + std::to_string(product) +
                       " points, above the cap " + std::to_string(max_product) +
                       "; evaluate lazily instead");
  }
  ctx.bar_space = std::make_shared<LabelSpace>();
  ctx.zero = ctx.bar_space->intern_atom("0");
  ctx.one = ctx.bar_space->intern_atom("1");
  return ctx;
}

Hypothesis bar_hypothesis(const Hypothesis& h, const BarContext& ctx) {
  if (h.domain_size() != ctx.n) {
    throw DomainMismatchError("bar_hypothesis: hypothesis domain does not match the context");
  }
  std::vector<LabelId> row(static_cast<std::size_t>(ctx.n) * static_cast<std::size_t>(ctx.k),
                           ctx.zero);
  for (Point x = 1; x <= ctx.n; ++x) {
    LabelId y = h(x);
    if (y < 0 || y >= ctx.k) {
      throw InvalidInputError("bar_hypothesis: hypothesis emits a label outside the context");
    }
    row[static_cast<std::size_t>(ctx.bar_point(x, y) - 1)] = ctx.one;
  }
  return Hypothesis::dense(std::move(row));
}

std::shared_ptr<ExplicitClass> bar_class(const ExplicitClass& cls, const BarContext& ctx) {
  std::vector<Hypothesis> bars;
  bars.reserve(cls.size());
  for (std::size_t i = 0; i < cls.size(); ++i) {
    bars.push_back(bar_hypothesis(cls.at(i), ctx));
  }
  return std::make_shared<ExplicitClass>(ctx.bar_space, ctx.bar_domain_size(),
                                         std::move(bars));
}

LabeledDistribution lift_distribution(const LabeledDistribution& d, const BarContext& ctx) {
  std::vector<WeightedExample> support;
  support.reserve(d.support().size());
  for (const auto& w : d.support()) {
    support.push_back(WeightedExample{ctx.bar_point(w.x, w.y), ctx.one, w.mass});
  }
  return LabeledDistribution(std::move(support));
}

TrainingSequence lift_sequence(const TrainingSequence& sample, const BarContext& ctx) {
  TrainingSequence lifted;
  lifted.reserve(sample.size());
  for (const auto& e : sample) {
    lifted.push_back(Example{ctx.bar_point(e.x, e.y), ctx.one});
  }
  return lifted;
}

LearnerFn bar_learner(const LearnerFn& inner, const BarContext& ctx) {
  if (!inner) throw InvalidInputError("bar_learner needs an inner learner");
  BarContext captured = ctx;
  return [inner, captured](const TrainingSequence& lifted) {
    TrainingSequence stripped;
    stripped.reserve(lifted.size());
    for (const auto& e : lifted) {
      stripped.push_back(captured.unbar_point(e.x));  // bit column e.y ignored
    }
    return bar_hypothesis(inner(stripped), captured);
  };
}

double lifted_half_vote_error(const std::vector<Hypothesis>& voters,
                              const LabeledDistribution& d) {
  if (voters.empty()) throw InvalidInputError("lifted_half_vote_error needs voters");
  auto n = static_cast<long long>(voters.size());
  double err = 0.0;
  for (const auto& w : d.support()) {
    long long ones = 0;
    for (const auto& h : voters) {
      if (h(w.x) == w.y) ++ones;  // the voter's bar bit at (x, y)
    }
    if (2 * ones <= n) err += w.mass;  // "1" fails to win strictly
  }
  return err;
}

}  // namespace mcpac
