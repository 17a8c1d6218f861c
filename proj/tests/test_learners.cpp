#include <doctest.h>

#include <memory>
#include <vector>

#include "mcpac/constructions.hpp"
#include "mcpac/core.hpp"
#include "mcpac/learners.hpp"
#include "support/helpers.hpp"

using namespace mcpac;
using mcpac::testing::random_class;
using mcpac::testing::random_realizable_sample;

TEST_SUITE("learners") {

TEST_CASE("erm returns the first consistent hypothesis in class order") {
  auto cls = two_constant_class(3);
  LabelId zero = cls->space()->parse("0");
  LabelId one = cls->space()->parse("1");

  CHECK(erm_first_consistent(*cls, {}) == cls->at(0));
  CHECK(erm_first_consistent(*cls, {{2, zero}}) == cls->at(0));
  CHECK(erm_first_consistent(*cls, {{1, one}, {3, one}}) == cls->at(1));
  CHECK_THROWS_AS(erm_first_consistent(*cls, {{1, zero}, {2, one}}),
                  NoConsistentHypothesisError);
}

TEST_CASE("erm pins a uniquely determined hypothesis") {
  auto cls = cantor_explicit(1, 4);
  LabelId two = cls->space()->parse("{2}");
  Hypothesis h = erm_first_consistent(*cls, {{2, two}});
  CHECK(h(2) == two);
  CHECK(h(1) == cls->space()->parse("*"));
}

TEST_CASE("erm output is always a consistent member of the class") {
  RandomSource rng(31, 0);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng.uniform_below(4));
    int k = 2 + static_cast<int>(rng.uniform_below(3));
    auto cls = random_class(rng, n, k, 4);
    TrainingSequence sample =
        random_realizable_sample(*cls, rng, 1 + static_cast<int>(rng.uniform_below(8)));
    Hypothesis h = erm_first_consistent(*cls, sample);
    CHECK(is_consistent(h, sample));
    CHECK(cls->contains(h));
  }
}

TEST_CASE("the erm learner wrapper matches the free function") {
  auto cls = two_constant_class(3);
  Learner learner = make_erm_learner(cls);
  CHECK(learner.proper);
  CHECK(!learner.name.empty());
  LabelId one = cls->space()->parse("1");
  CHECK(learner.fn({{1, one}}) == erm_first_consistent(*cls, {{1, one}}));
  CHECK_THROWS_AS(make_erm_learner(nullptr), InvalidInputError);
}

TEST_CASE("the adversarial erm commits to the smallest unseen points") {
  LabelSpace space;
  LabelId star = space.intern_atom("*");

  Hypothesis empty_sample = erm_bad_cantor({3, 10}, space, {});
  CHECK(empty_sample.members() == std::vector<Point>{1, 2, 3});
  CHECK(empty_sample(1) == space.intern_set({1, 2, 3}));
  CHECK(empty_sample(4) == star);

  Hypothesis skip_seen = erm_bad_cantor({2, 4}, space, {{2, star}});
  CHECK(skip_seen.members() == std::vector<Point>{1, 3});
  CHECK(skip_seen(3) == space.intern_set({1, 3}));
  CHECK(skip_seen(2) == star);
}

TEST_CASE("the adversarial erm degrades gracefully at the domain edges") {
  LabelSpace space;
  LabelId star = space.intern_atom("*");

  Hypothesis all_seen = erm_bad_cantor({2, 3}, space, {{1, star}, {2, star}, {3, star}});
  for (Point x = 1; x <= 3; ++x) CHECK(all_seen(x) == star);

  Hypothesis under_budget = erm_bad_cantor({3, 4}, space, {{1, star}, {2, star}});
  CHECK(under_budget.members() == std::vector<Point>{3, 4});
  CHECK(under_budget(4) == space.intern_set({3, 4}));
}

TEST_CASE("the adversarial erm validates its sample") {
  LabelSpace space;
  LabelId star = space.intern_atom("*");
  LabelId set1 = space.intern_set({1});
  CHECK_THROWS_AS(erm_bad_cantor({2, 4}, space, {{1, set1}}), InvalidInputError);
  CHECK_THROWS_AS(erm_bad_cantor({2, 4}, space, {{7, star}}), DomainMismatchError);
  CHECK_THROWS_AS(erm_bad_cantor({5, 4}, space, {}), InvalidInputError);
  CHECK_THROWS_AS(erm_bad_cantor({1, 0}, space, {}), InvalidInputError);
}

TEST_CASE("the adversarial erm is a legitimate erm for the family") {
  auto space = std::make_shared<LabelSpace>();
  CantorParams params{2, 8};
  CantorFamily family(params, space);
  LabelId star = family.star();

  RandomSource rng(32, 0);
  Hypothesis target = Hypothesis::subset_rule(8, {}, star, star);
  LabeledDistribution hard = LabeledDistribution::uniform_over(8, target);
  for (int trial = 0; trial < 25; ++trial) {
    int m = static_cast<int>(rng.uniform_below(12));
    TrainingSequence sample;
    std::vector<char> seen(9, 0);
    for (int i = 0; i < m; ++i) {
      Point x = 1 + static_cast<Point>(rng.uniform_below(8));
      seen[static_cast<std::size_t>(x)] = 1;
      sample.push_back({x, star});
    }
    Hypothesis h = erm_bad_cantor(params, *space, sample);
    CHECK(family.contains(h));
    CHECK(is_consistent(h, sample));

    int unseen = 0;
    for (int x = 1; x <= 8; ++x) unseen += seen[static_cast<std::size_t>(x)] ? 0 : 1;
    int committed = std::min(params.budget, unseen);
    CHECK(loss_exact(h, hard) == doctest::Approx(committed / 8.0));
  }
}

TEST_CASE("growing the sample never grows the adversarial erm's error") {
  LabelSpace space;
  LabelId star = space.intern_atom("*");
  CantorParams params{3, 9};
  Hypothesis target = Hypothesis::subset_rule(9, {}, star, star);
  LabeledDistribution hard = LabeledDistribution::uniform_over(9, target);

  RandomSource rng(33, 0);
  for (int trial = 0; trial < 10; ++trial) {
    TrainingSequence sample;
    double prev = loss_exact(erm_bad_cantor(params, space, sample), hard);
    for (int i = 0; i < 15; ++i) {
      sample.push_back({1 + static_cast<Point>(rng.uniform_below(9)), star});
      double cur = loss_exact(erm_bad_cantor(params, space, sample), hard);
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("the bad learner wrapper matches the free function") {
  auto space = std::make_shared<LabelSpace>();
  CantorParams params{2, 6};
  Learner learner = make_bad_cantor_learner(params, space);
  CHECK(learner.proper);
  LabelId star = space->intern_atom("*");
  TrainingSequence sample{{3, star}};
  CHECK(learner.fn(sample) == erm_bad_cantor(params, *space, sample));
  CHECK_THROWS_AS(make_bad_cantor_learner(params, nullptr), InvalidInputError);
}

}  // TEST_SUITE
