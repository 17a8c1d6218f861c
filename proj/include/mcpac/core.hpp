// Core vocabulary for multiclass learning experiments: points, interned
// labels, hypotheses, training sequences, exactly-evaluated labeled
// distributions, and a reproducible random source.
//
// Conventions used throughout the library:
//   * domain points are the integers 1..n (a Domain is just its size n)
//   * labels are interned into a LabelSpace; a LabelId is an index into it
//   * kBottom is the reject/abstain sentinel; it is never a member of any
//     LabelSpace and never equal to a real label
//   * error masses are computed by exact summation over a distribution's
//     support, never by sampling

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mcpac {

using Point = int;
using LabelId = int;

// Abstain sentinel for majority votes. Out-of-space by construction, so a
// comparison against any interned label is always "not equal".
inline constexpr LabelId kBottom = -1;

// ---------------------------------------------------------------------------
// Errors

// Violated precondition on an argument (bad masses, empty class, bad token).
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A point fell outside the domain a hypothesis is defined on.
class DomainMismatchError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

// ERM was asked for a consistent hypothesis and none exists.
class NoConsistentHypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A combinatorial search or materialization exceeded its configured cap.
class OverCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Labels

// A label is either a named atom ("*", "0", "ok") or a finite set of points.
// Set labels are kept sorted and deduplicated so structural equality is
// id equality after interning. Atoms order before sets; this ordering is the
// canonical label order used by tie-breaking policies.
struct Label {
  bool is_set = false;
  std::string atom;              // meaningful when !is_set
  std::vector<Point> elements;   // meaningful when is_set; sorted, unique

  friend bool operator==(const Label& a, const Label& b) = default;
  friend auto operator<=>(const Label& a, const Label& b) = default;
};

// Grow-only interner. Structurally equal labels always receive the same id.
// Interning is guarded by a mutex so implicit families may mint set labels
// from worker threads; ids are stable within a space but carry no meaning
// across spaces.
class LabelSpace {
 public:
  LabelSpace() = default;
  LabelSpace(const LabelSpace&) = delete;
  LabelSpace& operator=(const LabelSpace&) = delete;

  LabelId intern_atom(const std::string& name);
  LabelId intern_set(std::vector<Point> elements);
  LabelId intern(const Label& label);

  // Lookup without insertion; nullopt when the label was never interned.
  std::optional<LabelId> find(const Label& label) const;

  std::size_t size() const;
  Label at(LabelId id) const;          // by value: the backing store may grow
  std::string name(LabelId id) const;  // canonical text form

  // Canonical structural order (atom-before-set, then lexicographic),
  // independent of interning order.
  bool label_less(LabelId a, LabelId b) const;

  // Parses the canonical text form: "{1,3,5}" / "{}" for sets, anything else
  // is an atom. Atom tokens must be nonempty and free of whitespace, commas,
  // and braces. Interns the result.
  LabelId parse(const std::string& token);

  static std::string text(const Label& label);

 private:
  LabelId intern_locked(Label label);

  mutable std::mutex mu_;
  std::vector<Label> labels_;
  std::map<Label, LabelId> index_;
};

// ---------------------------------------------------------------------------
// Hypotheses

// A total function from domain points to labels. Two representations:
//   * dense: one label per point, for enumerable classes
//   * subset rule: "inside_label on a member set, outside_label elsewhere",
//     for implicit families whose domains make dense rows wasteful
// Evaluation outside [1, domain_size] raises DomainMismatchError.
class Hypothesis {
 public:
  static Hypothesis dense(std::vector<LabelId> row);
  static Hypothesis subset_rule(int domain_size, std::vector<Point> members,
                                LabelId inside_label, LabelId outside_label);

  LabelId operator()(Point x) const;
  int domain_size() const;

  bool is_dense() const;
  const std::vector<LabelId>& dense_row() const;  // dense representation only

  bool is_subset_rule() const;
  const std::vector<Point>& members() const;      // subset rule only
  LabelId inside_label() const;                   // subset rule only
  LabelId outside_label() const;                  // subset rule only

  std::vector<LabelId> to_row() const;            // materialized extension

  // Extensional equality over the (shared) domain.
  friend bool operator==(const Hypothesis& a, const Hypothesis& b);

 private:
  struct Dense {
    std::vector<LabelId> row;
  };
  struct SubsetRule {
    int domain_size = 0;
    std::vector<Point> members;  // sorted, unique, within [1, domain_size]
    LabelId inside = 0;
    LabelId outside = 0;
  };
  std::variant<Dense, SubsetRule> repr_;
};

// ---------------------------------------------------------------------------
// Training data and distributions

struct Example {
  Point x = 0;
  LabelId y = 0;

  friend bool operator==(const Example& a, const Example& b) = default;
};

// Ordered, possibly repeating. Order matters to splitting schemes.
using TrainingSequence = std::vector<Example>;

// Any deterministic map from training sequences to hypotheses.
using LearnerFn = std::function<Hypothesis(const TrainingSequence&)>;

struct WeightedExample {
  Point x = 0;
  LabelId y = 0;
  double mass = 0.0;
};

// Finite-support distribution over labeled examples. Masses are validated to
// sum to 1 within kMassTolerance; (x, y) pairs in the support are unique.
class LabeledDistribution {
 public:
  static constexpr double kMassTolerance = 1e-12;

  explicit LabeledDistribution(std::vector<WeightedExample> support);

  // Uniform marginal over points 1..domain_size, labeled by target.
  static LabeledDistribution uniform_over(int domain_size,
                                          const Hypothesis& target);

  const std::vector<WeightedExample>& support() const { return support_; }

  Example sample(class RandomSource& rng) const;

 private:
  std::vector<WeightedExample> support_;
  std::vector<double> cdf_;
};

// ---------------------------------------------------------------------------
// Hypothesis classes

// Finite class of hypotheses over a common domain. Explicit classes
// enumerate; implicit families answer membership and consistency queries
// without enumeration.
class HypothesisClass {
 public:
  virtual ~HypothesisClass() = default;

  virtual int domain_size() const = 0;
  virtual std::shared_ptr<LabelSpace> space() const = 0;
  virtual bool is_explicit() const = 0;

  // Enumeration; only explicit classes implement these.
  virtual std::size_t size() const = 0;
  virtual const Hypothesis& at(std::size_t index) const = 0;

  virtual bool contains(const Hypothesis& h) const = 0;

  // First consistent hypothesis in the class's canonical order, or nullopt.
  virtual std::optional<Hypothesis> find_consistent(
      const TrainingSequence& sample) const = 0;
};

class ExplicitClass : public HypothesisClass {
 public:
  // Hypotheses must be dense, distinct, and share the domain. The storage
  // order is the class's stable enumeration order.
  ExplicitClass(std::shared_ptr<LabelSpace> space, int domain_size,
                std::vector<Hypothesis> hypotheses);

  int domain_size() const override { return domain_size_; }
  std::shared_ptr<LabelSpace> space() const override { return space_; }
  bool is_explicit() const override { return true; }
  std::size_t size() const override { return hypotheses_.size(); }
  const Hypothesis& at(std::size_t index) const override;
  bool contains(const Hypothesis& h) const override;
  std::optional<Hypothesis> find_consistent(
      const TrainingSequence& sample) const override;

 private:
  std::shared_ptr<LabelSpace> space_;
  int domain_size_ = 0;
  std::vector<Hypothesis> hypotheses_;
};

// ---------------------------------------------------------------------------
// Randomness

// Deterministic stream keyed by (seed, stream). The same key yields the same
// draw sequence on every platform: the generator is a single-seeded
// mt19937_64 and all derived draws (bounded ints, unit doubles) avoid
// implementation-defined standard distributions. fork(i) derives an
// independent child stream from the parent's key; it does not advance or
// share the parent's state.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

  RandomSource fork(std::uint64_t substream) const;

  std::uint64_t next_u64();
  // Unbiased integer in [0, bound); bound must be >= 1.
  std::uint64_t uniform_below(std::uint64_t bound);
  // Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Exact evaluation

// P[h(x) != y] under d, summed over the support. kBottom predictions (from
// vote aggregates) always count as errors; h itself never emits kBottom.
double loss_exact(const Hypothesis& h, const LabeledDistribution& d);

// True iff h(x) == y for every element of the sample. Empty sample: true.
bool is_consistent(const Hypothesis& h, const TrainingSequence& sample);

// True iff some member of cls is consistent with the sample.
bool is_realizable(const HypothesisClass& cls, const TrainingSequence& sample);

}  // namespace mcpac
