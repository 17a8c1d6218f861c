#include "mcpac/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mcpac {

// ---------------------------------------------------------------------------
// LabelSpace

LabelId LabelSpace::intern_atom(const std::string& name) {
  if (name.empty()) throw InvalidInputError("atom label must be nonempty");
  for (char c : name) {
    if (c == '{' || c == '}' || c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      throw InvalidInputError("atom label contains a reserved character: " + name);
    }
  }
  Label label;
  label.is_set = false;
  label.atom = name;
  std::lock_guard<std::mutex> lock(mu_);
  return intern_locked(std::move(label));
}

LabelId LabelSpace::intern_set(std::vector<Point> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  Label label;
  label.is_set = true;
  label.elements = std::move(elements);
  std::lock_guard<std::mutex> lock(mu_);
  return intern_locked(std::move(label));
}

LabelId LabelSpace::intern(const Label& label) {
  if (label.is_set) return intern_set(label.elements);
  return intern_atom(label.atom);
}

LabelId LabelSpace::intern_locked(Label label) {
  auto it = index_.find(label);
  if (it != index_.end()) return it->second;
  LabelId id = static_cast<LabelId>(labels_.size());
  index_.emplace(label, id);
  labels_.push_back(std::move(label));
  return id;
}

std::optional<LabelId> LabelSpace::find(const Label& label) const {
  Label canon = label;
  if (canon.is_set) {
    std::sort(canon.elements.begin(), canon.elements.end());
    canon.elements.erase(std::unique(canon.elements.begin(), canon.elements.end()),
                         canon.elements.end());
    canon.atom.clear();
  } else {
    canon.elements.clear();
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto it = index_.find(canon);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t LabelSpace::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return labels_.size();
}

Label LabelSpace::at(LabelId id) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (id < 0 || static_cast<std::size_t>(id) >= labels_.size()) {
    throw InvalidInputError("label id out of range: " + std::to_string(id));
  }
  return labels_[static_cast<std::size_t>(id)];
}

std::string LabelSpace::name(LabelId id) const { return text(at(id)); }

bool LabelSpace::label_less(LabelId a, LabelId b) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto check = [this](LabelId id) {
    if (id < 0 || static_cast<std::size_t>(id) >= labels_.size()) {
      throw InvalidInputError("label id out of range: " + std::to_string(id));
    }
  };
  check(a);
  check(b);
  return labels_[static_cast<std::size_t>(a)] < labels_[static_cast<std::size_t>(b)];
}

LabelId LabelSpace::parse(const std::string& token) {
  if (token.empty()) throw InvalidInputError("empty label token");
  if (token.front() != '{') return intern_atom(token);
  if (token.back() != '}') throw InvalidInputError("unterminated set label: " + token);
  std::vector<Point> elements;
  std::string body = token.substr(1, token.size() - 2);
  if (!body.empty()) {
    std::stringstream ss(body);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) throw InvalidInputError("malformed set label: " + token);
      std::size_t pos = 0;
      int value = 0;
      try {
        value = std::stoi(part, &pos);
      } catch (const std::exception&) {
        throw InvalidInputError("malformed set label: " + token);
      }
      if (pos != part.size()) throw InvalidInputError("malformed set label: " + token);
      elements.push_back(value);
    }
  }
  return intern_set(std::move(elements));
}

std::string LabelSpace::text(const Label& label) {
  if (!label.is_set) return label.atom;
  std::string out = "{";
  for (std::size_t i = 0; i < label.elements.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(label.elements[i]);
  }
  out += '}';
  return out;
}

// ---------------------------------------------------------------------------
// Hypothesis

Hypothesis Hypothesis::dense(std::vector<LabelId> row) {
  if (row.empty()) throw InvalidInputError("dense hypothesis needs a nonempty domain");
  for (LabelId y : row) {
    if (y < 0) throw InvalidInputError("dense hypothesis row contains an invalid label id");
  }
  Hypothesis h;
  h.repr_ = Dense{std::move(row)};
  return h;
}

Hypothesis Hypothesis::subset_rule(int domain_size, std::vector<Point> members,
                                   LabelId inside_label, LabelId outside_label) {
  if (domain_size < 1) throw InvalidInputError("subset rule needs a nonempty domain");
  if (inside_label < 0 || outside_label < 0) {
    throw InvalidInputError("subset rule labels must be interned ids");
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!members.empty() && (members.front() < 1 || members.back() > domain_size)) {
    throw InvalidInputError("subset rule member outside the domain");
  }
  Hypothesis h;
  h.repr_ = SubsetRule{domain_size, std::move(members), inside_label, outside_label};
  return h;
}

LabelId Hypothesis::operator()(Point x) const {
  if (const auto* d = std::get_if<Dense>(&repr_)) {
    if (x < 1 || static_cast<std::size_t>(x) > d->row.size()) {
      throw DomainMismatchError("point " + std::to_string(x) + " outside domain of size " +
                                std::to_string(d->row.size()));
    }
    return d->row[static_cast<std::size_t>(x - 1)];
  }
  const auto& r = std::get<SubsetRule>(repr_);
  if (x < 1 || x > r.domain_size) {
    throw DomainMismatchError("point " + std::to_string(x) + " outside domain of size " +
                              std::to_string(r.domain_size));
  }
  bool in = std::binary_search(r.members.begin(), r.members.end(), x);
  return in ? r.inside : r.outside;
}

int Hypothesis::domain_size() const {
  if (const auto* d = std::get_if<Dense>(&repr_)) return static_cast<int>(d->row.size());
  return std::get<SubsetRule>(repr_).domain_size;
}

bool Hypothesis::is_dense() const { return std::holds_alternative<Dense>(repr_); }

const std::vector<LabelId>& Hypothesis::dense_row() const {
  if (!is_dense()) throw InvalidInputError("hypothesis has no dense row");
  return std::get<Dense>(repr_).row;
}

bool Hypothesis::is_subset_rule() const { return std::holds_alternative<SubsetRule>(repr_); }

const std::vector<Point>& Hypothesis::members() const {
  if (!is_subset_rule()) throw InvalidInputError("hypothesis is not a subset rule");
  return std::get<SubsetRule>(repr_).members;
}

LabelId Hypothesis::inside_label() const {
  if (!is_subset_rule()) throw InvalidInputError("hypothesis is not a subset rule");
  return std::get<SubsetRule>(repr_).inside;
}

LabelId Hypothesis::outside_label() const {
  if (!is_subset_rule()) throw InvalidInputError("hypothesis is not a subset rule");
  return std::get<SubsetRule>(repr_).outside;
}

std::vector<LabelId> Hypothesis::to_row() const {
  if (is_dense()) return dense_row();
  const auto& r = std::get<SubsetRule>(repr_);
  std::vector<LabelId> row(static_cast<std::size_t>(r.domain_size), r.outside);
  for (Point p : r.members) row[static_cast<std::size_t>(p - 1)] = r.inside;
  return row;
}

bool operator==(const Hypothesis& a, const Hypothesis& b) {
  if (a.domain_size() != b.domain_size()) return false;
  if (a.is_dense() && b.is_dense()) return a.dense_row() == b.dense_row();
  return a.to_row() == b.to_row();
}

// ---------------------------------------------------------------------------
// LabeledDistribution

LabeledDistribution::LabeledDistribution(std::vector<WeightedExample> support)
    : support_(std::move(support)) {
  if (support_.empty()) throw InvalidInputError("distribution support is empty");
  double total = 0.0;
  for (const auto& w : support_) {
    if (!(w.mass >= 0.0) || w.mass > 1.0) {
      throw InvalidInputError("distribution mass outside [0, 1]");
    }
    if (w.y < 0) throw InvalidInputError("distribution label must be an interned id");
    total += w.mass;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw InvalidInputError("distribution masses sum to " + std::to_string(total));
  }
  std::vector<std::pair<Point, LabelId>> seen;
  seen.reserve(support_.size());
  for (const auto& w : support_) seen.emplace_back(w.x, w.y);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw InvalidInputError("distribution support has a repeated (point, label) pair");
  }
  cdf_.reserve(support_.size());
  double acc = 0.0;
  for (const auto& w : support_) {
    acc += w.mass;
    cdf_.push_back(acc);
  }
}

LabeledDistribution LabeledDistribution::uniform_over(int domain_size,
                                                      const Hypothesis& target) {
  if (domain_size < 1) throw InvalidInputError("uniform distribution needs a nonempty domain");
  if (target.domain_size() < domain_size) {
    throw DomainMismatchError("target hypothesis domain is smaller than the distribution");
  }
  std::vector<WeightedExample> support;
  support.reserve(static_cast<std::size_t>(domain_size));
  double mass = 1.0 / static_cast<double>(domain_size);
  for (Point x = 1; x <= domain_size; ++x) {
    support.push_back(WeightedExample{x, target(x), mass});
  }
  return LabeledDistribution(std::move(support));
}

Example LabeledDistribution::sample(RandomSource& rng) const {
  double u = rng.uniform01();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  std::size_t idx = static_cast<std::size_t>(it - cdf_.begin());
  if (idx >= support_.size()) idx = support_.size() - 1;
  return Example{support_[idx].x, support_[idx].y};
}

// ---------------------------------------------------------------------------
// ExplicitClass

ExplicitClass::ExplicitClass(std::shared_ptr<LabelSpace> space, int domain_size,
                             std::vector<Hypothesis> hypotheses)
    : space_(std::move(space)), domain_size_(domain_size), hypotheses_(std::move(hypotheses)) {
  if (!space_) throw InvalidInputError("explicit class needs a label space");
  if (domain_size_ < 1) throw InvalidInputError("explicit class needs a nonempty domain");
  if (hypotheses_.empty()) throw InvalidInputError("explicit class needs at least one hypothesis");
  std::size_t space_size = space_->size();
  for (const auto& h : hypotheses_) {
    if (!h.is_dense()) throw InvalidInputError("explicit class members must be dense");
    if (h.domain_size() != domain_size_) {
      throw InvalidInputError("explicit class member has the wrong domain size");
    }
    for (LabelId y : h.dense_row()) {
      if (y < 0 || static_cast<std::size_t>(y) >= space_size) {
        throw InvalidInputError("explicit class member uses a label outside its space");
      }
    }
  }
  // Duplicate detection via sorted row order; storage order stays as given.
  std::vector<std::size_t> order(hypotheses_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    return hypotheses_[a].dense_row() < hypotheses_[b].dense_row();
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (hypotheses_[order[i - 1]].dense_row() == hypotheses_[order[i]].dense_row()) {
      throw InvalidInputError("explicit class contains duplicate hypotheses");
    }
  }
}

const Hypothesis& ExplicitClass::at(std::size_t index) const {
  if (index >= hypotheses_.size()) {
    throw InvalidInputError("hypothesis index out of range");
  }
  return hypotheses_[index];
}

bool ExplicitClass::contains(const Hypothesis& h) const {
  if (h.domain_size() != domain_size_) return false;
  std::vector<LabelId> row = h.to_row();
  for (const auto& member : hypotheses_) {
    if (member.dense_row() == row) return true;
  }
  return false;
}

std::optional<Hypothesis> ExplicitClass::find_consistent(
    const TrainingSequence& sample) const {
  for (const auto& h : hypotheses_) {
    if (is_consistent(h, sample)) return h;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// RandomSource

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (splitmix64(b) + 0x9E3779B97F4A7C15ULL));
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(mix_key(seed, stream)) {}

RandomSource RandomSource::fork(std::uint64_t substream) const {
  return RandomSource(mix_key(seed_, stream_), substream);
}

std::uint64_t RandomSource::next_u64() { return engine_(); }

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw InvalidInputError("uniform_below needs a positive bound");
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return v % bound;
}

double RandomSource::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------
// Exact evaluation

double loss_exact(const Hypothesis& h, const LabeledDistribution& d) {
  double err = 0.0;
  for (const auto& w : d.support()) {
    if (h(w.x) != w.y) err += w.mass;
  }
  return err;
}

bool is_consistent(const Hypothesis& h, const TrainingSequence& sample) {
  for (const auto& e : sample) {
    if (h(e.x) != e.y) return false;
  }
  return true;
}

bool is_realizable(const HypothesisClass& cls, const TrainingSequence& sample) {
  return cls.find_consistent(sample).has_value();
}

}  // namespace mcpac
