#include "mcpac/dimensions.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace mcpac {

namespace {

// Columns are 0-based point indices into rows; all subset searches work on
// these projections.
struct Projection {
  std::vector<std::vector<LabelId>> behaviors;        // distinct rows on the subset
  std::vector<std::size_t> representatives;           // first hypothesis per behavior
};

Projection project(const ExplicitClass& cls, const std::vector<int>& cols) {
  Projection out;
  std::set<std::vector<LabelId>> seen;
  for (std::size_t h = 0; h < cls.size(); ++h) {
    const auto& row = cls.at(h).dense_row();
    std::vector<LabelId> b;
    b.reserve(cols.size());
    for (int c : cols) b.push_back(row[static_cast<std::size_t>(c)]);
    if (seen.insert(b).second) {
      out.behaviors.push_back(std::move(b));
      out.representatives.push_back(h);
    }
  }
  return out;
}

void validate_points(const ExplicitClass& cls, const std::vector<Point>& points) {
  std::set<Point> distinct;
  for (Point p : points) {
    if (p < 1 || p > cls.domain_size()) {
      throw DomainMismatchError("point " + std::to_string(p) + " outside domain of size " +
                                std::to_string(cls.domain_size()));
    }
    if (!distinct.insert(p).second) {
      throw InvalidInputError("shattering points must be distinct");
    }
  }
}

// All 2^d sign patterns realized against the anchors on the given columns?
bool sign_patterns_complete(const ExplicitClass& cls, const std::vector<int>& cols,
                            const std::vector<LabelId>& anchors) {
  std::size_t d = cols.size();
  if (d == 0) return true;
  if (d >= 64) return false;
  std::uint64_t need = std::uint64_t{1} << d;
  if (cls.size() < need) return false;
  std::vector<char> seen(static_cast<std::size_t>(need), 0);
  std::uint64_t found = 0;
  for (std::size_t h = 0; h < cls.size(); ++h) {
    const auto& row = cls.at(h).dense_row();
    std::uint64_t pattern = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (row[static_cast<std::size_t>(cols[i])] == anchors[i]) pattern |= std::uint64_t{1} << i;
    }
    if (!seen[pattern]) {
      seen[pattern] = 1;
      if (++found == need) return true;
    }
  }
  return false;
}

// Binary behavior count == 2^d on the given columns?
bool binary_behaviors_complete(const ExplicitClass& cls, const std::vector<int>& cols) {
  std::size_t d = cols.size();
  if (d == 0) return true;
  if (d >= 64) return false;
  std::uint64_t need = std::uint64_t{1} << d;
  if (cls.size() < need) return false;
  std::vector<char> seen(static_cast<std::size_t>(need), 0);
  std::uint64_t found = 0;
  for (std::size_t h = 0; h < cls.size(); ++h) {
    const auto& row = cls.at(h).dense_row();
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (row[static_cast<std::size_t>(cols[i])] != 0) key |= std::uint64_t{1} << i;
    }
    if (!seen[key]) {
      seen[key] = 1;
      if (++found == need) return true;
    }
  }
  return false;
}

bool first_combination(std::vector<int>& cols, int n, int d) {
  if (d > n) return false;
  cols.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) cols[static_cast<std::size_t>(i)] = i;
  return true;
}

bool next_combination(std::vector<int>& cols, int n) {
  int d = static_cast<int>(cols.size());
  for (int i = d - 1; i >= 0; --i) {
    if (cols[static_cast<std::size_t>(i)] < n - d + i) {
      ++cols[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < d; ++j) {
        cols[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

std::vector<Point> cols_to_points(const std::vector<int>& cols) {
  std::vector<Point> pts;
  pts.reserve(cols.size());
  for (int c : cols) pts.push_back(c + 1);
  return pts;
}

void check_caps(const ExplicitClass& cls, const DimensionCaps& caps) {
  if (caps.max_domain < 1 || caps.max_subset < 1) {
    throw InvalidInputError("dimension caps must be positive");
  }
  if (cls.domain_size() > caps.max_domain) {
    throw OverCapError("domain size " + std::to_string(cls.domain_size()) +
                       " exceeds the search cap " + std::to_string(caps.max_domain));
  }
  if (caps.max_subset > 25) {
    throw OverCapError("subset cap above 25 is not supported by the brute-force search");
  }
}

// Greatest fixpoint of deleting behaviors without an i-neighbor for some i.
// Returns indices into proj.behaviors.
std::vector<std::size_t> neighbor_fixpoint(const Projection& proj, std::size_t d) {
  std::vector<char> alive(proj.behaviors.size(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::size_t> doomed;
    for (std::size_t v = 0; v < proj.behaviors.size(); ++v) {
      if (!alive[v]) continue;
      bool ok = true;
      for (std::size_t i = 0; i < d && ok; ++i) {
        bool has_neighbor = false;
        for (std::size_t u = 0; u < proj.behaviors.size() && !has_neighbor; ++u) {
          if (!alive[u] || u == v) continue;
          const auto& a = proj.behaviors[v];
          const auto& b = proj.behaviors[u];
          if (a[i] == b[i]) continue;
          bool same_elsewhere = true;
          for (std::size_t j = 0; j < d; ++j) {
            if (j != i && a[j] != b[j]) {
              same_elsewhere = false;
              break;
            }
          }
          has_neighbor = same_elsewhere;
        }
        ok = has_neighbor;
      }
      if (!ok) doomed.push_back(v);
    }
    for (std::size_t v : doomed) {
      alive[v] = 0;
      changed = true;
    }
  }
  std::vector<std::size_t> survivors;
  for (std::size_t v = 0; v < proj.behaviors.size(); ++v) {
    if (alive[v]) survivors.push_back(v);
  }
  return survivors;
}

}  // namespace

bool graph_shatters(const ExplicitClass& cls, const std::vector<Example>& anchored) {
  std::vector<Point> points;
  std::vector<int> cols;
  std::vector<LabelId> anchors;
  points.reserve(anchored.size());
  for (const auto& e : anchored) {
    points.push_back(e.x);
    anchors.push_back(e.y);
  }
  validate_points(cls, points);
  std::size_t space_size = cls.space()->size();
  for (LabelId y : anchors) {
    if (y < 0 || static_cast<std::size_t>(y) >= space_size) {
      throw InvalidInputError("anchor label outside the class's label space");
    }
  }
  cols.reserve(points.size());
  for (Point p : points) cols.push_back(p - 1);
  return sign_patterns_complete(cls, cols, anchors);
}

DimensionResult graph_dimension(const ExplicitClass& cls, const DimensionCaps& caps) {
  check_caps(cls, caps);
  int n = cls.domain_size();
  DimensionResult result;
  for (int d = 1; d <= n; ++d) {
    if (d < 64 && (std::uint64_t{1} << d) > cls.size()) break;  // 2^d patterns need 2^d hypotheses
    if (d > caps.max_subset) {
      throw OverCapError("graph dimension is at least " + std::to_string(d - 1) +
                         " but the subset cap " + std::to_string(caps.max_subset) +
                         " stops the search; raise the cap to certify");
    }
    bool found = false;
    std::vector<int> cols;
    if (!first_combination(cols, n, d)) break;
    do {
      Projection proj = project(cls, cols);
      for (const auto& anchors : proj.behaviors) {
        if (sign_patterns_complete(cls, cols, anchors)) {
          result.value = d;
          result.witness.points = cols_to_points(cols);
          result.witness.anchors = anchors;
          result.witness.family.clear();
          found = true;
          break;
        }
      }
    } while (!found && next_combination(cols, n));
    if (!found) break;
  }
  return result;
}

bool ds_shatters(const ExplicitClass& cls, const std::vector<Point>& points) {
  return !ds_certifying_family(cls, points).empty() || points.empty();
}

std::vector<std::size_t> ds_certifying_family(const ExplicitClass& cls,
                                              const std::vector<Point>& points) {
  validate_points(cls, points);
  std::vector<int> cols;
  cols.reserve(points.size());
  for (Point p : points) cols.push_back(p - 1);
  Projection proj = project(cls, cols);
  std::vector<std::size_t> survivors = neighbor_fixpoint(proj, cols.size());
  std::vector<std::size_t> family;
  family.reserve(survivors.size());
  for (std::size_t v : survivors) family.push_back(proj.representatives[v]);
  std::sort(family.begin(), family.end());
  return family;
}

DimensionResult ds_dimension(const ExplicitClass& cls, const DimensionCaps& caps) {
  check_caps(cls, caps);
  int n = cls.domain_size();
  DimensionResult result;
  for (int d = 1; d <= n; ++d) {
    // A fully neighbored family on d coordinates is at least a d-cube.
    if (d < 64 && (std::uint64_t{1} << d) > cls.size()) break;
    if (d > caps.max_subset) {
      throw OverCapError("ds dimension is at least " + std::to_string(d - 1) +
                         " but the subset cap " + std::to_string(caps.max_subset) +
                         " stops the search; raise the cap to certify");
    }
    bool found = false;
    std::vector<int> cols;
    if (!first_combination(cols, n, d)) break;
    do {
      std::vector<Point> pts = cols_to_points(cols);
      std::vector<std::size_t> family = ds_certifying_family(cls, pts);
      if (!family.empty()) {
        result.value = d;
        result.witness.points = std::move(pts);
        result.witness.anchors.clear();
        result.witness.family = std::move(family);
        found = true;
      }
    } while (!found && next_combination(cols, n));
    if (!found) break;
  }
  return result;
}

DimensionResult vc_dimension(const ExplicitClass& cls, const DimensionCaps& caps) {
  if (cls.space()->size() != 2) {
    throw InvalidInputError("vc_dimension needs a binary class (label space of size 2)");
  }
  check_caps(cls, caps);
  int n = cls.domain_size();
  DimensionResult result;
  for (int d = 1; d <= n; ++d) {
    if (d < 64 && (std::uint64_t{1} << d) > cls.size()) break;
    if (d > caps.max_subset) {
      throw OverCapError("vc dimension is at least " + std::to_string(d - 1) +
                         " but the subset cap " + std::to_string(caps.max_subset) +
                         " stops the search; raise the cap to certify");
    }
    bool found = false;
    std::vector<int> cols;
    if (!first_combination(cols, n, d)) break;
    do {
      if (binary_behaviors_complete(cls, cols)) {
        result.value = d;
        result.witness.points = cols_to_points(cols);
        result.witness.anchors.clear();
        result.witness.family.clear();
        found = true;
      }
    } while (!found && next_combination(cols, n));
    if (!found) break;
  }
  return result;
}

}  // namespace mcpac
