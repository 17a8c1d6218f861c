// Brute-force combinatorial dimensions of explicit classes.
//
// Three notions over a common search skeleton (enumerate point subsets by
// ascending size until one size has no shattered subset):
//   * vc_dimension: binary classes; a set is shattered when the class
//     realizes all 2^d behaviors on it.
//   * graph_dimension: multiclass; points are anchored with labels and a set
//     is shattered when all 2^d agree/disagree sign patterns against the
//     anchors are realized. Anchor vectors only need to range over behaviors
//     the class realizes on the set: the all-ones pattern forces the anchor
//     itself to be realized, so nothing else can ever be shattered.
//   * ds_dimension: multiclass; a set is shattered when some subfamily
//     restricted to it gives every behavior an i-neighbor (a behavior
//     differing in exactly coordinate i) for every coordinate i. Computed as
//     the greatest fixpoint of deleting behaviors that lack a neighbor;
//     the fixpoint is independent of deletion order.
//
// Searches are capped (domain size, subset size) and raise OverCapError when
// a result cannot be certified within the caps.

#pragma once

#include <vector>

#include "mcpac/core.hpp"

namespace mcpac {

struct DimensionCaps {
  int max_domain = 16;
  int max_subset = 6;
};

struct ShatterWitness {
  std::vector<Point> points;
  std::vector<LabelId> anchors;        // graph witnesses only
  std::vector<std::size_t> family;     // ds witnesses only: hypothesis indices
};

struct DimensionResult {
  int value = 0;
  ShatterWitness witness;  // empty when value == 0
};

// True iff all 2^|anchored| sign patterns against the anchors are realized.
// Anchored points must be distinct; |anchored| == 0 is vacuously true.
bool graph_shatters(const ExplicitClass& cls, const std::vector<Example>& anchored);

DimensionResult graph_dimension(const ExplicitClass& cls, const DimensionCaps& caps = {});

// True iff the neighbor-deletion fixpoint over the class's behaviors on the
// points is nonempty. Points must be distinct; no points is vacuously true.
bool ds_shatters(const ExplicitClass& cls, const std::vector<Point>& points);

// The surviving subfamily: one representative hypothesis index per behavior
// in the greatest fixpoint, ascending. Empty iff the set is not shattered.
std::vector<std::size_t> ds_certifying_family(const ExplicitClass& cls,
                                              const std::vector<Point>& points);

DimensionResult ds_dimension(const ExplicitClass& cls, const DimensionCaps& caps = {});

// Binary classes only (label space of size 2); InvalidInputError otherwise.
DimensionResult vc_dimension(const ExplicitClass& cls, const DimensionCaps& caps = {});

}  // namespace mcpac
