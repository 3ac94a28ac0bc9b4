#pragma once

#include <vector>

#include "hypercover/core.hpp"

namespace hypercover {

// A hyperedge is a nonempty subset of the ground set (as a bitmask) with a
// positive integer weight.  Edges over the same vertex set are merged by
// summing their weights, so the edge list is always sorted by mask and free of
// duplicates; this gives a canonical form that makes traces and JSON output
// deterministic.
struct WeightedEdge {
  Mask members = 0;
  Val weight = 0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

class WeightedHypergraph {
 public:
  WeightedHypergraph() = default;
  explicit WeightedHypergraph(int n) : n_(n) {}

  int n() const { return n_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  // Adds `weight` copies of the hyperedge `members`.  Empty edges and
  // non-positive weights are rejected; a repeated vertex set accumulates.
  void add_edge(Mask members, Val weight);

  // Union of edge multisets of two hypergraphs over the same ground set.
  WeightedHypergraph& operator+=(const WeightedHypergraph& other);
  friend WeightedHypergraph operator+(WeightedHypergraph a,
                                      const WeightedHypergraph& b) {
    a += b;
    return a;
  }

  Val total_weight() const;

  // b(X): total weight of edges intersecting X.
  Val coverage(Mask x) const;

  // d(X): total weight of edges with a vertex both inside and outside X
  // (relative to the full ambient ground set).
  Val cut(Mask x) const;

  // Degree vector u -> coverage({u}).
  DegreeVector degrees() const;

  friend bool operator==(const WeightedHypergraph&,
                         const WeightedHypergraph&) = default;

 private:
  int n_ = 0;
  std::vector<WeightedEdge> edges_;  // sorted by members, unique
};

// min { d(X) : u in X, v not in X }.  Exhaustive over subsets; u != v
// required.  For undirected cuts this is symmetric in u and v.
Val min_cut_between(const WeightedHypergraph& g, int u, int v);

// min { d(X) : u in X, X ∩ W = ∅ } for a nonempty area W not containing u.
Val min_cut_to_area(const WeightedHypergraph& g, int u, Mask w);

// A mixed hyperedge has three pairwise disjoint parts: plain tails, plain
// heads, and vertices that act as both ("both" below).  A conventional
// directed arc u->v is ({u},{v},∅); an undirected hyperedge e is (∅,∅,e).
struct MixedEdge {
  Mask tails = 0;
  Mask heads = 0;
  Mask both = 0;
  Val weight = 0;

  Mask head_side() const { return heads | both; }
  Mask tail_side() const { return tails | both; }

  friend bool operator==(const MixedEdge&, const MixedEdge&) = default;
};

class MixedHypergraph {
 public:
  MixedHypergraph() = default;
  explicit MixedHypergraph(int n) : n_(n) {}

  int n() const { return n_; }
  const std::vector<MixedEdge>& edges() const { return edges_; }

  // Requires the three parts pairwise disjoint, a nonempty head side and a
  // nonempty tail side, and weight > 0.
  void add_edge(Mask tails, Mask heads, Mask both, Val weight);

  // d_in(X): total weight of edges entering X, i.e. with a head-side vertex
  // in X and a tail-side vertex outside X.  An undirected hyperedge enters X
  // exactly when it crosses X.
  Val in_cut(Mask x) const;

 private:
  int n_ = 0;
  std::vector<MixedEdge> edges_;
};

// min { d_in(X) : v in X, u not in X }: the largest k such that every such set
// receives at least k weight is exactly this minimum.
Val min_in_cut_between(const MixedHypergraph& g, int u, int v);

}  // namespace hypercover
