#include "hypercover/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace hypercover {

void WeightedHypergraph::add_edge(Mask members, Val weight) {
  if (members == 0) throw std::invalid_argument("hyperedge must be nonempty");
  if ((members & ~full_mask(n_)) != 0)
    throw std::invalid_argument("hyperedge outside ground set");
  if (weight <= 0) throw std::invalid_argument("edge weight must be positive");
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), members,
      [](const WeightedEdge& e, Mask m) { return e.members < m; });
  if (it != edges_.end() && it->members == members) {
    it->weight += weight;
  } else {
    edges_.insert(it, WeightedEdge{members, weight});
  }
}

WeightedHypergraph& WeightedHypergraph::operator+=(
    const WeightedHypergraph& other) {
  if (n_ != other.n_)
    throw std::invalid_argument("hypergraph ground sets differ");
  for (const WeightedEdge& e : other.edges_) add_edge(e.members, e.weight);
  return *this;
}

Val WeightedHypergraph::total_weight() const {
  Val s = 0;
  for (const WeightedEdge& e : edges_) s += e.weight;
  return s;
}

Val WeightedHypergraph::coverage(Mask x) const {
  Val s = 0;
  for (const WeightedEdge& e : edges_)
    if (e.members & x) s += e.weight;
  return s;
}

Val WeightedHypergraph::cut(Mask x) const {
  const Mask outside = full_mask(n_) & ~x;
  Val s = 0;
  for (const WeightedEdge& e : edges_)
    if ((e.members & x) && (e.members & outside)) s += e.weight;
  return s;
}

DegreeVector WeightedHypergraph::degrees() const {
  DegreeVector deg(n_, 0);
  for (const WeightedEdge& e : edges_)
    for (int u : elements_of(e.members)) deg[u] += e.weight;
  return deg;
}

Val min_cut_between(const WeightedHypergraph& g, int u, int v) {
  if (u == v) throw std::invalid_argument("min cut needs distinct vertices");
  Val best = kNegInf;
  const Mask all = full_mask(g.n());
  for (Mask x = 0; x <= all; ++x) {
    if (!has(x, u) || has(x, v)) continue;
    Val c = g.cut(x);
    if (best == kNegInf || c < best) best = c;
  }
  return best;
}

Val min_cut_to_area(const WeightedHypergraph& g, int u, Mask w) {
  if (w == 0) throw std::invalid_argument("area must be nonempty");
  if (has(w, u)) throw std::invalid_argument("vertex lies inside the area");
  Val best = kNegInf;
  const Mask all = full_mask(g.n());
  for (Mask x = 0; x <= all; ++x) {
    if (!has(x, u) || (x & w)) continue;
    Val c = g.cut(x);
    if (best == kNegInf || c < best) best = c;
  }
  return best;
}

void MixedHypergraph::add_edge(Mask tails, Mask heads, Mask both, Val weight) {
  if ((tails & heads) || (tails & both) || (heads & both))
    throw std::invalid_argument("edge parts must be pairwise disjoint");
  if (((tails | heads | both) & ~full_mask(n_)) != 0)
    throw std::invalid_argument("edge outside ground set");
  if ((heads | both) == 0 || (tails | both) == 0)
    throw std::invalid_argument("edge needs a head side and a tail side");
  if (weight <= 0) throw std::invalid_argument("edge weight must be positive");
  edges_.push_back(MixedEdge{tails, heads, both, weight});
}

Val MixedHypergraph::in_cut(Mask x) const {
  const Mask outside = full_mask(n_) & ~x;
  Val s = 0;
  for (const MixedEdge& e : edges_)
    if ((e.head_side() & x) && (e.tail_side() & outside)) s += e.weight;
  return s;
}

Val min_in_cut_between(const MixedHypergraph& g, int u, int v) {
  if (u == v) throw std::invalid_argument("min cut needs distinct vertices");
  Val best = kNegInf;
  const Mask all = full_mask(g.n());
  for (Mask x = 0; x <= all; ++x) {
    if (!has(x, v) || has(x, u)) continue;
    Val c = g.in_cut(x);
    if (best == kNegInf || c < best) best = c;
  }
  return best;
}

}  // namespace hypercover
