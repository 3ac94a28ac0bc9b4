#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "hypercover/core.hpp"
#include "hypercover/hypergraph.hpp"

namespace hypercover {

// Integer-valued set function on the subsets of an "active" vertex set inside
// an ambient ground set of n vertices.  Contraction removes vertices from the
// active set but keeps ambient indices stable, so masks stay comparable
// across a whole solver run.  Instances are immutable and cheap to copy (the
// expression tree is shared); evaluation is pure, so they are safe to use
// from several threads at once.
class SetFunction {
 public:
  using Eval = std::function<Val(Mask)>;

  // f given by an explicit table indexed by subset mask (size 2^n).
  static SetFunction tabulated(int n, std::vector<Val> table);
  // f given by a callback; the callback is only invoked on subsets of active.
  static SetFunction from_callable(int n, Mask active, Eval eval);

  // f - b_H, where b_H is the coverage function of `h` (same ambient n).
  SetFunction minus_coverage(WeightedHypergraph h) const;
  // (f/Z)(X) = max{f(X ∪ R) : R ⊆ Z}, defined on active∖Z.
  SetFunction contracted(Mask z) const;
  // Domain shrink to active∖Z with values unchanged.
  SetFunction restricted(Mask z) const;
  // Pointwise max of two functions over the same ground set.
  static SetFunction max_of(SetFunction a, SetFunction b);

  int n() const;
  Mask active() const;
  Val value(Mask x) const;  // requires x ⊆ active

  // Maximum of f over all subsets of active (the cover algorithms' K).
  Val max_value() const;

  // Explicit table of f, indexed by ambient mask; entries outside the active
  // domain are kNegInf.
  std::vector<Val> tabulate() const;

  // f(X) == f(active∖X) for every X.
  bool is_symmetric() const;
  // Every pair X, Y satisfies f(X)+f(Y) <= f(X∩Y)+f(X∪Y) or
  // f(X)+f(Y) <= f(X∖Y)+f(Y∖X).
  bool is_skew_supermodular() const;

 private:
  struct Node;
  explicit SetFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// max{f(X), f(active∖X)} — the symmetric envelope used by the mixed
// connectivity reduction.
SetFunction symmetrized(const SetFunction& f);

}  // namespace hypercover
