#pragma once

#include <functional>
#include <numeric>
#include <vector>

#include "hypercover/core.hpp"
#include "hypercover/hypergraph.hpp"
#include "hypercover/set_function.hpp"

namespace hypercover {

struct OracleResult {
  Val value = kNegInf;    // optimum of the queried objective
  Mask argmax = 0;        // smallest optimal subset in bitmask order
  Val p_value = kNegInf;  // the bare function value at argmax
};

// max{p(Z) - d_H(Z) + y0(Z) : S0 ⊆ Z ⊆ active(p)∖T0}, by exhaustive scan in
// ascending bitmask order (so ties go to the smallest subset).  y0 is indexed
// by ambient vertex; entries outside active(p) are ignored.
OracleResult max_oracle_sc(const SetFunction& p, const WeightedHypergraph& h,
                           Mask s0, Mask t0, const std::vector<Val>& y0);

// Same objective with the coverage b_H in place of the cut d_H.
OracleResult max_oracle_b(const SetFunction& p, const WeightedHypergraph& h,
                          Mask s0, Mask t0, const std::vector<Val>& y0);

// Same with no hypergraph term: max{p(Z) + y0(Z) : S0 ⊆ Z ⊆ active∖T0}.
OracleResult max_oracle_empty(const SetFunction& p, Mask s0, Mask t0,
                              const std::vector<Val>& y0);

// Value-query interface shared by the subroutines below, so they can run
// against either a plain SetFunction or the stacked representation of the
// cover algorithms' evolving functions.  Contract: given (S0, T0, y0) with
// S0, T0 disjoint subsets of the domain, return
// max{f(Z) + y0(Z) : S0 ⊆ Z ⊆ domain∖T0} with the smallest-mask tie rule.
using EmptyOracleFn =
    std::function<OracleResult(Mask, Mask, const std::vector<Val>&)>;

// The inclusion-minimal maximizers of the function behind `oracle`, computed
// by repeated shrinking: grow a forbidden set T across members; within a
// member, try to drop each vertex and requery.  For skew-supermodular
// functions the result is pairwise disjoint; if the computed family is not
// disjoint the input was not skew-supermodular and we throw.
std::vector<Mask> minimal_maximizers_oracle(const EmptyOracleFn& oracle,
                                            int n, Mask domain);
std::vector<Mask> minimal_maximizers(const SetFunction& p);

// Smallest-index vertex of each member; exact transversal for disjoint
// families.
Mask minimal_transversal(const std::vector<Mask>& family);

// Exact fraction with a positive denominator, small enough for cross
// multiplication in 128-bit arithmetic.
struct Frac {
  Val num = 0;
  Val den = 1;

  static Frac of(Val num, Val den);  // normalizes, den > 0
  Val floor() const;                 // floor(num/den)
  friend bool operator==(const Frac&, const Frac&) = default;
};
bool operator<(const Frac& a, const Frac& b);

struct RatioResult {
  Mask argmax = 0;
  Frac ratio;
  int iterations = 0;  // outer improvement steps, bounded by max g
};

// max{f(Z)/g(Z) : Z ⊆ domain} for integer f and positive integer g, by the
// discrete Newton / Dinkelbach iteration: start at Z = domain and repeatedly
// maximize f - λ·g (exactly, via cross multiplication) until no positive
// residual remains.
RatioResult ratio_maximize(const std::function<Val(Mask)>& f,
                           const std::function<Val(Mask)>& g, Mask domain);

// min{⌊(m(X) - p(X)) / (|A∩X| - 1)⌋ : X ⊆ domain, |A∩X| ≥ 2}, +∞ (kPosInf)
// when no such X exists.  Two independent routes: a direct scan, and the
// per-pair ratio-maximization reduction (floor of the negated best ratio).
Val alpha4_exhaustive(const std::function<Val(Mask)>& p_eval,
                      const DegreeVector& m, Mask a, Mask domain);
Val alpha4_via_ratio(const std::function<Val(Mask)>& p_eval,
                     const DegreeVector& m, Mask a, Mask domain,
                     long* ratio_iterations = nullptr);

// Oracle for the evolving function of the cover algorithms,
//   p_i = (p_1 - b_G) / Z_removed,
// where G accumulates the hyperedges pushed so far and Z_removed the
// contracted vertices.  Because every pushed hyperedge is disjoint from the
// vertices removed before it, the per-step contractions flatten into a single
// max over liftings by removed vertices, so every query is answered from the
// original function's table plus the accumulated coverage — no re-tabulation
// of intermediate functions.
class StackedOracle {
 public:
  explicit StackedOracle(const SetFunction& p1);

  int n() const { return n_; }
  Mask active() const { return active_; }
  Mask removed() const { return full_mask(n_) & ~active_; }
  const WeightedHypergraph& accumulated() const { return acc_; }

  // Record hyperedge `a` (⊆ active) with weight `alpha`, then contract the
  // vertices of `z` (⊆ a) out of the domain.
  void push(Mask a, Val alpha, Mask z);
  // Contract without adding an edge (the m(u)=0 preprocessing step).
  void contract(Mask z);

  // max{p_i(Z) + y0(Z) : S0 ⊆ Z ⊆ active∖T0}, smallest-mask ties.
  OracleResult query(Mask s0, Mask t0, const std::vector<Val>& y0) const;
  OracleResult query(Mask s0, Mask t0) const;  // y0 ≡ 0

  Val eval(Mask x) const;  // p_i(X), X ⊆ active
  Val K() const;           // max over all X ⊆ active

  // EmptyOracleFn view over the current function (captures by reference, so
  // it is only valid while this object lives).
  EmptyOracleFn as_empty_oracle() const;

 private:
  void ensure_table() const;

  int n_ = 0;
  Mask active_ = 0;
  std::vector<Val> base_;  // p_1 table, ambient
  WeightedHypergraph acc_;
  std::vector<Val> zero_;  // all-zero y0 for the convenience overload
  mutable bool table_ready_ = false;
  mutable std::vector<Val> table_;  // p_i over subsets of active
};

}  // namespace hypercover
