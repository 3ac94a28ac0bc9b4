#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hypercover/core.hpp"
#include "hypercover/hypergraph.hpp"
#include "hypercover/oracles.hpp"
#include "hypercover/set_function.hpp"

namespace hypercover {

struct CoverOptions {
  // Record per-call function/degree tables in the trace so the audit tools
  // can re-derive every invariant.  Costs an extra 2^n per call.
  bool diagnostics = false;
  // Refuse ground sets larger than this (enumeration is 2^n everywhere).
  int cap = kDefaultCap;
};

// Demand function plus exact degree specification.
struct CoverInstance {
  SetFunction p;
  DegreeVector m;
};

// One recursive call of either cover routine.  Masks are in ambient
// coordinates; `active` is the call's ground set V_i.
struct CoverStep {
  Mask active = 0;
  Val k = 0;        // max value of the call's demand function
  Val m_total = 0;  // m_i(V_i)
  Mask a = 0;       // hyperedge emitted by this call
  Val alpha = 0;    // its weight
  // alpha candidates; unused slots hold kPosInf.  The linear-size routine
  // fills the first three, the near-uniform routine all five.
  std::array<Val, 5> alpha_parts{kPosInf, kPosInf, kPosInf, kPosInf, kPosInf};
  unsigned attained = 0;  // bit c set iff alpha == alpha_parts[c]
  Mask z = 0;             // vertices removed after this call

  // Linear-size routine only:
  Mask forced = 0;                     // D_i = {u : m_i(u) = K}
  std::vector<Mask> maximizer_family;  // inclusion-minimal maximizers
  Mask transversal = 0;                // smallest-index transversal T_i

  // Near-uniform routine only:
  Mask j = 0;                  // correlation seed of this call
  long ratio_iterations = 0;   // iterations spent on the alpha_4 ratio route

  // Diagnostics (CoverOptions::diagnostics): per-component value tables of
  // the call's demand function (ambient-indexed, kNegInf off the domain) and
  // the call's degree vector (zero off the domain).
  std::vector<std::vector<Val>> p_tables;
  std::vector<Val> m_values;
};

struct CoverTrace {
  int n = 0;
  GroundSet ground;
  bool uniform = false;      // produced by the near-uniform routine
  bool pair = false;         // two-component demand
  bool diagnostics = false;
  Mask removed_zero = 0;     // vertices contracted away by m(u)=0 preprocessing
  Val k1 = 0;                // K of the first call (after preprocessing)
  Val m1_total = 0;          // m(V) of the first call
  std::vector<CoverStep> steps;
};

// True iff m covers p setwise (m(X) >= p(X) for all X) and no degree exceeds
// the maximum demand (m(u) <= K_p) — exactly the solvability condition for a
// degree-specified weak cover.  Two oracle queries.  On failure, fills *why
// when given.
bool check_feasibility(const CoverInstance& inst,
                       InfeasibilityCertificate* why = nullptr);

// Degree-specified weak cover with at most 4|V|-1 hyperedges: each call adds
// one hyperedge A = (minimal transversal of the minimal-maximizer family)
// ∪ {degree-saturated vertices} with the largest weight that keeps the
// revised instance feasible.  Output satisfies b(X) >= p(X) everywhere,
// b(u) = m(u) exactly, and total weight K_p.  Throws InfeasibleError when
// the instance fails check_feasibility.
std::pair<WeightedHypergraph, CoverTrace> weak_cover_basic(
    const CoverInstance& inst, const CoverOptions& opts = {});

// Demand side of the near-uniform routine: a single function, or two
// functions covered simultaneously (their pointwise max is covered; both
// must then have the same maximum value).
struct UniformCoverInstance {
  std::vector<SetFunction> components;  // one or two, same ground set
  DegreeVector m;
  Mask j = 0;  // correlation seed; empty at the top level
};

// Near-uniform weak cover: hyperedges are supports of extreme points of the
// admissible-hyperedge polytope, so every emitted size lies in
// {floor(m(V)/K_p), ceil(m(V)/K_p)}.  At most 11|V| edges for one component,
// 14|V|^2 - 1 for two.
std::pair<WeightedHypergraph, CoverTrace> weak_cover_uniform(
    const UniformCoverInstance& inst, const CoverOptions& opts = {});

// The fifth weight candidate of the near-uniform routine: the amount by
// which the running total m(V) may shrink before floor(m(V)/K) or
// ceil(m(V)/K) would move away from the current support size.  kPosInf when
// m(V) is a multiple of K or the support size allows either rounding.
Val compute_alpha5(Val m_total, Val k, int a_size);

// Findings of the trace-level analysis checks; empty violations == pass.
struct DiagnosticsReport {
  std::vector<std::string> violations;
  int alpha4_calls = 0;
  int alpha5_calls = 0;
  bool ok() const { return violations.empty(); }
};

// Re-derives the analysis objects of the near-uniform routine from a
// diagnostics-enabled trace and checks them: inclusion-maximal tight sets
// per call and laminarity of their cumulative projection, monotone
// non-increase of the pairwise slack gamma(u,v) = min{m(X)-p(X) : u,v ∈ X},
// and — on calls where the ratio-based weight candidate alone attains alpha
// — the existence of a witness set whose pairs all strictly drop in slack.
DiagnosticsReport trace_diagnostics(const CoverTrace& trace);

}  // namespace hypercover
