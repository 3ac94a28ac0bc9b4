#pragma once

#include <variant>
#include <vector>

#include "hypercover/core.hpp"
#include "hypercover/cover.hpp"
#include "hypercover/hypergraph.hpp"
#include "hypercover/set_function.hpp"
#include "hypercover/verify.hpp"

namespace hypercover {

// Raise the local connectivity of a weighted hypergraph: after adding the
// solution, every pair u,v must have lambda(u,v) >= r[u][v].  The target
// matrix is symmetric with a zero diagonal.  Degrees are exact when given;
// without them the cheapest degree vector is derived first.
struct LocalCAInstance {
  WeightedHypergraph g;
  std::vector<std::vector<Val>> r;
  DegreeVector m;
  bool has_m = false;
};

// One hypergraph added on a shared vertex set must fix the local
// connectivity of two input hypergraphs at once.  Solvable only when both
// demand systems have the same largest deficiency.
struct SimulCAInstance {
  WeightedHypergraph g1;
  std::vector<std::vector<Val>> r1;
  WeightedHypergraph g2;
  std::vector<std::vector<Val>> r2;
  DegreeVector m;
};

struct Area {
  Mask members = 0;
  Val r = 0;
};

// Raise the connectivity between every vertex and every area: after adding
// the solution, lambda(v, W) >= r(W) for each area W and vertex v outside it.
struct NodeToAreaInstance {
  WeightedHypergraph g;
  std::vector<Area> areas;
  DegreeVector m;
};

// Make a mixed hypergraph rooted-connected by adding undirected hyperedges:
// every root-free set must receive in-weight k, every set containing the
// root in-weight l.  Here m is an upper bound on the new degrees, not an
// exact specification.
struct MixedCAInstance {
  MixedHypergraph g;
  int root = 0;
  Val k = 0;
  Val l = 0;
  DegreeVector m;
};

// Demand function of the local connectivity instance:
// max{r[u][v] : X separates u from v} minus the existing cut, zero on the
// empty set and the full set.  Symmetric and skew-supermodular.
SetFunction build_p_local(const WeightedHypergraph& g,
                          const std::vector<std::vector<Val>>& r);

// Demand function of the node-to-area instance: the largest r(W) over areas
// that X either contains or misses entirely (zero when no area qualifies),
// minus the existing cut.  Symmetric and skew-supermodular.
SetFunction build_p_node_to_area(const WeightedHypergraph& g,
                                 const std::vector<Area>& areas);

// Directional demand of the rooted mixed instance: k minus the in-cut on
// root-free sets, l minus the in-cut on sets containing the root, zero on
// the empty and full set.  Not symmetric when k != l; the solver consumes
// its symmetrization max{p(X), p(V-X)}.
SetFunction build_p_mixed(const MixedHypergraph& g, int root, Val k, Val l);

// Least exact degree vector covering p setwise: start every entry at the
// maximum demand and shrink vertices in index order to the largest demand
// the others leave unmet.  One oracle query per vertex.
DegreeVector min_degree_vector(const SetFunction& p);

// Cut cover of a symmetric demand function: a weak cover of total weight
// K_p is automatically a cut cover, so this runs the requested weak-cover
// routine and then certifies d(X) >= p(X) exhaustively.  Throws
// std::invalid_argument when p is not symmetric or the mode names the
// two-function routine, InfeasibleError when no cover exists, and
// std::logic_error if certification fails.
std::pair<WeightedHypergraph, CoverTrace> solve_strong_cover(
    const SetFunction& p, const DegreeVector& m, CoverMode mode,
    const CoverOptions& opts = {});

// A demand system given directly as one or two tabulated functions.
struct CoverFileInstance {
  std::vector<SetFunction> components;
  DegreeVector m;
};

// Any instance a file can describe.
using InstancePayload =
    std::variant<CoverFileInstance, LocalCAInstance, SimulCAInstance,
                 NodeToAreaInstance, MixedCAInstance>;

struct InstanceFile {
  GroundSet ground;  // labels for I/O; payload masks are index-based
  InstancePayload payload;
};

struct SolveOptions {
  CoverMode mode = CoverMode::basic;
  CoverFlavor flavor = CoverFlavor::weak;
  CoverOptions cover;
};

struct Solution {
  WeightedHypergraph h;
  CoverTrace trace;
  VerificationReport report;
  std::vector<std::string> notes;
};

// Solves any instance kind and certifies the result.  Connectivity
// augmentation kinds always need cut covers, so they override the weak
// flavor; the two-hypergraph kind always runs the two-function near-uniform
// routine.  The returned report re-checks the cover exhaustively plus the
// kind's own connectivity demands via minimum cuts.
Solution solve_application(const InstanceFile& file,
                           const SolveOptions& opts = {});

// The certification half of solve_application for an already-built solution:
// exhaustive cover checks against the instance's demand function plus the
// kind's connectivity demands via minimum cuts.
VerificationReport verify_application(const InstanceFile& file,
                                      const WeightedHypergraph& h,
                                      const SolveOptions& opts = {});

}  // namespace hypercover
