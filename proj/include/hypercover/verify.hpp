#pragma once

#include <string>
#include <vector>

#include "hypercover/core.hpp"
#include "hypercover/cover.hpp"
#include "hypercover/hypergraph.hpp"
#include "hypercover/set_function.hpp"

namespace hypercover {

struct CheckResult {
  std::string what;    // property that was checked
  bool ok = true;
  std::string detail;  // witness description on failure
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  void add(std::string what, bool ok, std::string detail = "") {
    checks.push_back({std::move(what), ok, std::move(detail)});
  }
  bool ok() const {
    for (const CheckResult& c : checks)
      if (!c.ok) return false;
    return true;
  }
  std::string summary() const;  // one line per failed check, or "all passed"
};

enum class CoverFlavor { weak, strong };
enum class CoverMode { basic, uniform, uniform_pair };

// Exhaustive certification of a cover against its instance: coverage
// (b(X) >= p(X), or cut d(X) >= p(X) for the strong flavor) on every subset,
// exact degrees, total weight equal to the maximum demand, the mode's edge
// budget, and — for the uniform modes — hyperedge sizes confined to
// {floor(m(V)/K), ceil(m(V)/K)}.  Failures carry the smallest witness in
// bitmask order.
VerificationReport verify_cover(const SetFunction& p, const DegreeVector& m,
                                const WeightedHypergraph& h,
                                CoverFlavor flavor, CoverMode mode);

// True iff no two members cross (every pair nested or disjoint).  Duplicates
// are tolerated.
bool check_laminar(const std::vector<Mask>& family);

// Size bound for removing Z from a laminar family: the projection
// L' = {X - Z : X ∈ L} - {∅} satisfies |L| <= |L'| + 3|Z|.  Members are
// deduplicated on both sides before counting.
bool check_projection_bound(const std::vector<Mask>& laminar_family, Mask z);

// Re-derives every per-call invariant a cover trace promises: the active/K/m
// chains, alpha parts and attainment, step budgets, the transversal and
// forced-vertex structure (linear-size route), support feasibility
// properties and rounding-bracket preservation (near-uniform route), and the
// growth laws of the forced and minimal-maximizer families.  Checks that
// need per-call tables are skipped unless the trace was recorded with
// diagnostics.
VerificationReport audit_trace(const CoverTrace& trace);

}  // namespace hypercover
