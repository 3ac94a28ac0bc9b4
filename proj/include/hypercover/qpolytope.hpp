#pragma once

#include <optional>
#include <vector>

#include "hypercover/core.hpp"
#include "hypercover/set_function.hpp"
#include "hypercover/simplex.hpp"

namespace hypercover {

// Admissible-hyperedge polytope for a degree specification m against a
// demand function p with maximum value K over its active domain V:
//   (i)   0 <= x_u <= min{1, m(u)}        for every u
//   (ii)  x(Z) >= 1                       for every Z with p(Z) = K
//   (iii) x_u = 1                         for every u with m(u) = K
//   (iv)  x(Z) <= m(Z) - p(Z) + 1         for every Z
//   (v)   floor(m(V)/K) <= x(V) <= ceil(m(V)/K)
// Its integral points are exactly the indicator vectors of hyperedges the
// uniform cover routine may emit next.  p may be a maximum of two functions;
// constraints (ii) and (iv) then decompose into per-component constraints
// against the shared K, which is the same constraint set.
struct QInstance {
  SetFunction p;
  DegreeVector m;  // ambient-indexed; entries outside p.active() are ignored
  Val K = 0;
};

// Computes K from p and validates the pieces (K > 0, m sized to the ground
// set, degrees non-negative on the active domain).
QInstance make_q_instance(SetFunction p, DegreeVector m);

// Rational point indexed by the ambient ground set; entries outside the
// active domain are ignored by all checks.
using QPoint = std::vector<Rat>;

enum class QViolationKind {
  box_lower,        // (i)  x_u < 0
  box_upper,        // (i)  x_u > min{1, m(u)}
  maximizer_lower,  // (ii) x(Z) < 1 on a p-maximizer
  forced_one,       // (iii) x_u != 1 though m(u) = K
  slack_upper,      // (iv) x(Z) > m(Z) - p(Z) + 1
  total_lower,      // (v)  x(V) < floor(m(V)/K)
  total_upper,      // (v)  x(V) > ceil(m(V)/K)
};

struct QViolation {
  QViolationKind kind;
  int vertex = -1;  // for per-vertex constraints
  Mask set = 0;     // for per-set constraints
  Rat lhs = 0;
  Rat rhs = 0;
};

// First violated constraint in the fixed order (i), (ii), (iii), (iv), (v),
// scanning vertices ascending and sets in ascending mask order; nullopt
// means x is a member.
std::optional<QViolation> q_membership(const QInstance& inst, const QPoint& x);

// Integral extreme-point optimum of max { c.x : x in Q }.  Solved by an
// exact-rational LP with lazily separated (ii)/(iv) rows, then sequential
// variable fixing in vertex order (tentatively 1 when c_u >= 0, else 0; a
// fix is kept iff the optimum value survives).  The polytope is integral
// under the cover hypotheses, so the fully fixed point is a 0/1 optimum.
// Throws std::runtime_error if the polytope is empty (broken hypotheses).
QPoint q_optimize(const QInstance& inst, const std::vector<Rat>& c);

// Support of a point: vertices with a positive entry.
Mask q_support(const QPoint& x);

// The four structural properties every integral member's support enjoys.
struct QSupportProperties {
  bool transversal = false;      // meets every p-maximizer
  bool contains_forced = false;  // includes every u with m(u) = K
  bool within_slack = false;     // |A ∩ Z| <= m(Z) - p(Z) + 1 for all Z
  bool size_in_range = false;    // |A| in [floor(m(V)/K), ceil(m(V)/K)]
  bool all() const {
    return transversal && contains_forced && within_slack && size_in_range;
  }
};

QSupportProperties q_support_properties(const QInstance& inst, Mask a);

}  // namespace hypercover
