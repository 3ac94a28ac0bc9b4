#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <vector>

namespace hypercover {

using Rat = boost::multiprecision::mpq_rational;

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rat objective = 0;
  std::vector<Rat> x;
};

// max c·x subject to A x ≤ b, x ≥ 0, in exact rational arithmetic.
// Dense two-phase tableau simplex with Bland's rule, so it terminates on
// degenerate inputs (which integral polytopes produce constantly).
LpResult solve_lp(const std::vector<std::vector<Rat>>& a,
                  const std::vector<Rat>& b, const std::vector<Rat>& c);

}  // namespace hypercover
