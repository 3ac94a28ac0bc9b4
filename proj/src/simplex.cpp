#include "hypercover/simplex.hpp"

#include <stdexcept>

namespace hypercover {

namespace {

// Dense tableau: `t` holds the constraint columns, `rhs` the basic values,
// `obj`/`obj_rhs` the objective row (obj_rhs = -current objective value).
struct Tableau {
  int rows = 0;
  int cols = 0;  // total columns incl. any artificial
  std::vector<std::vector<Rat>> t;
  std::vector<Rat> rhs;
  std::vector<Rat> obj;
  Rat obj_rhs = 0;
  std::vector<int> basis;

  void pivot(int pr, int pc) {
    const Rat pv = t[pr][pc];
    for (int c = 0; c < cols; ++c) t[pr][c] /= pv;
    rhs[pr] /= pv;
    for (int r = 0; r < rows; ++r) {
      if (r == pr) continue;
      const Rat f = t[r][pc];
      if (f == 0) continue;
      for (int c = 0; c < cols; ++c) t[r][c] -= f * t[pr][c];
      rhs[r] -= f * rhs[pr];
    }
    const Rat f = obj[pc];
    if (f != 0) {
      for (int c = 0; c < cols; ++c) obj[c] -= f * t[pr][c];
      obj_rhs -= f * rhs[pr];
    }
    basis[pr] = pc;
  }

  enum class Step { done, pivoted, unbounded };

  // One Bland step over the first `usable` columns: entering = lowest-index
  // column with positive reduced profit, leaving = lowest basic index among
  // the tightest rows.  No unblocked row means the column rises forever.
  Step step(int usable) {
    int pc = -1;
    for (int c = 0; c < usable; ++c) {
      if (obj[c] > 0) {
        pc = c;
        break;
      }
    }
    if (pc < 0) return Step::done;
    int pr = -1;
    for (int r = 0; r < rows; ++r) {
      if (t[r][pc] <= 0) continue;
      if (pr < 0 || rhs[r] / t[r][pc] < rhs[pr] / t[pr][pc] ||
          (rhs[r] / t[r][pc] == rhs[pr] / t[pr][pc] && basis[r] < basis[pr]))
        pr = r;
    }
    if (pr < 0) return Step::unbounded;
    pivot(pr, pc);
    return Step::pivoted;
  }

  // Runs Bland steps to optimality; false when the objective is unbounded.
  bool optimize(int usable) {
    for (;;) {
      const Step s = step(usable);
      if (s == Step::pivoted) continue;
      return s == Step::done;
    }
  }
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<Rat>>& a,
                  const std::vector<Rat>& b, const std::vector<Rat>& c) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(c.size());
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("constraint row width mismatch");
  if (static_cast<int>(b.size()) != m)
    throw std::invalid_argument("right-hand side length mismatch");

  // Columns: n structural, m slacks, one artificial (used only if some
  // right-hand side is negative).
  const int art = n + m;
  Tableau tab;
  tab.rows = m;
  tab.cols = art + 1;
  tab.t.assign(m, std::vector<Rat>(tab.cols, 0));
  tab.rhs = b;
  tab.obj.assign(tab.cols, 0);
  tab.basis.resize(m);

  int worst = -1;
  for (int r = 0; r < m; ++r) {
    for (int cidx = 0; cidx < n; ++cidx) tab.t[r][cidx] = a[r][cidx];
    tab.t[r][n + r] = 1;
    tab.t[r][art] = -1;
    tab.basis[r] = n + r;
    if (b[r] < 0 && (worst < 0 || b[r] < b[worst])) worst = r;
  }

  if (worst >= 0) {
    // Phase 1: maximize -artificial.  Pivoting the artificial in at the most
    // negative row makes every basic value non-negative, after which ordinary
    // Bland steps drive the artificial back to zero iff the program is
    // feasible.
    tab.obj[art] = -1;
    tab.pivot(worst, art);
    if (!tab.optimize(tab.cols))
      throw std::logic_error("phase-1 objective cannot be unbounded");
    if (tab.obj_rhs != 0) return LpResult{LpStatus::infeasible, 0, {}};
    for (int r = 0; r < m; ++r) {
      if (tab.basis[r] != art) continue;
      // Degenerate: the artificial sits in the basis at value zero.  Swap it
      // for any real column; if the row has none, it reads 0 = 0 and stays
      // inert under every later pivot.
      for (int cidx = 0; cidx < art; ++cidx) {
        if (tab.t[r][cidx] != 0) {
          tab.pivot(r, cidx);
          break;
        }
      }
    }
  }

  // Phase 2: fresh objective row for c, priced with respect to the current
  // basis.  The artificial column is excluded from entering, which fixes the
  // artificial at zero.
  for (int cidx = 0; cidx < tab.cols; ++cidx) tab.obj[cidx] = 0;
  for (int cidx = 0; cidx < n; ++cidx) tab.obj[cidx] = c[cidx];
  tab.obj_rhs = 0;
  for (int r = 0; r < m; ++r) {
    const int bv = tab.basis[r];
    if (bv < n && tab.obj[bv] != 0) {
      const Rat f = tab.obj[bv];
      for (int cidx = 0; cidx < tab.cols; ++cidx) tab.obj[cidx] -= f * tab.t[r][cidx];
      tab.obj_rhs -= f * tab.rhs[r];
    }
  }
  if (!tab.optimize(art)) return LpResult{LpStatus::unbounded, 0, {}};

  LpResult result;
  result.status = LpStatus::optimal;
  result.x.assign(n, 0);
  for (int r = 0; r < m; ++r)
    if (tab.basis[r] < n) result.x[tab.basis[r]] = tab.rhs[r];
  result.objective = -tab.obj_rhs;
  return result;
}

}  // namespace hypercover
