#include "hypercover/qpolytope.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace hypercover {

namespace {

// LP working state for q_optimize.  Variables are the active vertices in
// ascending order; rows accumulate as: static box/forced/total rows, then
// lazily separated (ii)/(iv) cuts, then temporary fixing rows.
struct QLp {
  const QInstance* inst;
  Mask dom = 0;
  std::vector<int> verts;
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> rhs;
  std::size_t permanent_rows = 0;  // static + accepted cuts; fixes sit above

  int width() const { return static_cast<int>(verts.size()); }

  std::vector<Rat> set_row(Mask z, Rat sign) const {
    std::vector<Rat> row(verts.size(), 0);
    for (int j = 0; j < width(); ++j)
      if (has(z, verts[j])) row[j] = sign;
    return row;
  }

  void add_row(std::vector<Rat> row, Rat bound) {
    rows.push_back(std::move(row));
    rhs.push_back(std::move(bound));
  }

  Rat point_sum(const std::vector<Rat>& x, Mask z) const {
    Rat s = 0;
    for (int j = 0; j < width(); ++j)
      if (has(z, verts[j])) s += x[j];
    return s;
  }

  // First violated lazy constraint against an LP point, scanning maximizer
  // rows then slack rows, each over submasks of the domain in ascending
  // order.  Returns {set, is_maximizer_row}.
  std::optional<std::pair<Mask, bool>> separate(const std::vector<Rat>& x) const {
    for (Mask z = 0;; z = next_submask(z, dom)) {
      if (inst->p.value(z) == inst->K && point_sum(x, z) < 1)
        return std::make_pair(z, true);
      if (z == dom) break;
    }
    for (Mask z = 0;; z = next_submask(z, dom)) {
      const Val pv = inst->p.value(z);
      // Rows with p(Z) <= 0 are implied by the box rows and are skipped,
      // which also keeps -infinity values out of the arithmetic.
      if (pv >= 1 && point_sum(x, z) > Rat(degree_sum(inst->m, z) - pv + 1))
        return std::make_pair(z, false);
      if (z == dom) break;
    }
    return std::nullopt;
  }

  // Solves the LP to optimality over the full constraint set, adding
  // violated (ii)/(iv) rows (as permanent cuts, below any fixing rows)
  // until the optimum separates cleanly.
  LpResult solve(const std::vector<Rat>& c) {
    while (true) {
      LpResult r = solve_lp(rows, rhs, c);
      if (r.status != LpStatus::optimal) return r;
      const auto cut = separate(r.x);
      if (!cut) return r;
      std::vector<Rat> row = set_row(cut->first, cut->second ? -1 : 1);
      Rat bound = cut->second
                      ? Rat(-1)
                      : Rat(degree_sum(inst->m, cut->first) -
                            inst->p.value(cut->first) + 1);
      rows.insert(rows.begin() + permanent_rows, std::move(row));
      rhs.insert(rhs.begin() + permanent_rows, std::move(bound));
      ++permanent_rows;
    }
  }
};

}  // namespace

QInstance make_q_instance(SetFunction p, DegreeVector m) {
  if (static_cast<int>(m.size()) != p.n())
    throw std::invalid_argument("degree vector does not match ground set");
  for (int u : elements_of(p.active()))
    if (m[u] < 0) throw std::invalid_argument("negative degree");
  const Val k = p.max_value();
  if (k <= 0)
    throw std::invalid_argument("polytope requires a positive maximum value");
  return QInstance{std::move(p), std::move(m), k};
}

std::optional<QViolation> q_membership(const QInstance& inst, const QPoint& x) {
  if (static_cast<int>(x.size()) != inst.p.n())
    throw std::invalid_argument("point does not match ground set");
  const Mask dom = inst.p.active();

  auto x_sum = [&](Mask z) {
    Rat s = 0;
    for (int u : elements_of(z)) s += x[u];
    return s;
  };

  for (int u : elements_of(dom)) {
    const Rat ub = std::min<Val>(1, inst.m[u]);
    if (x[u] < 0)
      return QViolation{QViolationKind::box_lower, u, 0, x[u], 0};
    if (x[u] > ub)
      return QViolation{QViolationKind::box_upper, u, 0, x[u], ub};
  }
  for (Mask z = 0;; z = next_submask(z, dom)) {
    if (inst.p.value(z) == inst.K) {
      const Rat lhs = x_sum(z);
      if (lhs < 1)
        return QViolation{QViolationKind::maximizer_lower, -1, z, lhs, 1};
    }
    if (z == dom) break;
  }
  for (int u : elements_of(dom)) {
    if (inst.m[u] == inst.K && x[u] != 1)
      return QViolation{QViolationKind::forced_one, u, 0, x[u], 1};
  }
  for (Mask z = 0;; z = next_submask(z, dom)) {
    const Val pv = inst.p.value(z);
    // p(Z) <= 0 makes this row a consequence of the boxes: with (i) already
    // verified, x(Z) <= m(Z) < m(Z) - p(Z) + 1.  Skipping also avoids
    // arithmetic on -infinity sentinels.
    if (pv >= 1) {
      const Rat bound = degree_sum(inst.m, z) - pv + 1;
      const Rat lhs = x_sum(z);
      if (lhs > bound)
        return QViolation{QViolationKind::slack_upper, -1, z, lhs, bound};
    }
    if (z == dom) break;
  }
  const Val total = degree_sum(inst.m, dom);
  const Rat lo = total / inst.K;
  const Rat hi = (total + inst.K - 1) / inst.K;
  const Rat lhs = x_sum(dom);
  if (lhs < lo) return QViolation{QViolationKind::total_lower, -1, dom, lhs, lo};
  if (lhs > hi) return QViolation{QViolationKind::total_upper, -1, dom, lhs, hi};
  return std::nullopt;
}

Mask q_support(const QPoint& x) {
  Mask a = 0;
  for (std::size_t u = 0; u < x.size(); ++u)
    if (x[u] > 0) a |= bit(static_cast<int>(u));
  return a;
}

QPoint q_optimize(const QInstance& inst, const std::vector<Rat>& c) {
  if (static_cast<int>(c.size()) != inst.p.n())
    throw std::invalid_argument("objective does not match ground set");

  QLp lp;
  lp.inst = &inst;
  lp.dom = inst.p.active();
  for (int u : elements_of(lp.dom)) lp.verts.push_back(u);
  const int w = lp.width();
  if (w == 0) throw std::invalid_argument("empty domain");

  // Static rows: boxes (i), forced vertices (iii), totals (v).
  for (int j = 0; j < w; ++j) {
    std::vector<Rat> row(w, 0);
    row[j] = 1;
    lp.add_row(row, std::min<Val>(1, inst.m[lp.verts[j]]));
    if (inst.m[lp.verts[j]] == inst.K) {
      row[j] = -1;
      lp.add_row(row, -1);
    }
  }
  const Val total = degree_sum(inst.m, lp.dom);
  lp.add_row(lp.set_row(lp.dom, 1), Rat((total + inst.K - 1) / inst.K));
  lp.add_row(lp.set_row(lp.dom, -1), Rat(-(total / inst.K)));
  lp.permanent_rows = lp.rows.size();

  std::vector<Rat> obj(w);
  for (int j = 0; j < w; ++j) obj[j] = c[lp.verts[j]];

  LpResult first = lp.solve(obj);
  if (first.status != LpStatus::optimal)
    throw std::runtime_error(
        "admissible-hyperedge polytope is empty; the feasibility hypotheses "
        "do not hold");
  const Rat vstar = first.objective;

  // Sequential fixing: each kept fix is a pair of rows pinning x_j.  The
  // polytope is integral, so whenever the preferred value kills the optimum
  // the other value must preserve it.
  std::vector<Rat> fixed(w, 0);
  for (int j = 0; j < w; ++j) {
    const Rat prefer = obj[j] >= 0 ? 1 : 0;
    bool kept = false;
    for (const Rat& value : {prefer, Rat(1) - prefer}) {
      std::vector<Rat> row(w, 0);
      row[j] = 1;
      lp.add_row(row, value);
      row[j] = -1;
      lp.add_row(row, -value);
      LpResult r = lp.solve(obj);
      if (r.status == LpStatus::optimal && r.objective == vstar) {
        fixed[j] = value;
        kept = true;
        break;
      }
      lp.rows.resize(lp.rows.size() - 2);
      lp.rhs.resize(lp.rhs.size() - 2);
    }
    if (!kept)
      throw std::runtime_error(
          "variable fixing lost the optimum; the polytope is not integral");
  }

  QPoint out(inst.p.n(), 0);
  for (int j = 0; j < w; ++j) out[lp.verts[j]] = fixed[j];

  Rat achieved = 0;
  for (int j = 0; j < w; ++j) achieved += obj[j] * fixed[j];
  if (achieved != vstar || q_membership(inst, out))
    throw std::runtime_error("fixed point fails the final membership audit");
  return out;
}

QSupportProperties q_support_properties(const QInstance& inst, Mask a) {
  const Mask dom = inst.p.active();
  a &= dom;
  QSupportProperties props;

  props.transversal = true;
  props.within_slack = true;
  for (Mask z = 0;; z = next_submask(z, dom)) {
    const Val pv = inst.p.value(z);
    if (pv == inst.K && (z & a) == 0) props.transversal = false;
    if (pv > kNegInfGuard &&
        popcount(z & a) > degree_sum(inst.m, z) - pv + 1)
      props.within_slack = false;
    if (z == dom) break;
  }

  props.contains_forced = true;
  for (int u : elements_of(dom))
    if (inst.m[u] == inst.K && !has(a, u)) props.contains_forced = false;

  const Val total = degree_sum(inst.m, dom);
  const Val size = popcount(a);
  props.size_in_range =
      size >= total / inst.K && size <= (total + inst.K - 1) / inst.K;
  return props;
}

}  // namespace hypercover
