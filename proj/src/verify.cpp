#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "cover_common.hpp"
#include "hypercover/oracles.hpp"
#include "hypercover/qpolytope.hpp"
#include "hypercover/verify.hpp"

namespace hypercover {

std::string VerificationReport::summary() const {
  std::string out;
  for (const CheckResult& c : checks) {
    if (c.ok) continue;
    out += "FAIL " + c.what;
    if (!c.detail.empty()) out += " (" + c.detail + ")";
    out += '\n';
  }
  if (out.empty())
    return "all " + std::to_string(checks.size()) + " checks passed";
  return out;
}

VerificationReport verify_cover(const SetFunction& p, const DegreeVector& m,
                                const WeightedHypergraph& h,
                                CoverFlavor flavor, CoverMode mode) {
  VerificationReport rep;
  const int n = p.n();
  const GroundSet ground = GroundSet::indexed(n);
  const Mask dom = p.active();
  const Val k = p.max_value();

  {
    bool ok = true;
    std::string where;
    for (Mask x = 0;; x = next_submask(x, dom)) {
      const Val have = flavor == CoverFlavor::weak ? h.coverage(x) : h.cut(x);
      const Val need = p.value(x);
      if (!is_neg_inf(need) && have < need) {
        ok = false;
        where = std::string(flavor == CoverFlavor::weak ? "b(" : "d(") +
                mask_to_string(x, ground) + ") = " + std::to_string(have) +
                " < " + std::to_string(need);
        break;
      }
      if (x == dom) break;
    }
    rep.add(flavor == CoverFlavor::weak ? "coverage meets the demand on every set"
                                        : "cut meets the demand on every set",
            ok, where);
  }
  {
    bool ok = true;
    std::string where;
    const std::vector<Val> deg = h.degrees();
    for (int u = 0; u < n; ++u) {
      const Val want = has(dom, u) ? m[u] : 0;
      if (deg[u] != want) {
        ok = false;
        where = ground.label(u) + " has degree " + std::to_string(deg[u]) +
                ", expected " + std::to_string(want);
        break;
      }
    }
    rep.add("degrees match the specification exactly", ok, where);
  }
  {
    const Val want = (is_neg_inf(k) || k < 0) ? 0 : k;
    rep.add("total weight equals the maximum demand",
            h.total_weight() == want,
            std::to_string(h.total_weight()) + " vs " + std::to_string(want));
  }
  {
    long budget = 0;
    switch (mode) {
      case CoverMode::basic:
        budget = n >= 1 ? 4L * n - 1 : 0;
        break;
      case CoverMode::uniform:
        budget = 11L * n;
        break;
      case CoverMode::uniform_pair:
        budget = n >= 1 ? 14L * n * n - 1 : 0;
        break;
    }
    const long count = static_cast<long>(h.edges().size());
    rep.add("edge count within the mode budget", count <= budget,
            std::to_string(count) + " vs " + std::to_string(budget));
  }
  if (mode != CoverMode::basic && !is_neg_inf(k) && k > 0) {
    const Val total = degree_sum(m, dom);
    const Val fl = total / k;
    const Val ce = (total + k - 1) / k;
    bool ok = true;
    std::string where;
    for (const WeightedEdge& e : h.edges()) {
      const Val sz = popcount(e.members);
      if (sz != fl && sz != ce) {
        ok = false;
        where = mask_to_string(e.members, ground) + " has size " +
                std::to_string(sz) + ", bracket {" + std::to_string(fl) +
                "," + std::to_string(ce) + "}";
        break;
      }
    }
    rep.add("hyperedge sizes sit in the rounding bracket", ok, where);
  }
  return rep;
}

bool check_laminar(const std::vector<Mask>& family) {
  std::vector<Mask> f(family);
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      const Mask c = f[i] & f[j];
      if (c != 0 && c != f[i] && c != f[j]) return false;
    }
  return true;
}

bool check_projection_bound(const std::vector<Mask>& laminar_family, Mask z) {
  const std::set<Mask> l(laminar_family.begin(), laminar_family.end());
  std::set<Mask> projected;
  for (Mask x : l)
    if (Mask y = x & ~z) projected.insert(y);
  return static_cast<Val>(l.size()) <=
         static_cast<Val>(projected.size()) + 3LL * popcount(z);
}

namespace {

std::string at_call(std::size_t i) { return "call " + std::to_string(i); }

// One aggregated pass/fail with the first failing call as witness.
struct Check {
  bool ok = true;
  std::string where;
  void fail(std::size_t i, const std::string& extra = "") {
    if (!ok) return;
    ok = false;
    where = at_call(i);
    if (!extra.empty()) where += ": " + extra;
  }
};

QPoint indicator(Mask a, int n) {
  QPoint x(n, 0);
  for (int u : elements_of(a)) x[u] = 1;
  return x;
}

SetFunction function_of_table(int n, Mask dom, std::vector<Val> table) {
  return SetFunction::from_callable(
      n, dom, [t = std::move(table)](Mask x) { return t[x]; });
}

}  // namespace

VerificationReport audit_trace(const CoverTrace& trace) {
  VerificationReport rep;
  const int n = trace.n;
  const auto& steps = trace.steps;
  const bool uniform = trace.uniform;
  const bool diag = trace.diagnostics;

  if (steps.empty()) {
    rep.add("empty trace certifies an empty instance", true);
    return rep;
  }

  rep.add("first call matches the preprocessed instance",
          steps[0].k == trace.k1 && steps[0].m_total == trace.m1_total &&
              (steps[0].active & trace.removed_zero) == 0);

  {  // Z ⊆ A ⊆ V_i, V_{i+1} = V_i - Z, and the last call empties V.
    Check c;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const CoverStep& s = steps[i];
      if (s.a == 0 || (s.a & ~s.active) != 0 || (s.z & ~s.a) != 0)
        c.fail(i, "support or removal set malformed");
      else if (i + 1 < steps.size() &&
               steps[i + 1].active != (s.active & ~s.z))
        c.fail(i, "next active set does not chain");
    }
    if ((steps.back().active & ~steps.back().z) != 0)
      c.fail(steps.size() - 1, "last call leaves vertices behind");
    rep.add("supports and removals chain the active sets", c.ok, c.where);
  }
  {  // K_{i+1} = K_i - alpha_i, ending at zero.
    Check c;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const Val next_k = i + 1 < steps.size() ? steps[i + 1].k : 0;
      if (steps[i].k - steps[i].alpha != next_k) c.fail(i);
    }
    rep.add("maximum demand drops by exactly alpha", c.ok, c.where);
  }
  {  // m_{i+1}(V_{i+1}) = m_i(V_i) - alpha_i |A_i|, ending at zero.
    Check c;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const Val next_total = i + 1 < steps.size() ? steps[i + 1].m_total : 0;
      if (steps[i].m_total - steps[i].alpha * popcount(steps[i].a) !=
          next_total)
        c.fail(i);
    }
    rep.add("degree totals drop by alpha times the support size", c.ok,
            c.where);
  }
  {
    Check c;
    for (std::size_t i = 0; i < steps.size(); ++i)
      if (steps[i].alpha < 1 || steps[i].alpha > steps[i].k) c.fail(i);
    rep.add("weights are positive and within the demand", c.ok, c.where);
  }
  {  // alpha is the least candidate; attainment bits record exactly the ties.
    Check c;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const CoverStep& s = steps[i];
      const Val least =
          *std::min_element(s.alpha_parts.begin(), s.alpha_parts.end());
      unsigned att = 0;
      for (int b = 0; b < 5; ++b)
        if (s.alpha_parts[b] == least) att |= 1u << b;
      if (s.alpha != least || s.attained != att || att == 0) c.fail(i);
    }
    rep.add("alpha equals the least candidate with matching attainment", c.ok,
            c.where);
  }
  {  // when the support minimum attains alpha, its minimizers leave.
    Check c;
    for (std::size_t i = 0; i < steps.size(); ++i)
      if ((steps[i].attained & 1u) && steps[i].z == 0) c.fail(i);
    rep.add("attaining the support minimum removes vertices", c.ok, c.where);
  }
  {
    const long budget =
        !uniform ? 4L * n - 1 : (trace.pair ? 14L * n * n : 11L * n + 1);
    rep.add("call count within the depth budget",
            static_cast<long>(steps.size()) <= budget,
            std::to_string(steps.size()) + " vs " + std::to_string(budget));
  }

  if (!uniform) {
    {
      Check c;
      for (std::size_t i = 0; i < steps.size(); ++i)
        if (steps[i].a != (steps[i].forced | steps[i].transversal)) c.fail(i);
      rep.add("support equals saturated vertices plus the transversal", c.ok,
              c.where);
    }
    {  // minimal maximizers are pairwise disjoint, nonempty, inside V_i.
      Check c;
      for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& fam = steps[i].maximizer_family;
        for (std::size_t a = 0; a < fam.size() && c.ok; ++a) {
          if (fam[a] == 0 || (fam[a] & ~steps[i].active) != 0)
            c.fail(i, "member outside the call's ground set");
          for (std::size_t b = a + 1; b < fam.size(); ++b)
            if (fam[a] & fam[b]) c.fail(i, "members overlap");
        }
      }
      rep.add("minimal maximizers are disjoint within each call", c.ok,
              c.where);
    }
    {
      Check c;
      for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& fam = steps[i].maximizer_family;
        const bool has_empty =
            std::find(fam.begin(), fam.end(), Mask{0}) != fam.end();
        if (has_empty || minimal_transversal(fam) != steps[i].transversal)
          c.fail(i);
      }
      rep.add("transversal picks the smallest index of each maximizer", c.ok,
              c.where);
    }
    {  // saturated vertices persist; the degree-cap candidate adds new ones.
      Check persist, grow;
      for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
        if ((steps[i].forced & ~steps[i + 1].forced) != 0) persist.fail(i);
        if ((steps[i].attained & 4u) &&
            (steps[i + 1].forced & ~steps[i].forced) == 0)
          grow.fail(i);
      }
      rep.add("saturated vertices persist between calls", persist.ok,
              persist.where);
      rep.add("degree-cap candidate saturates a new vertex", grow.ok,
              grow.where);
    }
    {  // cumulative maximizer family: laminar, and grown by a strict
       // demand-gap candidate.
      Check grow;
      std::set<Mask> cumulative(steps[0].maximizer_family.begin(),
                                steps[0].maximizer_family.end());
      for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
        bool gains = false;
        for (Mask x : steps[i + 1].maximizer_family)
          if (!cumulative.count(x)) gains = true;
        if ((steps[i].attained & 2u) &&
            steps[i].alpha_parts[1] < steps[i].alpha_parts[0] && !gains)
          grow.fail(i);
        cumulative.insert(steps[i + 1].maximizer_family.begin(),
                          steps[i + 1].maximizer_family.end());
      }
      rep.add("demand-gap candidate enlarges the maximizer family", grow.ok,
              grow.where);
      rep.add("cumulative maximizer family is laminar",
              check_laminar({cumulative.begin(), cumulative.end()}));
    }
  }

  if (uniform) {
    {  // each call seeds correlation with the survivors of the previous edge.
      Check c;
      for (std::size_t i = 0; i < steps.size(); ++i) {
        if ((steps[i].j & ~steps[i].active) != 0) c.fail(i);
        if (i + 1 < steps.size() &&
            steps[i + 1].j != (steps[i].a & ~steps[i].z))
          c.fail(i);
      }
      rep.add("correlation seeds chain through the supports", c.ok, c.where);
    }
    {
      Check c;
      for (std::size_t i = 0; i < steps.size(); ++i) {
        const CoverStep& s = steps[i];
        const Val sz = popcount(s.a);
        if (sz != s.m_total / s.k && sz != (s.m_total + s.k - 1) / s.k)
          c.fail(i);
      }
      rep.add("support sizes sit in the rounding bracket", c.ok, c.where);
    }
    {  // floor and ceiling of m(V)/K survive any call below the rounding
       // candidate; a call at the candidate lands on an exact multiple that
       // differs from the support size.
      Check keep, land;
      for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
        const CoverStep& s = steps[i];
        const CoverStep& nx = steps[i + 1];
        if (s.alpha < s.alpha_parts[4] &&
            (nx.m_total / nx.k != s.m_total / s.k ||
             (nx.m_total + nx.k - 1) / nx.k !=
                 (s.m_total + s.k - 1) / s.k))
          keep.fail(i);
        if ((s.attained & 16u) &&
            (nx.m_total % nx.k != 0 || nx.m_total / nx.k == popcount(s.a)))
          land.fail(i);
      }
      rep.add("rounding bracket survives calls below the fifth candidate",
              keep.ok, keep.where);
      rep.add("fifth candidate lands on an exact multiple", land.ok,
              land.where);
    }
    {
      int uses = 0;
      for (const CoverStep& s : steps)
        if (s.attained & 16u) ++uses;
      rep.add("at most one call attains the fifth candidate", uses <= 1,
              std::to_string(uses) + " calls");
    }
  }

  if (!diag) return rep;

  // ---- checks below re-derive the per-call instances from the recorded
  // tables ----

  {
    Check c;
    const std::size_t want = uniform && trace.pair ? 2 : 1;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const CoverStep& s = steps[i];
      if (s.p_tables.size() != want ||
          s.m_values.size() != static_cast<std::size_t>(n))
        c.fail(i, "tables missing");
      else
        for (const auto& t : s.p_tables)
          if (t.size() != (std::size_t{1} << n)) c.fail(i, "table size");
      if (c.ok)
        for (int u = 0; u < n; ++u)
          if (!has(s.active, u) && s.m_values[u] != 0)
            c.fail(i, "degree recorded off the ground set");
    }
    rep.add("diagnostics tables are well-formed", c.ok, c.where);
    if (!c.ok) return rep;
  }

  std::vector<std::vector<Val>> tables;
  tables.reserve(steps.size());
  for (const CoverStep& s : steps) tables.push_back(detail::combined_table(s));

  {  // the call's instance still satisfies both solvability conditions.
    Check c;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const CoverStep& s = steps[i];
      for (Mask x = 0;; x = next_submask(x, s.active)) {
        if (degree_sum(s.m_values, x) < tables[i][x])
          c.fail(i, "degrees fall below the demand");
        if (x == s.active) break;
      }
      for (int u : elements_of(s.active))
        if (s.m_values[u] > s.k) c.fail(i, "degree above the maximum demand");
    }
    rep.add("every call keeps the instance solvable", c.ok, c.where);
  }
  {
    Check c;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      Val k = kNegInf;
      for (Mask x = 0;; x = next_submask(x, steps[i].active)) {
        k = std::max(k, tables[i][x]);
        if (x == steps[i].active) break;
      }
      if (k != steps[i].k) c.fail(i);
      if (degree_sum(steps[i].m_values, steps[i].active) != steps[i].m_total)
        c.fail(i);
    }
    rep.add("recorded maxima and totals match the tables", c.ok, c.where);
  }
  {  // alpha candidates recompute from the tables.
    Check c;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const CoverStep& s = steps[i];
      Val a1 = kPosInf;
      for (int u : elements_of(s.a)) a1 = std::min(a1, s.m_values[u]);
      Val away = kNegInf;
      for (Mask x = 0;; x = next_submask(x, s.active & ~s.a)) {
        away = std::max(away, tables[i][x]);
        if (x == (s.active & ~s.a)) break;
      }
      const Val a2 = is_neg_inf(away) ? kPosInf : s.k - away;
      Val a3 = kPosInf;
      for (int u : elements_of(s.active & ~s.a))
        a3 = std::min(a3, s.k - s.m_values[u]);
      if (s.alpha_parts[0] != a1 || s.alpha_parts[1] != a2 ||
          s.alpha_parts[2] != a3)
        c.fail(i, "first three candidates");
      if (uniform) {
        const auto& t = tables[i];
        const Val a4 = alpha4_exhaustive([&t](Mask x) { return t[x]; },
                                         s.m_values, s.a, s.active);
        const Val a5 = compute_alpha5(s.m_total, s.k, popcount(s.a));
        if (s.alpha_parts[3] != a4 || s.alpha_parts[4] != a5)
          c.fail(i, "ratio or rounding candidate");
      } else if (!is_pos_inf(s.alpha_parts[3]) ||
                 !is_pos_inf(s.alpha_parts[4])) {
        c.fail(i, "unused candidate slots");
      }
      Mask z = 0;
      for (int u : elements_of(s.a))
        if (s.m_values[u] == s.alpha) z |= bit(u);
      if (z != s.z) c.fail(i, "removal set");
    }
    rep.add("alpha candidates recompute from the tables", c.ok, c.where);
  }
  {  // the revision: m drops by alpha on A; p gains the edge's coverage and
     // is then maximized over liftings into the removed set.
    Check c;
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
      const CoverStep& s = steps[i];
      const CoverStep& nx = steps[i + 1];
      for (int u : elements_of(nx.active)) {
        const Val want = s.m_values[u] - (has(s.a, u) ? s.alpha : 0);
        if (nx.m_values[u] != want) c.fail(i, "degree update");
      }
      for (std::size_t comp = 0; comp < s.p_tables.size(); ++comp) {
        const auto& before = s.p_tables[comp];
        const auto& after = nx.p_tables[comp];
        for (Mask x = 0;; x = next_submask(x, nx.active)) {
          Val want = kNegInf;
          for (Mask r = 0;; r = next_submask(r, s.z)) {
            const Mask y = x | r;
            want = std::max(want,
                            before[y] - ((y & s.a) != 0 ? s.alpha : 0));
            if (r == s.z) break;
          }
          if (after[x] != want) c.fail(i, "demand revision");
          if (x == nx.active) break;
        }
      }
    }
    rep.add("each call revises the instance exactly", c.ok, c.where);
  }

  if (!uniform) {
    Check forced, fam, slack;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const CoverStep& s = steps[i];
      Mask want = 0;
      for (int u : elements_of(s.active))
        if (s.m_values[u] == s.k) want |= bit(u);
      if (s.forced != want) forced.fail(i);
      const auto recomputed =
          detail::table_minimal_maximizers(tables[i], s.active);
      if (std::set<Mask>(recomputed.begin(), recomputed.end()) !=
          std::set<Mask>(s.maximizer_family.begin(),
                         s.maximizer_family.end()))
        fam.fail(i);
      // Every subset keeps alpha(|A ∩ X| - 1) of slack to give.
      for (Mask x = 0;; x = next_submask(x, s.active)) {
        if (degree_sum(s.m_values, x) <
            tables[i][x] + s.alpha * (popcount(x & s.a) - 1))
          slack.fail(i, mask_to_string(x, trace.ground));
        if (x == s.active) break;
      }
    }
    rep.add("saturated vertices recompute from the degrees", forced.ok,
            forced.where);
    rep.add("maximizer families recompute from the tables", fam.ok,
            fam.where);
    rep.add("every subset affords the weight on its support overlap",
            slack.ok, slack.where);
  }

  if (uniform) {
    {  // the emitted support is a feasible hyperedge of its call...
      Check c;
      for (std::size_t i = 0; i < steps.size(); ++i) {
        const CoverStep& s = steps[i];
        const QInstance inst{function_of_table(n, s.active, tables[i]),
                             s.m_values, s.k};
        if (!q_support_properties(inst, s.a).all()) c.fail(i);
      }
      rep.add("supports pass the structural feasibility properties", c.ok,
              c.where);
    }
    {  // ...but never of the next call when nothing was removed.
      Check c;
      for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
        if (steps[i].z != 0) continue;
        const CoverStep& nx = steps[i + 1];
        const QInstance inst{function_of_table(n, nx.active, tables[i + 1]),
                             nx.m_values, nx.k};
        if (!q_membership(inst, indicator(steps[i].a, n))) c.fail(i);
      }
      rep.add("support leaves the polytope when no vertex was removed", c.ok,
              c.where);
    }
    {
      Check c;
      const std::size_t comps = trace.pair ? 2 : 1;
      for (std::size_t comp = 0; comp < comps; ++comp) {
        std::set<Mask> cumulative;
        for (std::size_t i = 0; i < steps.size(); ++i) {
          const auto fam = detail::table_minimal_maximizers(
              steps[i].p_tables[comp], steps[i].active);
          cumulative.insert(fam.begin(), fam.end());
        }
        if (!check_laminar({cumulative.begin(), cumulative.end()}))
          c.fail(comp, "component family crosses");
      }
      rep.add("cumulative maximizer families are laminar per component",
              c.ok, c.where);
    }
  }
  return rep;
}

}  // namespace hypercover
