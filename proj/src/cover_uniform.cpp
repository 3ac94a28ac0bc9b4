#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "cover_common.hpp"
#include "hypercover/cover.hpp"
#include "hypercover/qpolytope.hpp"
#include "hypercover/verify.hpp"

namespace hypercover {

Val compute_alpha5(Val m_total, Val k, int a_size) {
  if (k <= 0) throw std::invalid_argument("maximum demand must be positive");
  if (m_total < 0) throw std::invalid_argument("negative degree total");
  const Val rem = m_total % k;
  if (rem == 0) return kPosInf;  // both roundings already coincide
  const Val fl = m_total / k;
  if (a_size == fl + 1) return rem;  // support sits at the ceiling
  if (a_size == fl) return k - rem;  // support sits at the floor
  return kPosInf;
}

std::pair<WeightedHypergraph, CoverTrace> weak_cover_uniform(
    const UniformCoverInstance& inst, const CoverOptions& opts) {
  if (inst.components.empty() || inst.components.size() > 2)
    throw std::invalid_argument("expected one or two demand components");
  const bool pair_demand = inst.components.size() == 2;
  const int n = inst.components[0].n();
  for (const SetFunction& f : inst.components)
    if (f.n() != n || f.active() != inst.components[0].active())
      throw std::invalid_argument("demand components disagree on the ground set");
  detail::require_cap(n, opts.cap);
  if (pair_demand &&
      inst.components[0].max_value() != inst.components[1].max_value())
    throw std::invalid_argument(
        "demand components must share their maximum value");

  const SetFunction p =
      pair_demand ? SetFunction::max_of(inst.components[0], inst.components[1])
                  : inst.components[0];
  DegreeVector m = detail::validated_degrees(p, inst.m);
  InfeasibilityCertificate cert;
  if (!check_feasibility(CoverInstance{p, m}, &cert))
    throw InfeasibleError("no hypergraph meets this degree specification",
                          cert);

  CoverTrace trace;
  trace.n = n;
  trace.ground = GroundSet::indexed(n);
  trace.uniform = true;
  trace.pair = pair_demand;
  trace.diagnostics = opts.diagnostics;

  std::vector<StackedOracle> stacks;
  stacks.reserve(inst.components.size());
  for (const SetFunction& f : inst.components) stacks.emplace_back(f);

  Mask zeros = 0;
  for (int u : elements_of(stacks[0].active()))
    if (m[u] == 0) zeros |= bit(u);
  for (StackedOracle& st : stacks) st.contract(zeros);
  trace.removed_zero = zeros;

  Mask active = stacks[0].active();
  const auto current_k = [&stacks] {
    Val k = kNegInf;
    for (const StackedOracle& st : stacks) k = std::max(k, st.K());
    return k;
  };
  const auto eval_max = [&stacks](Mask x) {
    Val v = stacks[0].eval(x);
    for (std::size_t c = 1; c < stacks.size(); ++c)
      v = std::max(v, stacks[c].eval(x));
    return v;
  };
  trace.k1 = active ? current_k() : 0;
  trace.m1_total = degree_sum(m, active);

  WeightedHypergraph h(n);
  Mask j = inst.j & active;
  long steps_left = 64L * n * n + 64;  // termination backstop
  while (active) {
    if (--steps_left < 0)
      throw std::logic_error("cover recursion exceeded its step budget");
    const Val k = current_k();
    if (k <= 0)
      throw std::logic_error("positive degrees remain but demand peaked at " +
                             std::to_string(k));

    CoverStep step;
    step.active = active;
    step.k = k;
    step.m_total = degree_sum(m, active);
    step.j = j;

    // The next hyperedge is the support of an extreme point of the
    // admissible-hyperedge polytope, maximizing overlap with the previous
    // edge's survivors.
    const SetFunction p_i = SetFunction::from_callable(n, active, eval_max);
    std::vector<Rat> c(n, 0);
    for (int u : elements_of(j)) c[u] = 1;
    step.a = q_support(q_optimize(QInstance{p_i, m, k}, c));

    Val a1 = kPosInf;
    for (int u : elements_of(step.a)) a1 = std::min(a1, m[u]);
    Val away = kNegInf;
    for (const StackedOracle& st : stacks)
      away = std::max(away, st.query(0, step.a).value);
    const Val a2 = k - away;
    Val a3 = kPosInf;
    for (int u : elements_of(active & ~step.a)) a3 = std::min(a3, k - m[u]);
    const Val a4 =
        alpha4_via_ratio(eval_max, m, step.a, active, &step.ratio_iterations);
    if (opts.diagnostics &&
        a4 != alpha4_exhaustive(eval_max, m, step.a, active))
      throw std::logic_error("ratio and exhaustive alpha_4 routes disagree");
    const Val a5 = compute_alpha5(step.m_total, k, popcount(step.a));
    step.alpha_parts = {a1, a2, a3, a4, a5};
    step.alpha = std::min({a1, a2, a3, a4, a5});
    for (int c2 = 0; c2 < 5; ++c2)
      if (step.alpha_parts[c2] == step.alpha) step.attained |= 1u << c2;
    if (step.alpha < 1)
      throw std::logic_error(
          "weight candidate below 1; demand function is not "
          "skew-supermodular or the instance mutated");
    for (int u : elements_of(step.a))
      if (m[u] == step.alpha) step.z |= bit(u);

    if (opts.diagnostics) {
      for (const StackedOracle& st : stacks)
        step.p_tables.push_back(detail::ambient_table(st));
      step.m_values.assign(n, 0);
      for (int u : elements_of(active)) step.m_values[u] = m[u];
    }

    h.add_edge(step.a, step.alpha);
    for (int u : elements_of(step.a)) m[u] -= step.alpha;
    for (StackedOracle& st : stacks) st.push(step.a, step.alpha, step.z);
    active &= ~step.z;
    j = step.a & ~step.z;
    trace.steps.push_back(std::move(step));
  }
  return {std::move(h), std::move(trace)};
}

namespace {

// Inclusion-maximal nonempty sets with m(X) = p(X).
std::vector<Mask> maximal_tight(const std::vector<Val>& p_of,
                                const std::vector<Val>& mv, Mask dom) {
  std::vector<Mask> tight;
  for (Mask x = 0;; x = next_submask(x, dom)) {
    if (x != 0 && degree_sum(mv, x) == p_of[x]) tight.push_back(x);
    if (x == dom) break;
  }
  std::vector<Mask> maximal;
  for (Mask x : tight) {
    bool dominated = false;
    for (Mask y : tight)
      if (y != x && (x & ~y) == 0) {
        dominated = true;
        break;
      }
    if (!dominated) maximal.push_back(x);
  }
  return maximal;
}

// gamma(u,v) = min{m(X) - p(X) : u,v ∈ X ⊆ dom}, stored at u*n+v for u < v.
std::vector<Val> gamma_table(const std::vector<Val>& p_of,
                             const std::vector<Val>& mv, Mask dom, int n) {
  std::vector<Val> g(static_cast<std::size_t>(n) * n, kPosInf);
  for (int u : elements_of(dom)) {
    for (int v : elements_of(dom)) {
      if (v <= u) continue;
      const Mask uv = bit(u) | bit(v);
      const Mask rest = dom & ~uv;
      Val best = kPosInf;
      for (Mask w = 0;; w = next_submask(w, rest)) {
        best = std::min(best, degree_sum(mv, w | uv) - p_of[w | uv]);
        if (w == rest) break;
      }
      g[static_cast<std::size_t>(u) * n + v] = best;
    }
  }
  return g;
}

struct StepAnalysis {
  Mask dom = 0;
  std::vector<Val> p;      // combined table, ambient-indexed
  std::vector<Mask> tight;
  std::vector<Val> gamma;
};

// The three-way escape hatch checked after a ratio-driven call: the revised
// instance must either gain a minimal maximizer, gain a maximal tight set,
// or have picked a support that is 1-good — in the polytope, with some set Z
// meeting |A∩Z| = m(Z) - p(Z) + 1 that no maximal tight set swallows.
bool support_is_one_good(const CoverStep& step, const StepAnalysis& d, int n) {
  const std::vector<Val> table = d.p;
  const SetFunction pf = SetFunction::from_callable(
      n, d.dom, [table](Mask x) { return table[x]; });
  const QInstance qi{pf, step.m_values, step.k};
  QPoint x(n, 0);
  for (int u : elements_of(step.a)) x[u] = 1;
  if (q_membership(qi, x)) return false;
  for (Mask z = 0;; z = next_submask(z, d.dom)) {
    if (popcount(z & step.a) == degree_sum(step.m_values, z) - d.p[z] + 1) {
      bool swallowed = false;
      for (Mask y : d.tight)
        if ((z & ~y) == 0) {
          swallowed = true;
          break;
        }
      if (!swallowed) return true;
    }
    if (z == d.dom) break;
  }
  return false;
}

std::string call_tag(std::size_t i) { return "call " + std::to_string(i); }

}  // namespace

DiagnosticsReport trace_diagnostics(const CoverTrace& trace) {
  DiagnosticsReport rep;
  for (const CoverStep& s : trace.steps) {
    if (s.attained & (1u << 3)) ++rep.alpha4_calls;
    if (s.attained & (1u << 4)) ++rep.alpha5_calls;
  }
  if (rep.alpha5_calls > 1)
    rep.violations.push_back(
        "more than one call used the rounding weight candidate");
  if (!trace.uniform || trace.steps.empty()) return rep;
  if (!trace.diagnostics) {
    rep.violations.push_back(
        "trace lacks diagnostics tables; analysis checks skipped");
    return rep;
  }

  const int n = trace.n;
  const bool single = !trace.pair;
  std::vector<StepAnalysis> data;
  data.reserve(trace.steps.size());
  for (const CoverStep& s : trace.steps) {
    StepAnalysis d;
    d.dom = s.active;
    d.p = detail::combined_table(s);
    d.tight = maximal_tight(d.p, s.m_values, d.dom);
    d.gamma = gamma_table(d.p, s.m_values, d.dom, n);
    data.push_back(std::move(d));
  }

  if (single) {
    // Maximal tight sets are pairwise disjoint, and their cumulative
    // projection into the shrinking domain stays laminar.
    for (std::size_t i = 0; i < data.size(); ++i)
      for (std::size_t a = 0; a < data[i].tight.size(); ++a)
        for (std::size_t b = a + 1; b < data[i].tight.size(); ++b)
          if (data[i].tight[a] & data[i].tight[b])
            rep.violations.push_back("maximal tight sets overlap at " +
                                     call_tag(i));
    std::set<Mask> cumulative;
    for (std::size_t i = 0; i < data.size(); ++i) {
      std::set<Mask> next;
      for (Mask x : cumulative)
        if (Mask y = x & data[i].dom) next.insert(y);
      for (Mask x : data[i].tight) next.insert(x);
      cumulative = std::move(next);
      if (!check_laminar({cumulative.begin(), cumulative.end()}))
        rep.violations.push_back(
            "cumulative projected tight family not laminar at " + call_tag(i));
    }
  }

  // Pairwise slack never increases from one call to the next.
  for (std::size_t i = 0; i + 1 < data.size(); ++i) {
    for (int u : elements_of(data[i + 1].dom)) {
      for (int v : elements_of(data[i + 1].dom)) {
        if (v <= u) continue;
        const std::size_t at = static_cast<std::size_t>(u) * n + v;
        if (data[i + 1].gamma[at] > data[i].gamma[at])
          rep.violations.push_back("pairwise slack grew across " +
                                   call_tag(i) + " at pair (" +
                                   std::to_string(u) + "," +
                                   std::to_string(v) + ")");
      }
    }
  }

  for (std::size_t i = 0; i + 1 < trace.steps.size(); ++i) {
    const CoverStep& s = trace.steps[i];
    if (s.attained != (1u << 3)) continue;  // ratio candidate strictly below

    // Witness set: some Z keeping >= 2 support vertices alive whose pairs
    // all strictly drop below both the previous slack and |A∩Z| - 1.
    bool witnessed = false;
    for (Mask z = 0; !witnessed; z = next_submask(z, data[i].dom)) {
      const Mask az = z & s.a;
      if (popcount(az) >= 2 && (az & s.z) == 0) {
        bool all_drop = true;
        for (int u : elements_of(az)) {
          for (int v : elements_of(az)) {
            if (v <= u) continue;
            const std::size_t at = static_cast<std::size_t>(u) * n + v;
            if (data[i + 1].gamma[at] >=
                std::min<Val>(popcount(az) - 1, data[i].gamma[at]))
              all_drop = false;
          }
        }
        if (all_drop) witnessed = true;
      }
      if (z == data[i].dom) break;
    }
    if (!witnessed)
      rep.violations.push_back("no slack-drop witness after ratio-driven " +
                               call_tag(i));

    if (single) {
      const auto before =
          detail::table_minimal_maximizers(data[i].p, data[i].dom);
      const auto after =
          detail::table_minimal_maximizers(data[i + 1].p, data[i + 1].dom);
      const auto fresh = [](const std::vector<Mask>& now,
                            const std::vector<Mask>& old) {
        for (Mask x : now)
          if (std::find(old.begin(), old.end(), x) == old.end()) return true;
        return false;
      };
      if (!fresh(after, before) &&
          !fresh(data[i + 1].tight, data[i].tight) &&
          !support_is_one_good(trace.steps[i + 1], data[i + 1], n))
        rep.violations.push_back(
            "ratio-driven call escaped every progress measure at " +
            call_tag(i));
    }
  }
  return rep;
}

}  // namespace hypercover
