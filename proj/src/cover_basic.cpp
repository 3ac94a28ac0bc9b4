#include <algorithm>
#include <stdexcept>
#include <utility>

#include "cover_common.hpp"
#include "hypercover/cover.hpp"

namespace hypercover {

bool check_feasibility(const CoverInstance& inst,
                       InfeasibilityCertificate* why) {
  const SetFunction& p = inst.p;
  const DegreeVector m = detail::validated_degrees(p, inst.m);

  // A cover with exact degrees m exists iff m(X) >= p(X) for every X and no
  // single degree exceeds the maximum demand.
  std::vector<Val> y0(p.n(), 0);
  for (int u : elements_of(p.active())) y0[u] = -m[u];
  const OracleResult worst = max_oracle_empty(p, 0, 0, y0);
  if (worst.value > 0) {
    if (why)
      *why = {InfeasibilityCertificate::Kind::uncovered_set, worst.argmax, -1,
              degree_sum(m, worst.argmax), worst.p_value};
    return false;
  }
  const Val k = p.max_value();
  for (int u : elements_of(p.active())) {
    if (m[u] > k) {
      if (why)
        *why = {InfeasibilityCertificate::Kind::degree_over_max, 0, u, m[u],
                k};
      return false;
    }
  }
  return true;
}

std::pair<WeightedHypergraph, CoverTrace> weak_cover_basic(
    const CoverInstance& inst, const CoverOptions& opts) {
  const int n = inst.p.n();
  detail::require_cap(n, opts.cap);
  DegreeVector m = detail::validated_degrees(inst.p, inst.m);

  InfeasibilityCertificate cert;
  if (!check_feasibility(inst, &cert))
    throw InfeasibleError("no hypergraph meets this degree specification",
                          cert);

  CoverTrace trace;
  trace.n = n;
  trace.ground = GroundSet::indexed(n);
  trace.diagnostics = opts.diagnostics;

  StackedOracle st(inst.p);
  Mask zeros = 0;
  for (int u : elements_of(st.active()))
    if (m[u] == 0) zeros |= bit(u);
  st.contract(zeros);
  trace.removed_zero = zeros;
  trace.k1 = st.active() ? st.K() : 0;
  trace.m1_total = degree_sum(m, st.active());

  WeightedHypergraph h(n);
  int steps_left = 64 * n + 64;  // termination backstop for broken inputs
  while (st.active()) {
    if (--steps_left < 0)
      throw std::logic_error("cover recursion exceeded its step budget");
    const Mask active = st.active();
    const Val k = st.K();
    if (k <= 0)
      throw std::logic_error("positive degrees remain but demand peaked at " +
                             std::to_string(k));

    CoverStep step;
    step.active = active;
    step.k = k;
    step.m_total = degree_sum(m, active);
    for (int u : elements_of(active))
      if (m[u] == k) step.forced |= bit(u);
    step.maximizer_family =
        minimal_maximizers_oracle(st.as_empty_oracle(), n, active);
    step.transversal = minimal_transversal(step.maximizer_family);
    step.a = step.transversal | step.forced;

    // Largest weight that keeps the revised instance feasible: capped by the
    // smallest degree inside A, the demand slack of sets avoiding A, and the
    // degree slack of vertices outside A.
    Val a1 = kPosInf;
    for (int u : elements_of(step.a)) a1 = std::min(a1, m[u]);
    const Val a2 = k - st.query(0, step.a).value;
    Val a3 = kPosInf;
    for (int u : elements_of(active & ~step.a)) a3 = std::min(a3, k - m[u]);
    step.alpha_parts = {a1, a2, a3, kPosInf, kPosInf};
    step.alpha = std::min({a1, a2, a3});
    for (int c = 0; c < 5; ++c)
      if (step.alpha_parts[c] == step.alpha) step.attained |= 1u << c;
    if (step.alpha < 1)
      throw std::logic_error(
          "weight candidate below 1; demand function is not "
          "skew-supermodular or the instance mutated");
    for (int u : elements_of(step.a))
      if (m[u] == step.alpha) step.z |= bit(u);

    if (opts.diagnostics) {
      step.p_tables = {detail::ambient_table(st)};
      step.m_values.assign(n, 0);
      for (int u : elements_of(active)) step.m_values[u] = m[u];
    }

    h.add_edge(step.a, step.alpha);
    for (int u : elements_of(step.a)) m[u] -= step.alpha;
    st.push(step.a, step.alpha, step.z);
    trace.steps.push_back(std::move(step));
  }
  return {std::move(h), std::move(trace)};
}

}  // namespace hypercover
