#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "cover_common.hpp"
#include "hypercover/augmentation.hpp"
#include "hypercover/oracles.hpp"

namespace hypercover {

SetFunction build_p_local(const WeightedHypergraph& g,
                          const std::vector<std::vector<Val>>& r) {
  const int n = g.n();
  if (static_cast<int>(r.size()) != n)
    throw std::invalid_argument("target matrix does not match the vertex count");
  for (int u = 0; u < n; ++u) {
    if (static_cast<int>(r[u].size()) != n)
      throw std::invalid_argument("target matrix is not square");
    if (r[u][u] != 0)
      throw std::invalid_argument("target matrix has a nonzero diagonal");
    for (int v = 0; v < n; ++v) {
      if (r[u][v] < 0)
        throw std::invalid_argument("negative connectivity target");
      if (r[u][v] != r[v][u])
        throw std::invalid_argument("target matrix is not symmetric");
    }
  }
  const Mask full = full_mask(n);
  std::vector<Val> table(std::size_t{1} << n, 0);
  for (Mask x = 1; x < full; ++x) {
    Val want = 0;
    for (int u : elements_of(x))
      for (int v : elements_of(full & ~x)) want = std::max(want, r[u][v]);
    table[x] = want - g.cut(x);
  }
  return SetFunction::tabulated(n, std::move(table));
}

SetFunction build_p_node_to_area(const WeightedHypergraph& g,
                                 const std::vector<Area>& areas) {
  const int n = g.n();
  const Mask full = full_mask(n);
  for (const Area& w : areas) {
    if (w.members == 0 || (w.members & ~full) != 0)
      throw std::invalid_argument("area must be a nonempty subset of the vertices");
    if (w.r < 0) throw std::invalid_argument("negative connectivity target");
  }
  std::vector<Val> table(std::size_t{1} << n, 0);
  for (Mask x = 1; x < full; ++x) {
    // The areas X could still be separated from: those it contains and those
    // it misses entirely.  None qualifying means nothing is demanded of X.
    Val want = 0;
    for (const Area& w : areas)
      if ((w.members & x) == 0 || (w.members & x) == w.members)
        want = std::max(want, w.r);
    table[x] = want - g.cut(x);
  }
  return SetFunction::tabulated(n, std::move(table));
}

SetFunction build_p_mixed(const MixedHypergraph& g, int root, Val k, Val l) {
  const int n = g.n();
  if (root < 0 || root >= n)
    throw std::invalid_argument("root vertex out of range");
  if (k < 1 || l < 1)
    throw std::invalid_argument("connectivity demands must be positive");
  const Mask full = full_mask(n);
  std::vector<Val> table(std::size_t{1} << n, 0);
  for (Mask x = 1; x < full; ++x)
    table[x] = (has(x, root) ? l : k) - g.in_cut(x);
  return SetFunction::tabulated(n, std::move(table));
}

DegreeVector min_degree_vector(const SetFunction& p) {
  const int n = p.n();
  const Mask dom = p.active();
  Val k = p.max_value();
  if (is_neg_inf(k) || k < 0) k = 0;
  DegreeVector m(n, 0);
  for (int u : elements_of(dom)) m[u] = k;
  // Shrink each entry to the largest demand the other degrees leave unmet.
  // Earlier vertices are already final, so the result covers p setwise with
  // the least possible total.
  for (int u : elements_of(dom)) {
    std::vector<Val> y0(n, 0);
    for (int v : elements_of(dom)) y0[v] = -m[v];
    y0[u] = 0;
    const OracleResult r = max_oracle_empty(p, bit(u), 0, y0);
    m[u] = std::max<Val>(0, r.value);
  }
  return m;
}

namespace {

// Exhaustively certify d(X) >= f(X); the weak-to-strong conversion rests on
// skew-supermodularity, which the inputs only promise.
void certify_cut_cover(const WeightedHypergraph& h, const SetFunction& f,
                       const std::string& label) {
  const Mask dom = f.active();
  for (Mask x = 0;; x = next_submask(x, dom)) {
    if (h.cut(x) < f.value(x))
      throw std::logic_error("weak cover of total weight K failed to cut " +
                             label + "; the demand function is not "
                             "skew-supermodular");
    if (x == dom) break;
  }
}

void merge_report(VerificationReport& dst, const VerificationReport& src,
                  const std::string& prefix) {
  for (const CheckResult& c : src.checks)
    dst.add(prefix + c.what, c.ok, c.detail);
}

// Effective single-function mode: the CLI only distinguishes the linear-size
// and near-uniform routines, so the pair flag is never user-chosen.
CoverMode single_mode(CoverMode mode) {
  return mode == CoverMode::basic ? CoverMode::basic : CoverMode::uniform;
}

void note_strong_override(Solution& sol, const SolveOptions& opts) {
  if (opts.flavor == CoverFlavor::weak)
    sol.notes.push_back(
        "connectivity augmentation needs a cut cover; solved the strong flavor");
}

// Degrees the mixed instance actually specifies: its bounds clamped to the
// maximum demand.  Returns the number of clamped entries through *clamped.
DegreeVector mixed_degrees(const MixedCAInstance& inst, const SetFunction& p,
                           int* clamped = nullptr) {
  if (static_cast<int>(inst.m.size()) != inst.g.n())
    throw std::invalid_argument("degree vector does not match ground set");
  const Val cap = std::max<Val>(p.max_value(), 0);
  DegreeVector m = inst.m;
  int hits = 0;
  for (Val& mu : m) {
    if (mu < 0) throw std::invalid_argument("negative degree bound");
    if (mu > cap) {
      mu = cap;
      ++hits;
    }
  }
  if (clamped) *clamped = hits;
  return m;
}

VerificationReport report_cover_kind(const CoverFileInstance& inst,
                                     const WeightedHypergraph& h,
                                     const SolveOptions& opts) {
  VerificationReport rep;
  if (inst.components.size() == 2) {
    merge_report(rep,
                 verify_cover(inst.components[0], inst.m, h, opts.flavor,
                              CoverMode::uniform_pair),
                 "first function: ");
    merge_report(rep,
                 verify_cover(inst.components[1], inst.m, h, opts.flavor,
                              CoverMode::uniform_pair),
                 "second function: ");
  } else {
    rep = verify_cover(inst.components[0], inst.m, h, opts.flavor,
                       single_mode(opts.mode));
  }
  return rep;
}

// Aggregated pairwise connectivity check against a target matrix.
void check_pair_connectivity(VerificationReport& rep, const std::string& what,
                             const WeightedHypergraph& aug,
                             const std::vector<std::vector<Val>>& targets) {
  const int n = aug.n();
  const GroundSet ground = GroundSet::indexed(n);
  bool ok = true;
  std::string where;
  for (int u = 0; u < n && ok; ++u)
    for (int v = u + 1; v < n; ++v)
      if (targets[u][v] > 0) {
        const Val lam = min_cut_between(aug, u, v);
        if (lam < targets[u][v]) {
          ok = false;
          where = "lambda(" + ground.label(u) + "," + ground.label(v) +
                  ") = " + std::to_string(lam) + " < " +
                  std::to_string(targets[u][v]);
          break;
        }
      }
  rep.add(what, ok, where);
}

VerificationReport report_local(const LocalCAInstance& inst,
                                const WeightedHypergraph& h, CoverMode mode) {
  const SetFunction p = build_p_local(inst.g, inst.r);
  const DegreeVector m = inst.has_m ? inst.m : min_degree_vector(p);
  VerificationReport rep = verify_cover(p, m, h, CoverFlavor::strong, mode);
  check_pair_connectivity(rep, "every pair reaches its connectivity target",
                          inst.g + h, inst.r);
  return rep;
}

VerificationReport report_simul(const SimulCAInstance& inst,
                                const WeightedHypergraph& h) {
  const SetFunction q = build_p_local(inst.g1, inst.r1);
  const SetFunction r = build_p_local(inst.g2, inst.r2);
  VerificationReport rep;
  merge_report(rep,
               verify_cover(q, inst.m, h, CoverFlavor::strong,
                            CoverMode::uniform_pair),
               "first system: ");
  merge_report(rep,
               verify_cover(r, inst.m, h, CoverFlavor::strong,
                            CoverMode::uniform_pair),
               "second system: ");
  check_pair_connectivity(rep, "first system reaches its connectivity targets",
                          inst.g1 + h, inst.r1);
  check_pair_connectivity(rep,
                          "second system reaches its connectivity targets",
                          inst.g2 + h, inst.r2);
  return rep;
}

VerificationReport report_node_to_area(const NodeToAreaInstance& inst,
                                       const WeightedHypergraph& h,
                                       CoverMode mode) {
  const SetFunction p = build_p_node_to_area(inst.g, inst.areas);
  VerificationReport rep = verify_cover(p, inst.m, h, CoverFlavor::strong, mode);

  const WeightedHypergraph aug = inst.g + h;
  const int n = inst.g.n();
  const GroundSet ground = GroundSet::indexed(n);
  bool ok = true;
  std::string where;
  for (const Area& w : inst.areas) {
    if (!ok) break;
    if (w.r <= 0) continue;
    for (int v : elements_of(full_mask(n) & ~w.members)) {
      const Val lam = min_cut_to_area(aug, v, w.members);
      if (lam < w.r) {
        ok = false;
        where = "lambda(" + ground.label(v) + "," +
                mask_to_string(w.members, ground) + ") = " +
                std::to_string(lam) + " < " + std::to_string(w.r);
        break;
      }
    }
  }
  rep.add("every vertex reaches every area's target", ok, where);
  return rep;
}

VerificationReport report_mixed(const MixedCAInstance& inst,
                                const WeightedHypergraph& h, CoverMode mode) {
  const SetFunction p =
      symmetrized(build_p_mixed(inst.g, inst.root, inst.k, inst.l));
  const DegreeVector m = mixed_degrees(inst, p);
  VerificationReport rep = verify_cover(p, m, h, CoverFlavor::strong, mode);

  MixedHypergraph aug = inst.g;
  for (const WeightedEdge& e : h.edges()) aug.add_edge(0, 0, e.members, e.weight);
  const int n = inst.g.n();
  const GroundSet ground = GroundSet::indexed(n);
  bool out_ok = true, in_ok = true;
  std::string out_where, in_where;
  for (int v = 0; v < n; ++v) {
    if (v == inst.root) continue;
    const Val away = min_in_cut_between(aug, inst.root, v);
    if (out_ok && away < inst.k) {
      out_ok = false;
      out_where = "in-connectivity toward " + ground.label(v) + " is " +
                  std::to_string(away) + " < " + std::to_string(inst.k);
    }
    const Val back = min_in_cut_between(aug, v, inst.root);
    if (in_ok && back < inst.l) {
      in_ok = false;
      in_where = "in-connectivity toward the root past " + ground.label(v) +
                 " is " + std::to_string(back) + " < " + std::to_string(inst.l);
    }
  }
  rep.add("root-free sets receive the demanded in-weight", out_ok, out_where);
  rep.add("root sets receive the demanded in-weight", in_ok, in_where);
  return rep;
}

}  // namespace

std::pair<WeightedHypergraph, CoverTrace> solve_strong_cover(
    const SetFunction& p, const DegreeVector& m, CoverMode mode,
    const CoverOptions& opts) {
  if (mode == CoverMode::uniform_pair)
    throw std::invalid_argument("a cut cover takes a single demand function");
  if (!p.is_symmetric())
    throw std::invalid_argument(
        "only symmetric demand functions admit cut covers");
  auto result = mode == CoverMode::basic
                    ? weak_cover_basic(CoverInstance{p, m}, opts)
                    : weak_cover_uniform(UniformCoverInstance{{p}, m, 0}, opts);
  certify_cut_cover(result.first, p, "the demand");
  return result;
}

namespace {

Solution solve_cover_kind(const CoverFileInstance& inst,
                          const SolveOptions& opts) {
  if (inst.components.empty() || inst.components.size() > 2)
    throw std::invalid_argument("expected one or two demand functions");
  const bool pair = inst.components.size() == 2;
  Solution sol;
  const CoverMode mode = single_mode(opts.mode);
  if (pair && mode == CoverMode::basic)
    sol.notes.push_back(
        "two demand functions always use the near-uniform routine");

  if (opts.flavor == CoverFlavor::strong) {
    if (pair) {
      for (const SetFunction& f : inst.components)
        if (!f.is_symmetric())
          throw std::invalid_argument(
              "only symmetric demand functions admit cut covers");
      std::tie(sol.h, sol.trace) = weak_cover_uniform(
          UniformCoverInstance{inst.components, inst.m, 0}, opts.cover);
      certify_cut_cover(sol.h, inst.components[0], "the first demand");
      certify_cut_cover(sol.h, inst.components[1], "the second demand");
    } else {
      std::tie(sol.h, sol.trace) =
          solve_strong_cover(inst.components[0], inst.m, mode, opts.cover);
    }
  } else if (pair || mode == CoverMode::uniform) {
    std::tie(sol.h, sol.trace) = weak_cover_uniform(
        UniformCoverInstance{inst.components, inst.m, 0}, opts.cover);
  } else {
    std::tie(sol.h, sol.trace) =
        weak_cover_basic(CoverInstance{inst.components[0], inst.m}, opts.cover);
  }
  sol.report = report_cover_kind(inst, sol.h, opts);
  return sol;
}

Solution solve_local(const LocalCAInstance& inst, const SolveOptions& opts) {
  detail::require_cap(inst.g.n(), opts.cover.cap);
  Solution sol;
  note_strong_override(sol, opts);
  const CoverMode mode = single_mode(opts.mode);
  const SetFunction p = build_p_local(inst.g, inst.r);
  DegreeVector m = inst.m;
  if (!inst.has_m) {
    m = min_degree_vector(p);
    sol.notes.push_back(
        "no degree specification given; derived the least feasible degrees");
  }
  std::tie(sol.h, sol.trace) = solve_strong_cover(p, m, mode, opts.cover);
  sol.report = report_local(inst, sol.h, mode);
  return sol;
}

Solution solve_simul(const SimulCAInstance& inst, const SolveOptions& opts) {
  const int n = inst.g1.n();
  if (inst.g2.n() != n)
    throw std::invalid_argument(
        "the two hypergraphs disagree on the vertex count");
  detail::require_cap(n, opts.cover.cap);
  Solution sol;
  note_strong_override(sol, opts);
  if (opts.mode == CoverMode::basic)
    sol.notes.push_back("two demand systems always use the near-uniform routine");
  const SetFunction q = build_p_local(inst.g1, inst.r1);
  const SetFunction r = build_p_local(inst.g2, inst.r2);
  if (q.max_value() != r.max_value()) {
    InfeasibilityCertificate cert;
    cert.kind = InfeasibilityCertificate::Kind::assumption_breach;
    cert.lhs = q.max_value();
    cert.rhs = r.max_value();
    throw InfeasibleError(
        "the two demand systems have different maximum deficiencies", cert);
  }
  std::tie(sol.h, sol.trace) =
      weak_cover_uniform(UniformCoverInstance{{q, r}, inst.m, 0}, opts.cover);
  certify_cut_cover(sol.h, q, "the first demand");
  certify_cut_cover(sol.h, r, "the second demand");
  sol.report = report_simul(inst, sol.h);
  return sol;
}

Solution solve_node_to_area(const NodeToAreaInstance& inst,
                            const SolveOptions& opts) {
  detail::require_cap(inst.g.n(), opts.cover.cap);
  Solution sol;
  note_strong_override(sol, opts);
  const CoverMode mode = single_mode(opts.mode);
  const SetFunction p = build_p_node_to_area(inst.g, inst.areas);
  std::tie(sol.h, sol.trace) = solve_strong_cover(p, inst.m, mode, opts.cover);
  sol.report = report_node_to_area(inst, sol.h, mode);
  return sol;
}

Solution solve_mixed(const MixedCAInstance& inst, const SolveOptions& opts) {
  detail::require_cap(inst.g.n(), opts.cover.cap);
  Solution sol;
  note_strong_override(sol, opts);
  const CoverMode mode = single_mode(opts.mode);
  const SetFunction p =
      symmetrized(build_p_mixed(inst.g, inst.root, inst.k, inst.l));
  int clamped = 0;
  const DegreeVector m = mixed_degrees(inst, p, &clamped);
  if (clamped > 0)
    sol.notes.push_back(std::to_string(clamped) +
                        " degree bounds exceeded the maximum demand and were "
                        "clamped to " +
                        std::to_string(std::max<Val>(p.max_value(), 0)));
  std::tie(sol.h, sol.trace) = solve_strong_cover(p, m, mode, opts.cover);
  sol.report = report_mixed(inst, sol.h, mode);
  return sol;
}

}  // namespace

Solution solve_application(const InstanceFile& file, const SolveOptions& opts) {
  if (const auto* c = std::get_if<CoverFileInstance>(&file.payload))
    return solve_cover_kind(*c, opts);
  if (const auto* c = std::get_if<LocalCAInstance>(&file.payload))
    return solve_local(*c, opts);
  if (const auto* c = std::get_if<SimulCAInstance>(&file.payload))
    return solve_simul(*c, opts);
  if (const auto* c = std::get_if<NodeToAreaInstance>(&file.payload))
    return solve_node_to_area(*c, opts);
  return solve_mixed(std::get<MixedCAInstance>(file.payload), opts);
}

VerificationReport verify_application(const InstanceFile& file,
                                      const WeightedHypergraph& h,
                                      const SolveOptions& opts) {
  if (const auto* c = std::get_if<CoverFileInstance>(&file.payload))
    return report_cover_kind(*c, h, opts);
  if (const auto* c = std::get_if<LocalCAInstance>(&file.payload))
    return report_local(*c, h, single_mode(opts.mode));
  if (const auto* c = std::get_if<SimulCAInstance>(&file.payload))
    return report_simul(*c, h);
  if (const auto* c = std::get_if<NodeToAreaInstance>(&file.payload))
    return report_node_to_area(*c, h, single_mode(opts.mode));
  return report_mixed(std::get<MixedCAInstance>(file.payload), h,
                      single_mode(opts.mode));
}

}  // namespace hypercover
