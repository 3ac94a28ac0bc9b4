#include "hypercover/selftest.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hypercover/augmentation.hpp"
#include "hypercover/commands.hpp"
#include "hypercover/cover.hpp"
#include "hypercover/generator.hpp"
#include "hypercover/json_io.hpp"
#include "hypercover/oracles.hpp"
#include "hypercover/qpolytope.hpp"
#include "hypercover/verify.hpp"

namespace hypercover {
namespace {

// Every check below runs against these plain-loop reference scans, never
// against the library's own coverage/cut/oracle code.

Val ref_coverage(const std::vector<WeightedEdge>& es, Mask x) {
  Val s = 0;
  for (const WeightedEdge& e : es)
    if (e.members & x) s += e.weight;
  return s;
}

Val ref_cut(const std::vector<WeightedEdge>& es, Mask x, Mask full) {
  Val s = 0;
  for (const WeightedEdge& e : es)
    if ((e.members & x) != 0 && (e.members & (full & ~x)) != 0) s += e.weight;
  return s;
}

Val ref_degree(const std::vector<WeightedEdge>& es, int u) {
  Val s = 0;
  for (const WeightedEdge& e : es)
    if (has(e.members, u)) s += e.weight;
  return s;
}

Val ref_total(const std::vector<WeightedEdge>& es) {
  Val s = 0;
  for (const WeightedEdge& e : es) s += e.weight;
  return s;
}

Val ref_max(const SetFunction& p) {
  const Mask full = full_mask(p.n());
  Val best = p.value(0);
  for (Mask x = 1; x <= full; ++x) best = std::max(best, p.value(x));
  return best;
}

Val floor_div(Val a, Val b) {  // b > 0
  Val q = a / b;
  return q * b > a ? q - 1 : q;
}

// One pass/fail line with the first witness.
struct Criterion {
  bool ok = true;
  std::string witness;
  void fail(const std::string& w) {
    if (!ok) return;
    ok = false;
    witness = w;
  }
  bool finish(std::ostream& out, int index, const std::string& title) const {
    out << (ok ? "pass" : "FAIL") << "  " << index << ". " << title;
    if (!ok) out << " -- " << witness;
    out << "\n" << std::flush;
    return ok;
  }
};

std::string tag(std::uint64_t seed) { return "seed " + std::to_string(seed); }

// The shared random feasible single-demand suite of the first two criteria.
struct RandomCover {
  SetFunction p;
  DegreeVector m;
  int n;
};

RandomCover make_cover_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = static_cast<int>(pick(rng, 2, 8));
  const Val k = pick(rng, 1, 6);
  const double density = static_cast<double>(pick(rng, 0, 10)) / 10.0;
  SetFunction p = random_demand(n, k, density, rng);
  DegreeVector m = random_feasible_degrees(p, rng);
  return {std::move(p), std::move(m), n};
}

// Cover properties shared by both routines: coverage, exact degrees, total
// weight equal to the maximum demand.  Returns a witness or "".
std::string check_cover_core(const RandomCover& inst,
                             const WeightedHypergraph& h) {
  const Mask full = full_mask(inst.n);
  const auto& es = h.edges();
  const Val kp = ref_max(inst.p);
  for (Mask x = 0; x <= full; ++x)
    if (ref_coverage(es, x) < inst.p.value(x))
      return "subset " + std::to_string(x) + " uncovered";
  for (int u = 0; u < inst.n; ++u)
    if (ref_degree(es, u) != inst.m[u])
      return "vertex " + std::to_string(u) + " degree off";
  if (ref_total(es) != kp) return "total weight is not the maximum demand";
  return "";
}

bool criterion1(std::ostream& out) {
  Criterion c;
  const auto start = std::chrono::steady_clock::now();
  for (int rep = 0; rep < 500 && c.ok; ++rep) {
    const std::uint64_t seed = 9000 + rep;
    const RandomCover inst = make_cover_instance(seed);
    const Mask full = full_mask(inst.n);
    for (Mask x = 0; x <= full; ++x)
      if (inst.p.value(x) > 50 || inst.p.value(x) < -50) {
        c.fail(tag(seed) + ": generated values leave [-50, 50]");
        break;
      }
    if (!c.ok) break;
    const auto [h, trace] = weak_cover_basic({inst.p, inst.m});
    const std::string core = check_cover_core(inst, h);
    if (!core.empty()) c.fail(tag(seed) + ": " + core);
    if (static_cast<Val>(h.edges().size()) > 4 * inst.n - 1)
      c.fail(tag(seed) + ": more than 4n-1 hyperedges");
    if (static_cast<Val>(trace.steps.size()) > 4 * inst.n - 1)
      c.fail(tag(seed) + ": recursion deeper than 4n-1");
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (c.ok && secs >= 60.0)
    c.fail("took " + std::to_string(secs) + " s (budget 60)");
  return c.finish(out, 1,
                  "weak covers, linear-size routine: 500 random feasible "
                  "instances, coverage / exact degrees / least total weight / "
                  "4n-1 bounds, under 60 s");
}

bool criterion2(std::ostream& out) {
  Criterion c;
  for (int rep = 0; rep < 500 && c.ok; ++rep) {
    const std::uint64_t seed = 9000 + rep;  // the criterion-1 suite again
    const RandomCover inst = make_cover_instance(seed);
    const auto [h, trace] = weak_cover_uniform({{inst.p}, inst.m, 0});
    const std::string core = check_cover_core(inst, h);
    if (!core.empty()) c.fail(tag(seed) + ": " + core);
    const Val kp = ref_max(inst.p);
    Val m_total = 0;
    for (Val v : inst.m) m_total += v;
    const Val fl = m_total / kp;
    const Val cl = fl + (m_total % kp != 0 ? 1 : 0);
    for (const WeightedEdge& e : h.edges()) {
      const Val size = popcount(e.members);
      if (size != fl && size != cl)
        c.fail(tag(seed) + ": hyperedge size " + std::to_string(size) +
               " outside {" + std::to_string(fl) + "," + std::to_string(cl) +
               "}");
    }
    if (static_cast<Val>(h.edges().size()) > 11 * inst.n)
      c.fail(tag(seed) + ": more than 11n hyperedges");
    if (static_cast<Val>(trace.steps.size()) > 11 * inst.n + 1)
      c.fail(tag(seed) + ": recursion deeper than 11n+1");
    int final_size_calls = 0;
    for (const CoverStep& s : trace.steps)
      if (s.attained & (1u << 4)) ++final_size_calls;
    if (final_size_calls > 1)
      c.fail(tag(seed) + ": the final-size weight candidate fired twice");
  }
  return c.finish(out, 2,
                  "weak covers, near-uniform routine: same 500 instances, "
                  "sizes in the rounding bracket, 11n bounds, the final-size "
                  "candidate at most once per trace");
}

bool criterion3(std::ostream& out) {
  Criterion c;
  for (int rep = 0; rep < 200 && c.ok; ++rep) {
    const std::uint64_t seed = 21000 + rep;
    std::mt19937_64 rng(seed);
    const int n = static_cast<int>(pick(rng, 2, 6));
    const Val k = pick(rng, 1, 5);
    const double density = static_cast<double>(pick(rng, 0, 10)) / 10.0;
    const SetFunction q = random_demand(n, k, density, rng);
    const SetFunction r = random_demand(n, k, density, rng);
    if (!q.is_symmetric() || !r.is_symmetric() || !q.is_skew_supermodular() ||
        !r.is_skew_supermodular()) {
      c.fail(tag(seed) + ": generated demand broke its own hypotheses");
      break;
    }
    const DegreeVector m =
        random_feasible_degrees(SetFunction::max_of(q, r), rng);
    const auto [h, trace] = weak_cover_uniform({{q, r}, m, 0});
    const auto& es = h.edges();
    const Mask full = full_mask(n);
    for (Mask x = 0; x <= full; ++x)
      if (ref_coverage(es, x) < q.value(x) || ref_coverage(es, x) < r.value(x))
        c.fail(tag(seed) + ": subset " + std::to_string(x) + " uncovered");
    for (int u = 0; u < n; ++u)
      if (ref_degree(es, u) != m[u])
        c.fail(tag(seed) + ": vertex " + std::to_string(u) + " degree off");
    if (ref_total(es) != k)
      c.fail(tag(seed) + ": total weight is not the maximum demand");
    if (static_cast<Val>(es.size()) > 14LL * n * n - 1)
      c.fail(tag(seed) + ": more than 14n^2-1 hyperedges");
    Val m_total = 0;
    for (Val v : m) m_total += v;
    const Val fl = m_total / k;
    const Val cl = fl + (m_total % k != 0 ? 1 : 0);
    for (const WeightedEdge& e : es) {
      const Val size = popcount(e.members);
      if (size != fl && size != cl)
        c.fail(tag(seed) + ": hyperedge size outside the rounding bracket");
    }
  }
  return c.finish(out, 3,
                  "two demands covered at once: 200 instances with equal "
                  "maxima, both covered exhaustively, 14n^2-1 bound, "
                  "near-uniform sizes");
}

bool criterion4(std::ostream& out) {
  Criterion c;
  for (int rep = 0; rep < 300 && c.ok; ++rep) {
    const std::uint64_t seed = 22000 + rep;
    std::mt19937_64 rng(seed);
    const int n = static_cast<int>(pick(rng, 2, 8));
    const Val k = pick(rng, 1, 6);
    const double density = static_cast<double>(pick(rng, 0, 10)) / 10.0;
    const SetFunction p = random_demand(n, k, density, rng);
    const DegreeVector m = random_feasible_degrees(p, rng);
    const WeightedHypergraph h =
        rep % 2 == 0 ? weak_cover_basic({p, m}).first
                     : weak_cover_uniform({{p}, m, 0}).first;
    const auto& es = h.edges();
    if (ref_total(es) != ref_max(p)) {
      c.fail(tag(seed) + ": total weight is not the maximum demand");
      break;
    }
    const Mask full = full_mask(n);
    for (Mask x = 0; x <= full; ++x)
      if (ref_cut(es, x, full) < p.value(x))
        c.fail(tag(seed) + ": cut below demand at subset " + std::to_string(x));
  }
  return c.finish(out, 4,
                  "weak covers of symmetric demands are cut covers: 300 "
                  "instances, d >= p on every subset");
}

bool criterion5(std::ostream& out) {
  Criterion c;
  const int n = 5;
  const Val proper = (Val{1} << (n - 1)) - 1;      // 15
  const Val at_full = (Val{1} << n) - n - 1;       // 26
  const Mask full = full_mask(n);
  std::vector<Val> table(std::size_t{1} << n, proper);
  table[0] = 0;
  table[full] = at_full;
  const SetFunction p = SetFunction::tabulated(n, std::move(table));
  const DegreeVector m(n, proper);

  if (proper != 15 || at_full != 26)
    c.fail("closed forms 2^(n-1)-1 and 2^n-n-1 moved");

  const auto [hb, tb] = weak_cover_basic({p, m});
  if (ref_total(hb.edges()) != 26)
    c.fail("linear-size route: total weight != 26");
  for (int u = 0; u < n; ++u)
    if (ref_degree(hb.edges(), u) != 15)
      c.fail("linear-size route: degree != 15");
  if (hb.edges().size() > 19) c.fail("linear-size route: more than 19 edges");

  const auto [hu, tu] = weak_cover_uniform({{p}, m, 0});
  if (ref_total(hu.edges()) != 26)
    c.fail("near-uniform route: total weight != 26");
  for (int u = 0; u < n; ++u)
    if (ref_degree(hu.edges(), u) != 15)
      c.fail("near-uniform route: degree != 15");
  for (const WeightedEdge& e : hu.edges()) {
    const Val size = popcount(e.members);
    if (size != 2 && size != 3)
      c.fail("near-uniform route: hyperedge size outside {2,3}");
  }
  return c.finish(out, 5,
                  "five-vertex replay (demands 15 / 26 at the full set, "
                  "degrees 15): total weight 26, both routines, sizes {2,3}");
}

std::vector<WeightedEdge> combined_edges(const WeightedHypergraph& a,
                                         const WeightedHypergraph& b) {
  std::vector<WeightedEdge> es = a.edges();
  es.insert(es.end(), b.edges().begin(), b.edges().end());
  return es;
}

bool criterion6(std::ostream& out) {
  Criterion c;
  for (int rep = 0; rep < 200 && c.ok; ++rep) {
    std::mt19937_64 meta(23000 + rep);
    GenOptions gen;
    gen.kind = "local_ca";
    gen.n = static_cast<int>(pick(meta, 2, 7));
    gen.density = static_cast<double>(pick(meta, 0, 10)) / 10.0;
    gen.seed = 23000 + rep;
    gen.feasible = true;
    const InstanceFile file = generate_instance(gen);
    const auto& inst = std::get<LocalCAInstance>(file.payload);
    SolveOptions opts;
    opts.mode = rep % 2 == 0 ? CoverMode::basic : CoverMode::uniform;
    const Solution sol = solve_application(file, opts);
    const auto es = combined_edges(inst.g, sol.h);
    const Mask full = full_mask(gen.n);
    for (int u = 0; u < gen.n && c.ok; ++u)
      for (int v = u + 1; v < gen.n; ++v) {
        if (inst.r[u][v] <= 0) continue;
        Val lam = kPosInf;
        for (Mask x = 1; x < full; ++x)
          if (has(x, u) && !has(x, v))
            lam = std::min(lam, ref_cut(es, x, full));
        if (lam < inst.r[u][v]) {
          c.fail(tag(gen.seed) + ": pair connectivity below target");
          break;
        }
      }
  }
  for (int rep = 0; rep < 50 && c.ok; ++rep) {
    std::mt19937_64 meta(24000 + rep);
    GenOptions gen;
    gen.kind = "node_to_area";
    gen.n = static_cast<int>(pick(meta, 2, 7));
    gen.density = static_cast<double>(pick(meta, 0, 10)) / 10.0;
    gen.seed = 24000 + rep;
    gen.feasible = true;
    const InstanceFile file = generate_instance(gen);
    const auto& inst = std::get<NodeToAreaInstance>(file.payload);
    SolveOptions opts;
    opts.mode = rep % 2 == 0 ? CoverMode::basic : CoverMode::uniform;
    const Solution sol = solve_application(file, opts);
    const auto es = combined_edges(inst.g, sol.h);
    const Mask full = full_mask(gen.n);
    for (const Area& w : inst.areas) {
      if (w.r <= 0 || !c.ok) continue;
      for (int v : elements_of(full & ~w.members)) {
        Val lam = kPosInf;
        for (Mask x = 1; x < full; ++x)
          if (has(x, v) && (x & w.members) == 0)
            lam = std::min(lam, ref_cut(es, x, full));
        if (lam < w.r) {
          c.fail(tag(gen.seed) + ": vertex-to-area connectivity below target");
          break;
        }
      }
    }
  }
  for (int rep = 0; rep < 50 && c.ok; ++rep) {
    std::mt19937_64 meta(25000 + rep);
    GenOptions gen;
    gen.kind = "mixed_ca";
    gen.n = static_cast<int>(pick(meta, 2, 7));
    gen.density = static_cast<double>(pick(meta, 0, 10)) / 10.0;
    gen.seed = 25000 + rep;
    gen.feasible = true;
    const InstanceFile file = generate_instance(gen);
    const auto& inst = std::get<MixedCAInstance>(file.payload);
    SolveOptions opts;
    opts.mode = rep % 2 == 0 ? CoverMode::basic : CoverMode::uniform;
    const Solution sol = solve_application(file, opts);
    std::vector<MixedEdge> es = inst.g.edges();
    for (const WeightedEdge& e : sol.h.edges())
      es.push_back({0, 0, e.members, e.weight});
    const Mask full = full_mask(gen.n);
    for (Mask x = 1; x < full; ++x) {
      Val din = 0;
      for (const MixedEdge& e : es)
        if (((e.heads | e.both) & x) != 0 &&
            ((e.tails | e.both) & (full & ~x)) != 0)
          din += e.weight;
      const Val want = has(x, inst.root) ? inst.l : inst.k;
      if (din < want) {
        c.fail(tag(gen.seed) + ": in-weight below demand at subset " +
               std::to_string(x));
        break;
      }
    }
  }
  return c.finish(out, 6,
                  "connectivity augmentation end-to-end: 200 pairwise + 50 "
                  "vertex-to-area + 50 rooted mixed instances, all targets "
                  "reached by exhaustive minimum cuts");
}

OracleResult ref_oracle(const SetFunction& p, Mask s0, Mask t0,
                        const std::vector<Val>& y0,
                        const std::function<Val(Mask)>& extra) {
  OracleResult best;
  bool first = true;
  const Mask free = p.active() & ~s0 & ~t0;
  for (Mask sub = 0;; sub = next_submask(sub, free)) {
    const Mask z = s0 | sub;
    Val obj = p.value(z) + extra(z);
    for (int u : elements_of(z)) obj += y0[u];
    if (first || obj > best.value) {
      best = {obj, z, p.value(z)};
      first = false;
    }
    if (sub == free) break;
  }
  return best;
}

bool same(const OracleResult& a, const OracleResult& b) {
  return a.value == b.value && a.argmax == b.argmax && a.p_value == b.p_value;
}

bool criterion7(std::ostream& out) {
  Criterion c;
  for (int rep = 0; rep < 1000 && c.ok; ++rep) {
    const std::uint64_t seed = 25000 + rep;
    std::mt19937_64 rng(seed);
    const int n = static_cast<int>(pick(rng, 2, 6));
    const Mask full = full_mask(n);
    std::vector<Val> table(std::size_t{1} << n);
    for (Val& v : table) v = pick(rng, -8, 12);
    const SetFunction p = SetFunction::tabulated(n, table);
    std::vector<Val> y0(n);
    for (Val& v : y0) v = pick(rng, -4, 4);
    const Mask s0 = static_cast<Mask>(pick(rng, 0, full));
    const Mask t0 = static_cast<Mask>(pick(rng, 0, full)) & ~s0;
    const WeightedHypergraph h = random_hypergraph(n, 0.5, rng);
    const auto& es = h.edges();

    if (!same(max_oracle_empty(p, s0, t0, y0),
              ref_oracle(p, s0, t0, y0, [](Mask) { return Val{0}; })))
      c.fail(tag(seed) + ": plain maximization oracle disagrees");
    if (!same(max_oracle_sc(p, h, s0, t0, y0),
              ref_oracle(p, s0, t0, y0,
                         [&](Mask z) { return -ref_cut(es, z, full); })))
      c.fail(tag(seed) + ": cut-corrected oracle disagrees");
    if (!same(max_oracle_b(p, h, s0, t0, y0),
              ref_oracle(p, s0, t0, y0,
                         [&](Mask z) { return -ref_coverage(es, z); })))
      c.fail(tag(seed) + ": coverage-corrected oracle disagrees");

    // Minimal maximizers need a skew-supermodular input.
    const SetFunction q = random_demand(n, pick(rng, 1, 4), 0.5, rng);
    std::vector<Mask> expect;
    const Val kq = ref_max(q);
    for (Mask x = 0; x <= full; ++x) {
      if (q.value(x) != kq) continue;
      bool minimal = true;
      for (Mask y = 0; y < x && minimal; ++y)
        if ((y & x) == y && y != x && q.value(y) == kq) minimal = false;
      if (minimal) expect.push_back(x);
    }
    std::vector<Mask> got = minimal_maximizers(q);
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    if (got != expect) c.fail(tag(seed) + ": minimal maximizers disagree");

    // Both weight-candidate routes against a direct scan, on a feasible
    // instance (the ratio route divides by the slack, which feasibility
    // keeps non-negative).
    Mask a = static_cast<Mask>(pick(rng, 0, full));
    while (popcount(a) < 2) a = static_cast<Mask>(pick(rng, 0, full));
    const DegreeVector mq = random_feasible_degrees(q, rng);
    Val expect4 = kPosInf;
    for (Mask x = 0; x <= full; ++x) {
      const int ov = popcount(x & a);
      if (ov < 2) continue;
      Val num = -q.value(x);
      for (int u : elements_of(x)) num += mq[u];
      expect4 = std::min(expect4, floor_div(num, ov - 1));
    }
    const auto qv = [&](Mask x) { return q.value(x); };
    long iters = 0;
    if (alpha4_exhaustive(qv, mq, a, full) != expect4)
      c.fail(tag(seed) + ": direct slack-bound scan disagrees");
    if (alpha4_via_ratio(qv, mq, a, full, &iters) != expect4)
      c.fail(tag(seed) + ": ratio-route slack bound disagrees");

    // Plain ratio maximization with a positive denominator.
    std::vector<Val> ftab(std::size_t{1} << n);
    for (Val& v : ftab) v = pick(rng, -6, 10);
    const auto fv = [&](Mask z) { return ftab[z]; };
    const auto gv = [&](Mask z) { return static_cast<Val>(popcount(z)) + 1; };
    const RatioResult rr = ratio_maximize(fv, gv, full);
    Frac best = Frac::of(fv(0), gv(0));
    for (Mask z = 1; z <= full; ++z) {
      const Frac q2 = Frac::of(fv(z), gv(z));
      if (best < q2) best = q2;
    }
    if (!(rr.ratio == best)) c.fail(tag(seed) + ": ratio optimum disagrees");
    if (rr.iterations > n + 1)
      c.fail(tag(seed) + ": ratio iterations exceed the denominator maximum");
  }
  return c.finish(out, 7,
                  "oracles vs exhaustive reference scans: 1000 random "
                  "queries over maximization, minimal maximizers, slack "
                  "bounds, and ratio maximization");
}

// Membership by literal constraint enumeration.
bool ref_member(const SetFunction& p, const DegreeVector& m, Val k,
                const QPoint& x) {
  const int n = p.n();
  const Mask full = full_mask(n);
  for (int u = 0; u < n; ++u) {
    const Rat cap = std::min<Rat>(Rat(1), Rat(m[u]));
    if (x[u] < 0 || x[u] > cap) return false;
    if (m[u] == k && x[u] != 1) return false;
  }
  Val m_total = 0;
  for (Val v : m) m_total += v;
  for (Mask z = 0; z <= full; ++z) {
    Rat xz = 0;
    Val mz = 0;
    for (int u : elements_of(z)) {
      xz += x[u];
      mz += m[u];
    }
    if (p.value(z) == k && xz < 1) return false;
    if (xz > Rat(mz - p.value(z) + 1)) return false;
  }
  Rat xv = 0;
  for (int u = 0; u < n; ++u) xv += x[u];
  const Val fl = m_total / k;
  const Val cl = fl + (m_total % k != 0 ? 1 : 0);
  return xv >= Rat(fl) && xv <= Rat(cl);
}

bool criterion8(std::ostream& out) {
  Criterion c;
  for (int rep = 0; rep < 300 && c.ok; ++rep) {
    const std::uint64_t seed = 27000 + rep;
    std::mt19937_64 rng(seed);
    const int n = static_cast<int>(pick(rng, 2, 6));
    const Val k = pick(rng, 1, 4);
    const double density = static_cast<double>(pick(rng, 0, 10)) / 10.0;
    const SetFunction p = random_demand(n, k, density, rng);
    const DegreeVector m = random_feasible_degrees(p, rng);
    const QInstance inst = make_q_instance(p, m);
    std::vector<Rat> cost(n);
    for (Rat& v : cost) v = Rat(pick(rng, -3, 5));

    const QPoint opt = q_optimize(inst, cost);
    Rat opt_value = 0;
    for (int u = 0; u < n; ++u) {
      if (opt[u] != 0 && opt[u] != 1) {
        c.fail(tag(seed) + ": optimizer returned a fractional coordinate");
        break;
      }
      opt_value += cost[u] * opt[u];
    }
    if (!c.ok) break;
    if (!ref_member(p, m, k, opt))
      c.fail(tag(seed) + ": optimizer left the polytope");

    // Best 0/1 member by full enumeration.
    const Mask full = full_mask(n);
    bool any = false;
    Rat best = 0;
    for (Mask z = 0; z <= full; ++z) {
      QPoint x(n, Rat(0));
      Rat vx = 0;
      for (int u : elements_of(z)) {
        x[u] = 1;
        vx += cost[u];
      }
      if (!ref_member(p, m, k, x)) continue;
      if (!any || vx > best) best = vx;
      any = true;
    }
    if (!any)
      c.fail(tag(seed) + ": reference scan found no integral member");
    else if (opt_value != best)
      c.fail(tag(seed) + ": optimizer value differs from the best member");

    // Membership checker vs the same enumeration on random points.
    for (int probe = 0; probe < 20; ++probe) {
      QPoint x(n);
      for (Rat& v : x) v = Rat(pick(rng, -1, 4)) / Rat(pick(rng, 1, 3));
      const bool lib = !q_membership(inst, x).has_value();
      if (lib != ref_member(p, m, k, x)) {
        c.fail(tag(seed) + ": membership verdicts disagree");
        break;
      }
    }
  }
  return c.finish(out, 8,
                  "admissible-hyperedge polytope: 300 instances, 0/1 extreme "
                  "optima matching full enumeration, membership checker "
                  "agreeing on random points");
}

std::vector<Mask> random_laminar(int n, std::mt19937_64& rng) {
  const Mask full = full_mask(n);
  std::vector<Mask> fam;
  for (int t = 0; t < 4 * n; ++t) {
    const Mask x = static_cast<Mask>(pick(rng, 1, full));
    bool fits = true;
    for (Mask f : fam) {
      const Mask inter = f & x;
      if (inter != 0 && inter != f && inter != x) {
        fits = false;
        break;
      }
    }
    if (fits) fam.push_back(x);
  }
  std::sort(fam.begin(), fam.end());
  fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
  return fam;
}

bool criterion9(std::ostream& out) {
  Criterion c;
  // Disjointness of the minimal-maximizer family on skew-supermodular
  // demands, including the asymmetric rooted kind.
  for (int rep = 0; rep < 50 && c.ok; ++rep) {
    const std::uint64_t seed = 28000 + rep;
    std::mt19937_64 rng(seed);
    const int n = static_cast<int>(pick(rng, 2, 7));
    SetFunction p = random_demand(n, pick(rng, 1, 5), 0.5, rng);
    if (rep % 5 == 4) {
      MixedCAInstance mc;
      GenOptions gen;
      gen.kind = "mixed_ca";
      gen.n = n;
      gen.seed = seed;
      gen.feasible = true;
      mc = std::get<MixedCAInstance>(generate_instance(gen).payload);
      p = symmetrized(build_p_mixed(mc.g, mc.root, mc.k, mc.l));
    }
    const std::vector<Mask> fam = minimal_maximizers(p);
    for (std::size_t i = 0; i < fam.size(); ++i)
      for (std::size_t j = i + 1; j < fam.size(); ++j)
        if (fam[i] & fam[j])
          c.fail(tag(seed) + ": minimal maximizers overlap");
  }
  // Trace audits: cumulative maximizer-family laminarity on the linear-size
  // route, cumulative projected tight-set laminarity and slack monotonicity
  // on the near-uniform route.
  for (int rep = 0; rep < 60 && c.ok; ++rep) {
    const std::uint64_t seed = 29000 + rep;
    std::mt19937_64 rng(seed);
    const int n = static_cast<int>(pick(rng, 2, 7));
    const SetFunction p = random_demand(n, pick(rng, 1, 5), 0.5, rng);
    const DegreeVector m = random_feasible_degrees(p, rng);
    CoverOptions opts;
    opts.diagnostics = true;
    const auto [hb, tb] = weak_cover_basic({p, m}, opts);
    const VerificationReport ab = audit_trace(tb);
    if (!ab.ok()) c.fail(tag(seed) + ": linear-size audit: " + ab.summary());
    const auto [hu, tu] = weak_cover_uniform({{p}, m, 0}, opts);
    const VerificationReport au = audit_trace(tu);
    if (!au.ok()) c.fail(tag(seed) + ": near-uniform audit: " + au.summary());
    const DiagnosticsReport d = trace_diagnostics(tu);
    if (!d.ok())
      c.fail(tag(seed) + ": near-uniform analysis: " + d.violations.front());
  }
  // Projection size bound on random laminar families.
  for (int rep = 0; rep < 200 && c.ok; ++rep) {
    const std::uint64_t seed = 30000 + rep;
    std::mt19937_64 rng(seed);
    const int n = static_cast<int>(pick(rng, 3, 8));
    const std::vector<Mask> fam = random_laminar(n, rng);
    const Mask z = static_cast<Mask>(pick(rng, 0, full_mask(n)));
    if (!check_projection_bound(fam, z))
      c.fail(tag(seed) + ": projection bound violated");
  }
  return c.finish(out, 9,
                  "structural invariants: disjoint minimal maximizers, "
                  "laminar trace families, monotone pairwise slack, "
                  "projection size bound on 200 laminar families");
}

// Swap std::cout's buffer away while the in-process CLI commands chatter.
struct CoutSilencer {
  std::ostringstream sink;
  std::streambuf* old = std::cout.rdbuf(sink.rdbuf());
  ~CoutSilencer() { std::cout.rdbuf(old); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("hypercover-selftest-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

bool criterion10(std::ostream& out) {
  Criterion c;
  TempDir dir;
  const std::array<const char*, 5> kinds = {"cover", "local_ca", "simul_ca",
                                            "node_to_area", "mixed_ca"};
  for (std::size_t ki = 0; ki < kinds.size() && c.ok; ++ki) {
    for (int rep = 0; rep < 100 && c.ok; ++rep) {
      const std::string kind = kinds[ki];
      std::mt19937_64 meta(31000 + 1000 * ki + rep);
      const std::string inst_path =
          (dir.path / (kind + "-" + std::to_string(rep) + ".json")).string();
      const std::string sol_path =
          (dir.path / (kind + "-" + std::to_string(rep) + ".sol.json"))
              .string();
      const std::string mode = rep % 2 == 0 ? "basic" : "uniform";
      GenArgs gen;
      gen.kind = kind;
      gen.n = static_cast<int>(pick(meta, 2, kind == "simul_ca" ? 5 : 6));
      gen.seed = 31000 + 1000 * ki + rep;
      gen.density = static_cast<double>(pick(meta, 0, 10)) / 10.0;
      gen.feasible = true;
      gen.out_path = inst_path;
      SolveArgs solve;
      solve.paths = {inst_path};
      solve.mode = mode;
      solve.out_path = sol_path;
      VerifyArgs verify;
      verify.instance_path = inst_path;
      verify.solution_path = sol_path;
      verify.mode = mode;
      CoutSilencer quiet;
      if (cmd_gen(gen) != 0)
        c.fail(kind + " " + tag(gen.seed) + ": gen exited nonzero");
      else if (cmd_solve(solve) != 0)
        c.fail(kind + " " + tag(gen.seed) + ": solve exited nonzero");
      else if (cmd_verify(verify) != 0)
        c.fail(kind + " " + tag(gen.seed) + ": verify exited nonzero");
    }
  }

  // Degree specification above the maximum demand: five vertices, no edges,
  // every pair targeted at 15, degrees pinned to 16.
  if (c.ok) {
    InstanceFile file;
    file.ground = GroundSet::indexed(5);
    LocalCAInstance inst;
    inst.g = WeightedHypergraph(5);
    inst.r.assign(5, std::vector<Val>(5, 15));
    for (int u = 0; u < 5; ++u) inst.r[u][u] = 0;
    inst.m.assign(5, 16);
    inst.has_m = true;
    file.payload = inst;
    try {
      solve_application(file);
      c.fail("overfull degree specification was not rejected");
    } catch (const InfeasibleError& e) {
      if (e.certificate.kind != InfeasibilityCertificate::Kind::degree_over_max)
        c.fail("rejection cited the wrong certificate kind");
      else if (e.certificate.lhs != 16 || e.certificate.rhs != 15)
        c.fail("certificate does not show m(u)=16 against maximum 15");
    } catch (const std::exception& e) {
      c.fail(std::string("unexpected error: ") + e.what());
    }
    const std::string inst_path = (dir.path / "infeasible.json").string();
    SolveArgs solve;
    solve.paths = {inst_path};
    int code = -1;
    {
      CoutSilencer quiet;
      try {
        write_text(inst_path, serialize_instance(file));
        code = cmd_solve(solve);
      } catch (const std::exception&) {
        code = -1;
      }
    }
    if (c.ok && code != 2)
      c.fail("infeasible instance exited " + std::to_string(code) +
             " instead of 2");
  }
  return c.finish(out, 10,
                  "command-line round trip: generate, solve, verify exit 0 "
                  "for 100 instances of each kind; overfull degrees exit 2 "
                  "with the degree certificate");
}

}  // namespace

bool run_selftest(std::ostream& out) {
  bool ok = true;
  ok &= criterion1(out);
  ok &= criterion2(out);
  ok &= criterion3(out);
  ok &= criterion4(out);
  ok &= criterion5(out);
  ok &= criterion6(out);
  ok &= criterion7(out);
  ok &= criterion8(out);
  ok &= criterion9(out);
  ok &= criterion10(out);
  out << (ok ? "acceptance suite passed" : "acceptance suite FAILED") << "\n";
  return ok;
}

}  // namespace hypercover
