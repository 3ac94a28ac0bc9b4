#include "hypercover/generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "cover_common.hpp"

namespace hypercover {
namespace {

// Random nonempty subset of `dom` with each element kept at ratio num/den.
Mask random_subset(Mask dom, std::mt19937_64& rng, int num, int den) {
  while (true) {
    Mask x = 0;
    for (int u : elements_of(dom))
      if (pick(rng, 1, den) <= num) x |= bit(u);
    if (x != 0) return x;
  }
}

int edge_budget(int n, double density) {
  return static_cast<int>(std::lround(density * 1.5 * n));
}

// lambda(u, v) for every pair in one sweep over the subsets.
std::vector<std::vector<Val>> all_pairs_min_cut(const WeightedHypergraph& g) {
  const int n = g.n();
  const Mask full = full_mask(n);
  std::vector<std::vector<Val>> lam(n, std::vector<Val>(n, kPosInf));
  for (Mask x = 1; x < full; ++x) {
    const Val d = g.cut(x);
    for (int u : elements_of(x))
      for (int v : elements_of(full & ~x)) {
        lam[u][v] = std::min(lam[u][v], d);
        lam[v][u] = lam[u][v];
      }
  }
  return lam;
}

MixedHypergraph random_mixed_hypergraph(int n, double density,
                                        std::mt19937_64& rng) {
  MixedHypergraph g(n);
  const Mask full = full_mask(n);
  for (int i = edge_budget(n, density); i > 0; --i) {
    const Val w = pick(rng, 1, 2);
    if (pick(rng, 0, 1) == 0) {
      const int u = static_cast<int>(pick(rng, 0, n - 1));
      int v = u;
      while (v == u) v = static_cast<int>(pick(rng, 0, n - 1));
      g.add_edge(bit(u), bit(v), 0, w);
    } else {
      Mask e = random_subset(full, rng, 1, 3);
      if (popcount(e) < 2) e |= bit(static_cast<int>(pick(rng, 0, n - 1)));
      if (popcount(e) < 2) continue;
      g.add_edge(0, 0, e, w);
    }
  }
  return g;
}

DegreeVector random_degrees_upto(int n, Val hi, std::mt19937_64& rng) {
  DegreeVector m(n, 0);
  for (Val& v : m) v = pick(rng, 0, hi);
  return m;
}

InstanceFile gen_cover(const GenOptions& opts, std::mt19937_64& rng) {
  const Val k = pick(rng, 1, 6);
  CoverFileInstance inst;
  inst.components.push_back(random_demand(opts.n, k, opts.density, rng));
  if (pick(rng, 0, 1) == 1)
    inst.components.push_back(random_demand(opts.n, k, opts.density, rng));
  const SetFunction p =
      inst.components.size() == 2
          ? SetFunction::max_of(inst.components[0], inst.components[1])
          : inst.components[0];
  inst.m = opts.feasible ? random_feasible_degrees(p, rng)
                         : random_degrees_upto(opts.n, k + 2, rng);
  InstanceFile file;
  file.ground = GroundSet::indexed(opts.n);
  file.payload = std::move(inst);
  return file;
}

InstanceFile gen_local(const GenOptions& opts, std::mt19937_64& rng) {
  const Val k = pick(rng, 1, 6);
  LocalDemand d = random_local_demand(opts.n, k, opts.density, rng);
  LocalCAInstance inst;
  inst.g = std::move(d.g);
  inst.r = std::move(d.r);
  if (opts.feasible && pick(rng, 0, 3) == 0) {
    // Optimization variant: the solver derives the cheapest degrees itself.
    inst.has_m = false;
    inst.m.assign(opts.n, 0);
  } else {
    inst.has_m = true;
    inst.m = opts.feasible
                 ? random_feasible_degrees(build_p_local(inst.g, inst.r), rng)
                 : random_degrees_upto(opts.n, k + 2, rng);
  }
  InstanceFile file;
  file.ground = GroundSet::indexed(opts.n);
  file.payload = std::move(inst);
  return file;
}

InstanceFile gen_simul(const GenOptions& opts, std::mt19937_64& rng) {
  const Val k = pick(rng, 1, 6);
  LocalDemand d1 = random_local_demand(opts.n, k, opts.density, rng);
  LocalDemand d2 = random_local_demand(opts.n, k, opts.density, rng);
  SimulCAInstance inst;
  inst.g1 = std::move(d1.g);
  inst.r1 = std::move(d1.r);
  inst.g2 = std::move(d2.g);
  inst.r2 = std::move(d2.r);
  const SetFunction p = SetFunction::max_of(build_p_local(inst.g1, inst.r1),
                                            build_p_local(inst.g2, inst.r2));
  inst.m = opts.feasible ? random_feasible_degrees(p, rng)
                         : random_degrees_upto(opts.n, k + 2, rng);
  InstanceFile file;
  file.ground = GroundSet::indexed(opts.n);
  file.payload = std::move(inst);
  return file;
}

InstanceFile gen_node_to_area(const GenOptions& opts, std::mt19937_64& rng) {
  const int n = opts.n;
  const Val k = pick(rng, 1, 6);
  NodeToAreaInstance inst;
  inst.g = random_hypergraph(n, opts.density, rng);
  const Mask full = full_mask(n);
  const int count = static_cast<int>(pick(rng, 1, std::min(3, n - 1)));
  for (int i = 0; i < count; ++i) {
    Mask members = random_subset(full, rng, 1, 3);
    if (members == full) members &= ~bit(static_cast<int>(pick(rng, 0, n - 1)));
    inst.areas.push_back({members, 0});
  }
  // Cheapest cut isolating each area: the ceiling its target may sit above.
  std::vector<Val> mu(inst.areas.size(), kPosInf);
  for (Mask x = 1; x < full; ++x) {
    const Val d = inst.g.cut(x);
    for (std::size_t i = 0; i < inst.areas.size(); ++i) {
      const Mask w = inst.areas[i].members;
      if ((w & x) == 0 || (w & x) == w) mu[i] = std::min(mu[i], d);
    }
  }
  const std::size_t star = static_cast<std::size_t>(
      pick(rng, 0, static_cast<Val>(inst.areas.size()) - 1));
  for (std::size_t i = 0; i < inst.areas.size(); ++i)
    inst.areas[i].r = i == star ? mu[i] + k : pick(rng, 0, mu[i] + k);
  inst.m = opts.feasible
               ? random_feasible_degrees(
                     build_p_node_to_area(inst.g, inst.areas), rng)
               : random_degrees_upto(n, k + 2, rng);
  InstanceFile file;
  file.ground = GroundSet::indexed(n);
  file.payload = std::move(inst);
  return file;
}

InstanceFile gen_mixed(const GenOptions& opts, std::mt19937_64& rng) {
  const int n = opts.n;
  MixedCAInstance inst;
  inst.g = random_mixed_hypergraph(n, opts.density, rng);
  inst.root = static_cast<int>(pick(rng, 0, n - 1));
  // Current worst in-connectivity on each side of the root, so the chosen
  // demands leave a positive deficiency.
  const Mask full = full_mask(n);
  Val rootfree = kPosInf, rooted = kPosInf;
  for (Mask x = 1; x < full; ++x) {
    Val& side = has(x, inst.root) ? rooted : rootfree;
    side = std::min(side, inst.g.in_cut(x));
  }
  inst.k = rootfree + pick(rng, 1, 4);
  inst.l = rooted + pick(rng, 1, 4);
  const SetFunction p =
      symmetrized(build_p_mixed(inst.g, inst.root, inst.k, inst.l));
  if (opts.feasible) {
    // The degree bounds may exceed the maximum demand; the solver clamps.
    inst.m = min_degree_vector(p);
    for (Val& v : inst.m) v += pick(rng, 0, 3);
  } else {
    inst.m = random_degrees_upto(n, std::max<Val>(p.max_value(), 0) + 2, rng);
  }
  InstanceFile file;
  file.ground = GroundSet::indexed(n);
  file.payload = std::move(inst);
  return file;
}

}  // namespace

WeightedHypergraph random_hypergraph(int n, double density,
                                     std::mt19937_64& rng) {
  WeightedHypergraph g(n);
  const Mask full = full_mask(n);
  for (int i = edge_budget(n, density); i > 0; --i) {
    Mask e = random_subset(full, rng, 1, 3);
    if (popcount(e) < 2) e |= bit(static_cast<int>(pick(rng, 0, n - 1)));
    if (popcount(e) < 2) continue;
    g.add_edge(e, pick(rng, 1, 2));
  }
  return g;
}

LocalDemand random_local_demand(int n, Val k, double density,
                                std::mt19937_64& rng) {
  if (n < 2) throw std::invalid_argument("need at least two vertices");
  if (k < 1) throw std::invalid_argument("the maximum demand must be positive");
  LocalDemand d;
  d.g = random_hypergraph(n, density, rng);
  const auto lam = all_pairs_min_cut(d.g);
  d.r.assign(n, std::vector<Val>(n, 0));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (pick(rng, 0, 1) == 1) d.r[u][v] = pick(rng, 0, lam[u][v] + k);
      d.r[v][u] = d.r[u][v];
    }
  // One designated pair exhausts the allowance, pinning the maximum
  // deficiency to exactly k.
  const int us = static_cast<int>(pick(rng, 0, n - 1));
  int vs = us;
  while (vs == us) vs = static_cast<int>(pick(rng, 0, n - 1));
  d.r[us][vs] = d.r[vs][us] = lam[us][vs] + k;
  return d;
}

SetFunction random_demand(int n, Val k, double density, std::mt19937_64& rng) {
  const LocalDemand d = random_local_demand(n, k, density, rng);
  return build_p_local(d.g, d.r);
}

DegreeVector random_feasible_degrees(const SetFunction& p,
                                     std::mt19937_64& rng) {
  const Val k = std::max<Val>(p.max_value(), 0);
  DegreeVector m = min_degree_vector(p);
  for (Val& v : m) v = std::min(k, v + pick(rng, 0, 2));
  return m;
}

InstanceFile generate_instance(const GenOptions& opts) {
  if (opts.n < 2) throw std::invalid_argument("need at least two vertices");
  detail::require_cap(opts.n, opts.cap);
  if (opts.density < 0.0 || opts.density > 1.0)
    throw std::invalid_argument("density must be in [0, 1]");
  std::mt19937_64 rng(opts.seed);
  if (opts.kind == "cover") return gen_cover(opts, rng);
  if (opts.kind == "local_ca") return gen_local(opts, rng);
  if (opts.kind == "simul_ca") return gen_simul(opts, rng);
  if (opts.kind == "node_to_area") return gen_node_to_area(opts, rng);
  if (opts.kind == "mixed_ca") return gen_mixed(opts, rng);
  throw std::invalid_argument("unknown instance kind \"" + opts.kind + "\"");
}

}  // namespace hypercover
