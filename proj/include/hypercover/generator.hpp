#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hypercover/augmentation.hpp"
#include "hypercover/set_function.hpp"

namespace hypercover {

// Uniform integer in [lo, hi] straight off the raw engine stream; the
// standard distribution objects vary across library implementations, and
// generated instances must be reproducible from the seed alone.
inline Val pick(std::mt19937_64& rng, Val lo, Val hi) {
  return lo + static_cast<Val>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

struct GenOptions {
  std::string kind;  // cover | local_ca | simul_ca | node_to_area | mixed_ca
  int n = 5;
  std::uint64_t seed = 0;
  double density = 0.5;  // in [0, 1]; scales the number of hyperedges
  bool feasible = false; // guarantee the solvability hypotheses
  int cap = kDefaultCap;
};

// Deterministic random instance of the requested kind.  With `feasible`,
// degree specifications are built from the least feasible vector plus slack,
// so solving and verifying the output always succeeds.
InstanceFile generate_instance(const GenOptions& opts);

// Building blocks, shared with the test suites.

WeightedHypergraph random_hypergraph(int n, double density,
                                     std::mt19937_64& rng);

// A connectivity-target instance whose demand function has maximum value
// exactly k: every target stays within k of the pair's current connectivity
// and one designated pair meets that bound.
struct LocalDemand {
  WeightedHypergraph g;
  std::vector<std::vector<Val>> r;
};
LocalDemand random_local_demand(int n, Val k, double density,
                                std::mt19937_64& rng);

// The demand function of a random LocalDemand: symmetric, skew-supermodular,
// maximum value exactly k.
SetFunction random_demand(int n, Val k, double density, std::mt19937_64& rng);

// Exact degrees that satisfy the cover hypotheses for p: the least feasible
// vector plus random slack, capped at the maximum demand.
DegreeVector random_feasible_degrees(const SetFunction& p,
                                     std::mt19937_64& rng);

}  // namespace hypercover
