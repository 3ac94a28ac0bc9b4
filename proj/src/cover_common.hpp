#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypercover/cover.hpp"

// Helpers shared by the two cover routines; not part of the public surface.

namespace hypercover::detail {

// Values of the oracle's current function as an ambient-indexed table,
// kNegInf outside the active domain.
inline std::vector<Val> ambient_table(const StackedOracle& st) {
  std::vector<Val> t(std::size_t{1} << st.n(), kNegInf);
  const Mask dom = st.active();
  for (Mask x = 0;; x = next_submask(x, dom)) {
    t[x] = st.eval(x);
    if (x == dom) break;
  }
  return t;
}

inline void require_cap(int n, int cap) {
  if (n > cap)
    throw std::runtime_error("ground set of " + std::to_string(n) +
                             " vertices exceeds the enumeration cap of " +
                             std::to_string(cap));
}

inline DegreeVector validated_degrees(const SetFunction& p,
                                      const DegreeVector& m) {
  if (static_cast<int>(m.size()) != p.n())
    throw std::invalid_argument("degree vector does not match ground set");
  for (int u : elements_of(p.active()))
    if (m[u] < 0) throw std::invalid_argument("negative degree");
  return m;
}

// Pointwise max of the per-component tables recorded for one call.
inline std::vector<Val> combined_table(const CoverStep& step) {
  std::vector<Val> t = step.p_tables.at(0);
  for (std::size_t c = 1; c < step.p_tables.size(); ++c)
    for (std::size_t x = 0; x < t.size(); ++x)
      t[x] = std::max(t[x], step.p_tables[c][x]);
  return t;
}

// Inclusion-minimal maximizers of a tabulated function over dom.
inline std::vector<Mask> table_minimal_maximizers(const std::vector<Val>& p_of,
                                                  Mask dom) {
  Val k = kNegInf;
  for (Mask x = 0;; x = next_submask(x, dom)) {
    k = std::max(k, p_of[x]);
    if (x == dom) break;
  }
  std::vector<Mask> maxers;
  for (Mask x = 0;; x = next_submask(x, dom)) {
    if (p_of[x] == k) maxers.push_back(x);
    if (x == dom) break;
  }
  std::vector<Mask> minimal;
  for (Mask x : maxers) {
    bool shrinkable = false;
    for (Mask y : maxers)
      if (y != x && (y & ~x) == 0) {
        shrinkable = true;
        break;
      }
    if (!shrinkable) minimal.push_back(x);
  }
  return minimal;
}

}  // namespace hypercover::detail
