#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

// Shared ground-set / subset / value plumbing. Subsets of the ground set are
// bitmasks (vertex i <-> bit i), which keeps every enumeration in this
// project an integer loop. Ground sets are capped so 2^n scans stay feasible.

namespace hypercover {

using Mask = std::uint32_t;
using Val = long long;

// Default enumeration cap; can be raised per run (CLI --cap / HYPERCOVER_CAP)
// but never beyond kHardCap, since masks must fit Mask and 2^n scans must fit
// in memory.
inline constexpr int kDefaultCap = 20;
inline constexpr int kHardCap = 26;

// Sentinels for "minus/plus infinity". Any value at or below kNegInfGuard
// (resp. at or above kPosInfGuard) is treated as infinite so that saturating
// arithmetic cannot creep back into the finite range.
inline constexpr Val kNegInf = std::numeric_limits<Val>::min() / 4;
inline constexpr Val kNegInfGuard = kNegInf / 2;
inline constexpr Val kPosInf = std::numeric_limits<Val>::max() / 4;
inline constexpr Val kPosInfGuard = kPosInf / 2;

inline bool is_neg_inf(Val v) { return v <= kNegInfGuard; }
inline bool is_pos_inf(Val v) { return v >= kPosInfGuard; }

// a + b where either side may be -inf; -inf absorbs.
inline Val val_add(Val a, Val b) {
  if (is_neg_inf(a) || is_neg_inf(b)) return kNegInf;
  return a + b;
}

inline Mask bit(int u) { return Mask{1} << u; }
inline bool has(Mask X, int u) { return (X >> u) & 1u; }
inline int popcount(Mask X) { return std::popcount(X); }
inline int lowest_bit(Mask X) { return std::countr_zero(X); }

inline Mask full_mask(int n) { return (Mask{1} << n) - 1; }

// Iterate over the elements of a mask: for (int u : elements_of(X)) ...
struct MaskElements {
  Mask mask;
  struct iterator {
    Mask rest;
    int operator*() const { return std::countr_zero(rest); }
    iterator& operator++() {
      rest &= rest - 1;
      return *this;
    }
    bool operator!=(const iterator& o) const { return rest != o.rest; }
  };
  iterator begin() const { return {mask}; }
  iterator end() const { return {0}; }
};
inline MaskElements elements_of(Mask X) { return {X}; }

// Iterate over all submasks of `universe`, including 0 and universe itself.
// Usage: for (Mask X = 0;; X = next_submask(X, universe)) { ...; if (X == universe) break; }
inline Mask next_submask(Mask X, Mask universe) { return (X - universe) & universe; }

// Named vertex set. Labels are only for I/O; all computation is index-based.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (static_cast<int>(labels_.size()) > kHardCap)
      throw std::invalid_argument("ground set exceeds hard cap of " + std::to_string(kHardCap));
    for (std::size_t i = 0; i < labels_.size(); ++i)
      for (std::size_t j = i + 1; j < labels_.size(); ++j)
        if (labels_[i] == labels_[j])
          throw std::invalid_argument("duplicate vertex label: " + labels_[i]);
  }
  static GroundSet indexed(int n) {
    std::vector<std::string> ls;
    ls.reserve(n);
    for (int i = 0; i < n; ++i) ls.push_back("v" + std::to_string(i));
    return GroundSet(std::move(ls));
  }

  int n() const { return static_cast<int>(labels_.size()); }
  Mask full() const { return full_mask(n()); }
  const std::string& label(int u) const { return labels_.at(u); }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const {
    for (int i = 0; i < n(); ++i)
      if (labels_[i] == label) return i;
    throw std::invalid_argument("unknown vertex label: " + label);
  }
  bool operator==(const GroundSet& o) const { return labels_ == o.labels_; }

 private:
  std::vector<std::string> labels_;
};

// Degree vector m : V -> Z_{>=0}, indexed like the ground set.
using DegreeVector = std::vector<Val>;

inline Val degree_sum(const DegreeVector& m, Mask X) {
  Val s = 0;
  for (int u : elements_of(X)) s += m[static_cast<size_t>(u)];
  return s;
}

// Structured infeasibility evidence, surfaced through exceptions and the CLI
// (exit code 2).
struct InfeasibilityCertificate {
  enum class Kind {
    uncovered_set,     // m(X) < p(X): witness_set, lhs = m(X), rhs = p(X)
    degree_over_max,   // m(u) > K_p: witness_vertex, lhs = m(u), rhs = K_p
    assumption_breach  // e.g. simultaneous-augmentation gap mismatch: lhs/rhs = the two gaps
  } kind = Kind::uncovered_set;
  Mask witness_set = 0;
  int witness_vertex = -1;
  Val lhs = 0;
  Val rhs = 0;
  std::string describe(const GroundSet& ground) const;
};

class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, InfeasibilityCertificate cert)
      : std::runtime_error(what), certificate(cert) {}
  InfeasibilityCertificate certificate;
};

inline std::string mask_to_string(Mask X, const GroundSet& ground) {
  std::string s = "{";
  bool first = true;
  for (int u : elements_of(X)) {
    if (!first) s += ",";
    s += ground.label(u);
    first = false;
  }
  return s + "}";
}

inline std::string InfeasibilityCertificate::describe(const GroundSet& ground) const {
  switch (kind) {
    case Kind::uncovered_set:
      return "m(X) = " + std::to_string(lhs) + " < p(X) = " + std::to_string(rhs) +
             " for X = " + mask_to_string(witness_set, ground);
    case Kind::degree_over_max:
      return "m(" + ground.label(witness_vertex) + ") = " + std::to_string(lhs) +
             " exceeds max p value " + std::to_string(rhs);
    case Kind::assumption_breach:
      return "problem assumption violated: gap " + std::to_string(lhs) +
             " != gap " + std::to_string(rhs);
  }
  return "infeasible";
}

}  // namespace hypercover
