#include "hypercover/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hypercover {

namespace {

Val y_sum(const std::vector<Val>& y0, Mask x) {
  Val s = 0;
  for (int u : elements_of(x)) s += y0[static_cast<size_t>(u)];
  return s;
}

void check_query_args(Mask domain, Mask s0, Mask t0) {
  if (s0 & t0) throw std::invalid_argument("S0 and T0 must be disjoint");
  if ((s0 | t0) & ~domain)
    throw std::invalid_argument("S0/T0 must lie inside the function domain");
}

// Shared scan: maximize p(Z) + penalty(Z) + y0(Z) over S0 ⊆ Z ⊆ domain∖T0 in
// ascending mask order.
template <typename PenaltyFn>
OracleResult scan_oracle(const SetFunction& p, Mask s0, Mask t0,
                         const std::vector<Val>& y0, PenaltyFn penalty) {
  check_query_args(p.active(), s0, t0);
  const Mask free = p.active() & ~s0 & ~t0;
  OracleResult best;
  for (Mask w = 0;; w = next_submask(w, free)) {
    const Mask z = s0 | w;
    const Val pv = p.value(z);
    const Val obj = val_add(pv, penalty(z) + y_sum(y0, z));
    if (obj > best.value) best = OracleResult{obj, z, pv};
    if (w == free) break;
  }
  return best;
}

}  // namespace

OracleResult max_oracle_sc(const SetFunction& p, const WeightedHypergraph& h,
                           Mask s0, Mask t0, const std::vector<Val>& y0) {
  if (h.n() != p.n()) throw std::invalid_argument("hypergraph ground set mismatch");
  return scan_oracle(p, s0, t0, y0, [&](Mask z) { return -h.cut(z); });
}

OracleResult max_oracle_b(const SetFunction& p, const WeightedHypergraph& h,
                          Mask s0, Mask t0, const std::vector<Val>& y0) {
  if (h.n() != p.n()) throw std::invalid_argument("hypergraph ground set mismatch");
  return scan_oracle(p, s0, t0, y0, [&](Mask z) { return -h.coverage(z); });
}

OracleResult max_oracle_empty(const SetFunction& p, Mask s0, Mask t0,
                              const std::vector<Val>& y0) {
  return scan_oracle(p, s0, t0, y0, [](Mask) { return Val{0}; });
}

std::vector<Mask> minimal_maximizers_oracle(const EmptyOracleFn& oracle,
                                            int n, Mask domain) {
  const std::vector<Val> zero(static_cast<size_t>(n), 0);
  std::vector<Mask> family;
  Mask forbidden = 0;  // smallest vertex of each member found so far

  OracleResult top = oracle(0, 0, zero);
  const Val k = top.value;  // K of the function (y0 = 0)
  Mask x = top.argmax;
  for (;;) {
    // Shrink x to an inclusion-minimal maximizer: S collects vertices proven
    // necessary; forbidding any other vertex must still attain K somewhere
    // inside x, which yields a smaller maximizer to continue from.
    Mask s = 0;
    for (int u = 0; u < n; ++u) {
      if (!has(x, u) || has(s, u)) continue;
      OracleResult r = oracle(s, (domain & ~x) | bit(u), zero);
      if (r.value == k) {
        x = r.argmax;
      } else {
        s |= bit(u);
      }
    }
    const Mask member = s;
    if (member == 0) return {0};  // ∅ attains K: it is the unique minimal maximizer
    for (Mask prior : family)
      if (prior & member)
        throw std::invalid_argument(
            "minimal maximizers are not disjoint: the function is not skew-supermodular");
    family.push_back(member);
    // Restart with only the member's smallest vertex excluded, not the whole
    // member: never excluding all of a member keeps a maximizer that
    // overlaps it visible, so the disjointness check above can fire.
    forbidden |= bit(lowest_bit(member));
    if (forbidden == domain) break;
    OracleResult next = oracle(0, forbidden, zero);
    if (next.value < k) break;  // every maximizer now contains a found member
    x = next.argmax;
  }
  return family;
}

std::vector<Mask> minimal_maximizers(const SetFunction& p) {
  return minimal_maximizers_oracle(
      [&p](Mask s0, Mask t0, const std::vector<Val>& y0) {
        return max_oracle_empty(p, s0, t0, y0);
      },
      p.n(), p.active());
}

Mask minimal_transversal(const std::vector<Mask>& family) {
  Mask t = 0;
  for (Mask member : family) {
    if (member == 0) throw std::invalid_argument("transversal of a family with an empty member");
    t |= bit(lowest_bit(member));
  }
  return t;
}

Frac Frac::of(Val num, Val den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Val g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Frac{num, den};
}

Val Frac::floor() const {
  // den > 0 by construction; C++ division truncates toward zero.
  Val q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

bool operator<(const Frac& a, const Frac& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

RatioResult ratio_maximize(const std::function<Val(Mask)>& f,
                           const std::function<Val(Mask)>& g, Mask domain) {
  const auto g_checked = [&](Mask z) {
    const Val gv = g(z);
    if (gv <= 0) throw std::invalid_argument("ratio maximization needs positive denominators");
    return gv;
  };

  RatioResult result;
  result.argmax = domain;
  result.ratio = Frac::of(f(domain), g_checked(domain));
  for (;;) {
    // Find the set with the largest residual f(Z) - λ·g(Z), comparing the
    // cross-multiplied integer form f(Z)·den - num·g(Z).
    __int128 best_res = 0;
    Mask best_z = 0;
    bool found = false;
    for (Mask z = 0;; z = next_submask(z, domain)) {
      const __int128 res = static_cast<__int128>(f(z)) * result.ratio.den -
                           static_cast<__int128>(result.ratio.num) * g_checked(z);
      if (!found || res > best_res) {
        best_res = res;
        best_z = z;
        found = true;
      }
      if (z == domain) break;
    }
    if (best_res <= 0) return result;  // current λ is the maximum ratio
    ++result.iterations;
    result.argmax = best_z;
    result.ratio = Frac::of(f(best_z), g_checked(best_z));
  }
}

Val alpha4_exhaustive(const std::function<Val(Mask)>& p_eval,
                      const DegreeVector& m, Mask a, Mask domain) {
  Val best = kPosInf;
  for (Mask x = 0;; x = next_submask(x, domain)) {
    const int overlap = popcount(x & a);
    if (overlap >= 2) {
      const Val q = Frac::of(degree_sum(m, x) - p_eval(x), overlap - 1).floor();
      best = std::min(best, q);
    }
    if (x == domain) break;
  }
  return best;
}

Val alpha4_via_ratio(const std::function<Val(Mask)>& p_eval,
                     const DegreeVector& m, Mask a, Mask domain,
                     long* ratio_iterations) {
  // Fix a pair {u,v} ⊆ A∩X and rewrite X = Z ∪ {u,v}: the minimized quantity
  // becomes the negation of (p - m)(Z∪{u,v}) / (1 + |(A∖{u,v})∩Z|), so the
  // overall minimum is ⌊-max over pairs of the maximum ratio⌋.
  bool any = false;
  Frac best;
  for (int u : elements_of(a)) {
    for (int v : elements_of(a)) {
      if (v <= u) continue;
      const Mask uv = bit(u) | bit(v);
      const Mask rest = domain & ~uv;
      RatioResult r = ratio_maximize(
          [&](Mask z) { return p_eval(z | uv) - degree_sum(m, z | uv); },
          [&](Mask z) { return Val{1} + popcount(a & ~uv & z); }, rest);
      if (ratio_iterations) *ratio_iterations += r.iterations;
      if (!any || best < r.ratio) {
        best = r.ratio;
        any = true;
      }
    }
  }
  if (!any) return kPosInf;
  return Frac::of(-best.num, best.den).floor();
}

StackedOracle::StackedOracle(const SetFunction& p1)
    : n_(p1.n()),
      active_(p1.active()),
      base_(p1.tabulate()),
      acc_(p1.n()),
      zero_(static_cast<size_t>(p1.n()), 0) {
  // Lift the base table over any vertices that are already outside the
  // initial domain so that ambient scans below stay valid.
  for (int u : elements_of(full_mask(n_) & ~active_))
    for (Mask w = 0; w < base_.size(); ++w)
      if (!has(w, u)) base_[w] = std::max(base_[w], base_[w | bit(u)]);
}

void StackedOracle::push(Mask a, Val alpha, Mask z) {
  if (a & ~active_) throw std::invalid_argument("hyperedge outside active domain");
  if (z & ~a) throw std::invalid_argument("removed vertices must lie inside the hyperedge");
  if (alpha <= 0) throw std::invalid_argument("hyperedge weight must be positive");
  acc_.add_edge(a, alpha);
  active_ &= ~z;
  table_ready_ = false;
}

void StackedOracle::contract(Mask z) {
  if (z & ~active_) throw std::invalid_argument("contraction outside active domain");
  active_ &= ~z;
  table_ready_ = false;
}

void StackedOracle::ensure_table() const {
  if (table_ready_) return;
  const size_t size = base_.size();

  // Ambient coverage of the accumulated hypergraph via a subset-sum
  // transform: cov(W) = total - Σ{w(e) : e ⊆ V∖W}.
  std::vector<Val> disjoint(size, 0);
  for (const WeightedEdge& e : acc_.edges()) disjoint[e.members] += e.weight;
  for (int u = 0; u < n_; ++u)
    for (Mask w = 0; w < size; ++w)
      if (has(w, u)) disjoint[w] += disjoint[w & ~bit(u)];
  const Val total = acc_.total_weight();

  table_.assign(size, kNegInf);
  const Mask all = full_mask(n_);
  for (Mask w = 0; w < size; ++w)
    table_[w] = val_add(base_[w], -(total - disjoint[all & ~w]));

  // Fold the removed vertices: afterwards table_[X] = max over liftings of X
  // by removed vertices, i.e. the contracted function, for every X ⊆ active.
  for (int u : elements_of(all & ~active_))
    for (Mask w = 0; w < size; ++w)
      if (!has(w, u)) table_[w] = std::max(table_[w], table_[w | bit(u)]);
  table_ready_ = true;
}

OracleResult StackedOracle::query(Mask s0, Mask t0, const std::vector<Val>& y0) const {
  check_query_args(active_, s0, t0);
  ensure_table();
  const Mask free = active_ & ~s0 & ~t0;
  OracleResult best;
  for (Mask w = 0;; w = next_submask(w, free)) {
    const Mask z = s0 | w;
    const Val obj = val_add(table_[z], y_sum(y0, z));
    if (obj > best.value) best = OracleResult{obj, z, table_[z]};
    if (w == free) break;
  }
  return best;
}

OracleResult StackedOracle::query(Mask s0, Mask t0) const {
  return query(s0, t0, zero_);
}

Val StackedOracle::eval(Mask x) const {
  if (x & ~active_) throw std::invalid_argument("subset outside active domain");
  ensure_table();
  return table_[x];
}

Val StackedOracle::K() const { return query(0, 0).value; }

EmptyOracleFn StackedOracle::as_empty_oracle() const {
  return [this](Mask s0, Mask t0, const std::vector<Val>& y0) {
    return query(s0, t0, y0);
  };
}

}  // namespace hypercover
