#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "brute.hpp"
#include "hypercover/augmentation.hpp"
#include "hypercover/generator.hpp"
#include "hypercover/set_function.hpp"

using namespace hypercover;

namespace {

std::vector<Val> random_table(int n, Val lo, Val hi, std::mt19937_64& rng) {
  std::vector<Val> t(std::size_t{1} << n);
  for (Val& v : t) v = pick(rng, lo, hi);
  return t;
}

std::vector<brute::Edge> as_brute(const WeightedHypergraph& h) {
  std::vector<brute::Edge> es;
  for (const WeightedEdge& e : h.edges()) es.push_back({e.members, e.weight});
  return es;
}

}  // namespace

TEST_CASE("tabulated functions are plain lookups") {
  SetFunction f = SetFunction::tabulated(2, {0, 2, 2, 0});
  CHECK(f.n() == 2);
  CHECK(f.active() == 0b11u);
  CHECK(f.value(0b01) == 2);
  CHECK(f.value(0b10) == 2);
  CHECK(f.value(0b11) == 0);
  CHECK(f.value(0) == 0);
  CHECK_THROWS_AS(SetFunction::tabulated(2, {0, 1, 2}), std::invalid_argument);
}

TEST_CASE("evaluation outside the active domain is rejected") {
  SetFunction f = SetFunction::tabulated(3, std::vector<Val>(8, 1)).restricted(bit(2));
  CHECK(f.active() == 0b011u);
  CHECK(f.value(0b011) == 1);
  CHECK_THROWS_AS((void)f.value(0b100), std::invalid_argument);
}

TEST_CASE("contraction takes the best lifting into the removed set") {
  std::mt19937_64 rng(41);
  std::vector<Val> t = random_table(3, -5, 9, rng);
  SetFunction f = SetFunction::tabulated(3, t);

  SetFunction same = f.contracted(0);
  for (Mask x = 0; x <= full_mask(3); ++x) CHECK(same.value(x) == t[x]);

  SetFunction g = f.contracted(bit(2));
  CHECK(g.active() == 0b011u);
  CHECK(g.value(0b01) == std::max(t[0b001], t[0b101]));
  CHECK(g.value(0b11) == std::max(t[0b011], t[0b111]));
  CHECK_THROWS_AS((void)f.contracted(0b1000), std::invalid_argument);
}

TEST_CASE("contracting in two steps equals contracting the union at once") {
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 2 + static_cast<int>(rng() % 5);
    std::vector<Val> t = random_table(n, -10, 10, rng);
    SetFunction f = SetFunction::tabulated(n, t);
    Mask z1 = static_cast<Mask>(rng()) & full_mask(n);
    Mask z2 = static_cast<Mask>(rng()) & full_mask(n) & ~z1;
    SetFunction stepped = f.contracted(z1).contracted(z2);
    SetFunction combined = f.contracted(z1 | z2);
    Mask rest = full_mask(n) & ~(z1 | z2);
    for (Mask x = 0; x <= rest; ++x) {
      if (x & ~rest) continue;
      CHECK(stepped.value(x) == combined.value(x));
      CHECK(combined.value(x) == brute::contract_value(t, x, z1 | z2));
    }
  }
}

TEST_CASE("contraction preserves the pairwise demand inequalities") {
  std::mt19937_64 rng(47);
  for (int rep = 0; rep < 10; ++rep) {
    SetFunction p = random_demand(5, 1 + static_cast<Val>(rng() % 4), 0.5, rng);
    REQUIRE(brute::skew_supermodular(p.tabulate(), 5));
    Mask z = static_cast<Mask>(rng()) & full_mask(5);
    SetFunction q = p.contracted(z);
    CHECK(q.is_skew_supermodular());
  }
}

TEST_CASE("restriction shrinks the domain without touching values") {
  std::mt19937_64 rng(53);
  std::vector<Val> t = random_table(4, -6, 6, rng);
  SetFunction f = SetFunction::tabulated(4, t).restricted(bit(1));
  CHECK(f.active() == (full_mask(4) & ~bit(1)));
  for (Mask x = 0; x <= full_mask(4); ++x) {
    if (x & bit(1)) continue;
    CHECK(f.value(x) == t[x]);
  }
}

TEST_CASE("coverage subtraction and pointwise max match table arithmetic") {
  std::mt19937_64 rng(59);
  for (int rep = 0; rep < 15; ++rep) {
    int n = 2 + static_cast<int>(rng() % 3);
    std::vector<Val> ta = random_table(n, -8, 8, rng);
    std::vector<Val> tb = random_table(n, -8, 8, rng);
    WeightedHypergraph h(n);
    h.add_edge(full_mask(n), 2);
    if (n >= 2) h.add_edge(0b11, 1);

    SetFunction a = SetFunction::tabulated(n, ta);
    SetFunction b = SetFunction::tabulated(n, tb);
    SetFunction diff = a.minus_coverage(h);
    SetFunction peak = SetFunction::max_of(a, b);
    std::vector<brute::Edge> es = as_brute(h);
    for (Mask x = 0; x <= full_mask(n); ++x) {
      CHECK(diff.value(x) == ta[x] - brute::coverage(es, x));
      CHECK(peak.value(x) == std::max(ta[x], tb[x]));
    }
  }
}

TEST_CASE("a composed tree evaluates like its tabulated expansion") {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 10; ++rep) {
    int n = 3 + static_cast<int>(rng() % 4);
    std::vector<Val> ta = random_table(n, -9, 9, rng);
    std::vector<Val> tb = random_table(n, -9, 9, rng);
    WeightedHypergraph h(n);
    h.add_edge(bit(0) | bit(n - 1), 3);
    h.add_edge(full_mask(n), 1);
    Mask z = bit(1);

    SetFunction tree = SetFunction::max_of(SetFunction::tabulated(n, ta),
                                           SetFunction::tabulated(n, tb))
                           .minus_coverage(h)
                           .contracted(z);

    // Independent expansion of the same tree, done entirely on tables.
    std::vector<brute::Edge> es = as_brute(h);
    std::vector<Val> expanded(std::size_t{1} << n);
    for (Mask x = 0; x < (Mask{1} << n); ++x)
      expanded[x] = std::max(ta[x], tb[x]) - brute::coverage(es, x);

    Mask rest = full_mask(n) & ~z;
    std::vector<Val> table = tree.tabulate();
    for (Mask x = 0; x <= rest; ++x) {
      if (x & ~rest) continue;
      Val want = brute::contract_value(expanded, x, z);
      CHECK(tree.value(x) == want);
      CHECK(table[x] == want);
    }
    CHECK(is_neg_inf(table[z]));  // entries off the domain are minus-infinity
  }
}

TEST_CASE("max_value: constants, a two-level demand table, random scans") {
  SetFunction zero = SetFunction::tabulated(3, std::vector<Val>(8, 0));
  CHECK(zero.max_value() == 0);

  // Two-level demand on 5 vertices: 15 on proper nonempty subsets, 26 on the
  // full set.
  int n = 5;
  std::vector<Val> t(32, 15);
  t[0] = 0;
  t[31] = 26;
  CHECK(SetFunction::tabulated(n, t).max_value() == 26);

  std::mt19937_64 rng(67);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<Val> r = random_table(6, -50, 50, rng);
    CHECK(SetFunction::tabulated(6, r).max_value() == brute::max_value(r));
  }
}

TEST_CASE("modular functions satisfy the pairwise demand inequalities") {
  std::mt19937_64 rng(71);
  int n = 4;
  std::vector<Val> w(static_cast<std::size_t>(n));
  for (Val& v : w) v = pick(rng, -5, 5);
  std::vector<Val> t(std::size_t{1} << n);
  for (Mask x = 0; x < (Mask{1} << n); ++x) t[x] = brute::set_sum(w, x);
  CHECK(SetFunction::tabulated(n, t).is_skew_supermodular());
}

TEST_CASE("connectivity-deficiency functions pass both structure predicates") {
  std::mt19937_64 rng(73);
  for (int rep = 0; rep < 10; ++rep) {
    SetFunction p = random_demand(5, 1 + static_cast<Val>(rng() % 5), 0.6, rng);
    CHECK(p.is_symmetric());
    CHECK(p.is_skew_supermodular());
    CHECK(brute::symmetric(p.tabulate(), 5));
    CHECK(brute::skew_supermodular(p.tabulate(), 5));
  }
}

TEST_CASE("a crossing pair of high spots breaks both demand inequalities") {
  // Value 1 on {v0,v1} and {v1,v2}, -5 elsewhere: for that crossing pair
  // both the intersection/union and the difference inequalities fail.
  std::vector<Val> t(8, -5);
  t[0b011] = 1;
  t[0b110] = 1;
  CHECK(!SetFunction::tabulated(3, t).is_skew_supermodular());
  CHECK(!brute::skew_supermodular(t, 3));
}

TEST_CASE("structure predicates agree with the table scans on random input") {
  std::mt19937_64 rng(79);
  for (int rep = 0; rep < 40; ++rep) {
    int n = 2 + static_cast<int>(rng() % 3);
    std::vector<Val> t = random_table(n, -2, 3, rng);
    SetFunction f = SetFunction::tabulated(n, t);
    CHECK(f.is_symmetric() == brute::symmetric(t, n));
    CHECK(f.is_skew_supermodular() == brute::skew_supermodular(t, n));
  }
}

TEST_CASE("cut functions are symmetric; rooted demands usually are not") {
  std::mt19937_64 rng(83);
  int n = 4;
  WeightedHypergraph h(n);
  for (int i = 0; i < 5; ++i) {
    Mask e = static_cast<Mask>(rng()) & full_mask(n);
    if (e) h.add_edge(e, 1 + static_cast<Val>(rng() % 3));
  }
  std::vector<Val> cuts(std::size_t{1} << n);
  for (Mask x = 0; x < (Mask{1} << n); ++x) cuts[x] = h.cut(x);
  CHECK(SetFunction::tabulated(n, cuts).is_symmetric());

  // A rooted demand with unequal in/out targets values {v1} at 2 but its
  // complement at 1.
  MixedHypergraph none(3);
  SetFunction rooted = build_p_mixed(none, 0, 2, 1);
  CHECK(rooted.value(bit(1)) == 2);
  CHECK(rooted.value(full_mask(3) & ~bit(1)) == 1);
  CHECK(!rooted.is_symmetric());

  SetFunction sym = symmetrized(rooted);
  CHECK(sym.is_symmetric());
  for (Mask x = 0; x <= full_mask(3); ++x)
    CHECK(sym.value(x) == std::max(rooted.value(x), rooted.value(full_mask(3) & ~x)));
}

TEST_CASE("from_callable owns its captures and only sees the active domain") {
  std::vector<Val> owned = {0, 1, 1, 2};
  SetFunction f = SetFunction::from_callable(2, 0b11, [owned](Mask x) { return owned[x]; });
  owned.clear();  // the callable captured by value, so this must not matter
  CHECK(f.value(0b11) == 2);
  CHECK(f.max_value() == 2);
}
