#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "brute.hpp"
#include "hypercover/augmentation.hpp"
#include "hypercover/cover.hpp"
#include "hypercover/generator.hpp"
#include "hypercover/verify.hpp"

using namespace hypercover;

namespace {

std::vector<brute::Edge> as_brute(const WeightedHypergraph& h) {
  std::vector<brute::Edge> es;
  for (const WeightedEdge& e : h.edges()) es.push_back({e.members, e.weight});
  return es;
}

int alpha5_calls(const CoverTrace& trace) {
  int count = 0;
  for (const CoverStep& s : trace.steps)
    if (s.attained & (1u << 4)) ++count;
  return count;
}

void check_sizes(const WeightedHypergraph& h, Val m_total, Val k) {
  Val lo = m_total / k;
  Val hi = (m_total + k - 1) / k;
  for (const WeightedEdge& e : h.edges()) {
    CHECK(popcount(e.members) >= lo);
    CHECK(popcount(e.members) <= hi);
  }
}

}  // namespace

TEST_CASE("the fifth weight candidate follows the rounding bracket") {
  CHECK(compute_alpha5(75, 26, 3) == 23);  // ceiling-sized support: the remainder
  CHECK(compute_alpha5(75, 26, 2) == 3);   // floor-sized support: the complement
  CHECK(compute_alpha5(52, 26, 2) == kPosInf);  // exact multiple: no constraint
}

TEST_CASE("an exact total forces perfectly uniform edges") {
  // Demand 2 between all pairs of four vertices with degrees all 2: the
  // total row pins x(V) to 8/2 = 4, so the only admissible edge is V.
  WeightedHypergraph none(4);
  std::vector<std::vector<Val>> r(4, std::vector<Val>(4, 2));
  for (int i = 0; i < 4; ++i) r[i][i] = 0;
  UniformCoverInstance inst{{build_p_local(none, r)}, DegreeVector(4, 2), 0};
  auto [h, trace] = weak_cover_uniform(inst);
  REQUIRE(h.edge_count() == 1);
  CHECK(h.edges()[0] == WeightedEdge{0b1111, 2});
  CHECK(alpha5_calls(trace) == 0);
}

TEST_CASE("the two-level instance: sizes two and three, exact degrees") {
  std::vector<Val> t(32, 15);
  t[0] = 0;
  t[31] = 26;
  SetFunction p = SetFunction::tabulated(5, t);
  DegreeVector m(5, 15);
  CoverOptions opts;
  opts.diagnostics = true;
  auto [h, trace] = weak_cover_uniform({{p}, m, 0}, opts);

  CHECK(h.total_weight() == 26);
  for (Val d : h.degrees()) CHECK(d == 15);
  check_sizes(h, 75, 26);
  CHECK(static_cast<int>(h.edge_count()) <= 55);
  CHECK(static_cast<int>(trace.steps.size()) <= 56);
  CHECK(alpha5_calls(trace) <= 1);

  std::vector<brute::Edge> es = as_brute(h);
  for (Mask x = 0; x <= full_mask(5); ++x) CHECK(brute::coverage(es, x) >= t[x]);

  CHECK(verify_cover(p, m, h, CoverFlavor::weak, CoverMode::uniform).ok());
  VerificationReport audit = audit_trace(trace);
  INFO(audit.summary());
  CHECK(audit.ok());
  DiagnosticsReport diag = trace_diagnostics(trace);
  for (const std::string& v : diag.violations) INFO(v);
  CHECK(diag.ok());
}

TEST_CASE("component counts other than one or two are rejected") {
  CHECK_THROWS_AS((void)weak_cover_uniform({{}, DegreeVector(3, 1), 0}),
                  std::invalid_argument);
  SetFunction p = SetFunction::tabulated(2, {0, 1, 1, 0});
  CHECK_THROWS_AS((void)weak_cover_uniform({{p, p, p}, DegreeVector(2, 1), 0}),
                  std::invalid_argument);
}

TEST_CASE("zero-degree vertices are contracted before the first call") {
  WeightedHypergraph none(3);
  std::vector<std::vector<Val>> r(3, std::vector<Val>(3, 0));
  r[0][1] = r[1][0] = 2;
  SetFunction p = build_p_local(none, r);
  DegreeVector m = {2, 2, 0};
  auto [h, trace] = weak_cover_uniform({{p}, m, 0});
  CHECK(trace.removed_zero == bit(2));
  std::vector<brute::Edge> es = as_brute(h);
  std::vector<Val> t = p.tabulate();
  for (Mask x = 0; x <= full_mask(3); ++x) CHECK(brute::coverage(es, x) >= t[x]);
  CHECK(brute::degrees(es, 3) == m);
}

TEST_CASE("random single-demand instances: properties, audit, seeding chain") {
  std::mt19937_64 rng(401);
  for (int rep = 0; rep < 40; ++rep) {
    int n = 2 + static_cast<int>(rng() % 5);
    Val k = 1 + static_cast<Val>(rng() % 5);
    SetFunction p = random_demand(n, k, 0.5, rng);
    DegreeVector m = random_feasible_degrees(p, rng);
    CoverOptions opts;
    opts.diagnostics = true;
    auto [h, trace] = weak_cover_uniform({{p}, m, 0}, opts);

    std::vector<brute::Edge> es = as_brute(h);
    std::vector<Val> t = p.tabulate();
    for (Mask x = 0; x <= full_mask(n); ++x)
      CHECK(brute::coverage(es, x) >= t[x]);
    CHECK(brute::degrees(es, n) == m);
    CHECK(brute::total(es) == brute::max_value(t));
    CHECK(static_cast<int>(h.edge_count()) <= 11 * n);
    CHECK(static_cast<int>(trace.steps.size()) <= 11 * n + 1);
    if (trace.m1_total > 0) check_sizes(h, trace.m1_total, trace.k1);
    CHECK(alpha5_calls(trace) <= 1);

    // Each call seeds the next objective with the surviving support.
    for (std::size_t i = 1; i < trace.steps.size(); ++i)
      CHECK(trace.steps[i].j ==
            (trace.steps[i - 1].a & ~trace.steps[i - 1].z));

    CHECK(verify_cover(p, m, h, CoverFlavor::weak, CoverMode::uniform).ok());
    VerificationReport audit = audit_trace(trace);
    INFO(audit.summary());
    CHECK(audit.ok());
    DiagnosticsReport diag = trace_diagnostics(trace);
    for (const std::string& v : diag.violations) INFO(v);
    CHECK(diag.ok());
  }
}

TEST_CASE("two demands with a shared maximum are covered simultaneously") {
  std::mt19937_64 rng(409);
  for (int rep = 0; rep < 25; ++rep) {
    int n = 2 + static_cast<int>(rng() % 4);
    Val k = 1 + static_cast<Val>(rng() % 4);
    SetFunction q = random_demand(n, k, 0.5, rng);
    SetFunction r = random_demand(n, k, 0.5, rng);
    DegreeVector m = random_feasible_degrees(SetFunction::max_of(q, r), rng);
    CoverOptions opts;
    opts.diagnostics = true;
    auto [h, trace] = weak_cover_uniform({{q, r}, m, 0}, opts);

    std::vector<brute::Edge> es = as_brute(h);
    std::vector<Val> tq = q.tabulate();
    std::vector<Val> tr = r.tabulate();
    for (Mask x = 0; x <= full_mask(n); ++x) {
      CHECK(brute::coverage(es, x) >= tq[x]);
      CHECK(brute::coverage(es, x) >= tr[x]);
    }
    CHECK(brute::degrees(es, n) == m);
    CHECK(brute::total(es) == k);
    CHECK(static_cast<int>(h.edge_count()) <= 14 * n * n - 1);
    if (trace.m1_total > 0) check_sizes(h, trace.m1_total, trace.k1);

    CHECK(verify_cover(q, m, h, CoverFlavor::weak, CoverMode::uniform_pair).ok());
    CHECK(verify_cover(r, m, h, CoverFlavor::weak, CoverMode::uniform_pair).ok());
    VerificationReport audit = audit_trace(trace);
    INFO(audit.summary());
    CHECK(audit.ok());
    DiagnosticsReport diag = trace_diagnostics(trace);
    for (const std::string& v : diag.violations) INFO(v);
    CHECK(diag.ok());
  }
}

TEST_CASE("component pairs with unequal maxima are rejected up front") {
  // The simultaneous guarantee prices both components at the same total
  // weight K, so differing maxima cannot be covered together.
  std::mt19937_64 rng(419);
  SetFunction q = random_demand(4, 3, 0.5, rng);
  SetFunction r = random_demand(4, 1, 0.5, rng);
  DegreeVector m = random_feasible_degrees(SetFunction::max_of(q, r), rng);
  CHECK_THROWS_AS((void)weak_cover_uniform({{q, r}, m, 0}),
                  std::invalid_argument);

  // A second component that reaches the same maximum pairs fine.
  SetFunction r3 = random_demand(4, 3, 0.5, rng);
  REQUIRE(r3.max_value() == q.max_value());
  DegreeVector m3 = random_feasible_degrees(SetFunction::max_of(q, r3), rng);
  auto [h, trace] = weak_cover_uniform({{q, r3}, m3, 0});
  (void)trace;
  std::vector<brute::Edge> es = as_brute(h);
  for (Mask x = 0; x <= full_mask(4); ++x) {
    CHECK(brute::coverage(es, x) >= q.value(x));
    CHECK(brute::coverage(es, x) >= r3.value(x));
  }
  CHECK(brute::total(es) == 3);
}
