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

// 15 for proper nonempty subsets of five vertices, 26 on the full set: the
// instance where every solver choice is forced down to tie-breaks.
CoverInstance two_level_instance() {
  std::vector<Val> t(32, 15);
  t[0] = 0;
  t[31] = 26;
  return {SetFunction::tabulated(5, t), DegreeVector(5, 15)};
}

}  // namespace

TEST_CASE("the two-level instance resolves to the same three edges every run") {
  CoverInstance inst = two_level_instance();
  CoverOptions opts;
  opts.diagnostics = true;
  auto [h, trace] = weak_cover_basic(inst, opts);

  // Every choice below follows from the smallest-index tie rules, so the
  // exact output is stable: first the lone transversal vertex v0 is loaded
  // to the complement's demand, then the other four, then one edge over
  // everything retires the rest.
  REQUIRE(h.edge_count() == 3);
  CHECK(h.edges()[0] == WeightedEdge{0b00001, 11});
  CHECK(h.edges()[1] == WeightedEdge{0b11110, 11});
  CHECK(h.edges()[2] == WeightedEdge{0b11111, 4});
  CHECK(h.total_weight() == 26);
  for (Val d : h.degrees()) CHECK(d == 15);

  REQUIRE(trace.steps.size() == 3);
  CHECK(trace.removed_zero == 0u);
  CHECK(trace.k1 == 26);
  CHECK(trace.m1_total == 75);

  const CoverStep& s0 = trace.steps[0];
  CHECK(s0.k == 26);
  CHECK(s0.maximizer_family == std::vector<Mask>{0b11111});
  CHECK(s0.transversal == 0b00001u);
  CHECK(s0.forced == 0u);
  CHECK(s0.a == 0b00001u);
  CHECK(s0.alpha == 11);
  CHECK(s0.alpha_parts[0] == 15);
  CHECK(s0.alpha_parts[1] == 11);
  CHECK(s0.alpha_parts[2] == 11);
  CHECK(s0.attained == 0b110u);
  CHECK(s0.z == 0u);

  const CoverStep& s1 = trace.steps[1];
  CHECK(s1.k == 15);
  CHECK(s1.forced == 0b11110u);
  CHECK(s1.a == 0b11110u);
  CHECK(s1.alpha == 11);
  CHECK(s1.z == 0u);

  const CoverStep& s2 = trace.steps[2];
  CHECK(s2.k == 4);
  CHECK(s2.a == 0b11111u);
  CHECK(s2.alpha == 4);
  CHECK(s2.alpha_parts[2] == kPosInf);  // no vertex is left outside A
  CHECK(s2.attained == 0b011u);
  CHECK(s2.z == 0b11111u);

  CHECK(verify_cover(inst.p, inst.m, h, CoverFlavor::weak, CoverMode::basic).ok());
  CHECK(audit_trace(trace).ok());
}

TEST_CASE("an all-zero degree vector contracts everything away") {
  CoverInstance inst{SetFunction::tabulated(3, std::vector<Val>(8, 0)),
                     DegreeVector(3, 0)};
  auto [h, trace] = weak_cover_basic(inst);
  CHECK(h.empty());
  CHECK(trace.steps.empty());
  CHECK(trace.removed_zero == full_mask(3));
}

TEST_CASE("unit demands over an empty graph force the one full edge") {
  WeightedHypergraph none(3);
  std::vector<std::vector<Val>> r(3, std::vector<Val>(3, 1));
  for (int i = 0; i < 3; ++i) r[i][i] = 0;
  CoverInstance inst{build_p_local(none, r), DegreeVector(3, 1)};
  auto [h, trace] = weak_cover_basic(inst);
  REQUIRE(h.edge_count() == 1);
  CHECK(h.edges()[0] == WeightedEdge{0b111, 1});
  CHECK(trace.steps.size() == 1);
}

TEST_CASE("feasibility: set coverage first, degree ceiling second") {
  CHECK(check_feasibility(two_level_instance()));

  CoverInstance uncovered = two_level_instance();
  uncovered.m.assign(5, 0);
  InfeasibilityCertificate cert;
  CHECK(!check_feasibility(uncovered, &cert));
  CHECK(cert.kind == InfeasibilityCertificate::Kind::uncovered_set);
  CHECK(cert.witness_set == full_mask(5));
  CHECK(cert.lhs == 0);
  CHECK(cert.rhs == 26);

  CoverInstance over = two_level_instance();
  over.m[0] = 27;
  CHECK(!check_feasibility(over, &cert));
  CHECK(cert.kind == InfeasibilityCertificate::Kind::degree_over_max);
  CHECK(cert.witness_vertex == 0);
  CHECK(cert.lhs == 27);
  CHECK(cert.rhs == 26);
}

TEST_CASE("feasibility agrees with the exhaustive scan on random instances") {
  std::mt19937_64 rng(307);
  for (int rep = 0; rep < 60; ++rep) {
    int n = 2 + static_cast<int>(rng() % 4);
    Val k = 1 + static_cast<Val>(rng() % 4);
    SetFunction p = random_demand(n, k, 0.5, rng);
    DegreeVector m(static_cast<std::size_t>(n));
    for (Val& v : m) v = pick(rng, 0, k + 2);
    std::vector<Val> t = p.tabulate();
    auto p_eval = [&](Mask z) { return t[z]; };
    CHECK(check_feasibility({p, m}) == brute::feasible(p_eval, m, full_mask(n)));
  }
}

TEST_CASE("infeasible instances raise the certificate as an exception") {
  CoverInstance inst = two_level_instance();
  inst.m[2] = 40;
  CHECK_THROWS_AS((void)weak_cover_basic(inst), InfeasibleError);
  try {
    (void)weak_cover_basic(inst);
  } catch (const InfeasibleError& e) {
    CHECK(e.certificate.kind == InfeasibilityCertificate::Kind::degree_over_max);
    CHECK(e.certificate.lhs == 40);
    CHECK(e.certificate.rhs == 26);
  }
}

TEST_CASE("oversized ground sets are refused up front") {
  CoverOptions opts;
  opts.cap = 3;
  CoverInstance inst{SetFunction::tabulated(4, std::vector<Val>(16, 0)),
                     DegreeVector(4, 0)};
  CHECK_THROWS_AS((void)weak_cover_basic(inst, opts), std::runtime_error);
}

TEST_CASE("random feasible instances: output properties and trace audit") {
  std::mt19937_64 rng(311);
  for (int rep = 0; rep < 60; ++rep) {
    int n = 2 + static_cast<int>(rng() % 6);
    Val k = 1 + static_cast<Val>(rng() % 5);
    SetFunction p = random_demand(n, k, 0.4 + 0.1 * static_cast<double>(rng() % 5), rng);
    DegreeVector m = random_feasible_degrees(p, rng);
    CoverOptions opts;
    opts.diagnostics = true;
    auto [h, trace] = weak_cover_basic({p, m}, opts);

    std::vector<brute::Edge> es = as_brute(h);
    std::vector<Val> t = p.tabulate();
    for (Mask x = 0; x <= full_mask(n); ++x)
      CHECK(brute::coverage(es, x) >= t[x]);
    CHECK(brute::degrees(es, n) == m);
    CHECK(brute::total(es) == brute::max_value(t));
    CHECK(static_cast<int>(h.edge_count()) <= 4 * n - 1);
    CHECK(static_cast<int>(trace.steps.size()) <= 4 * n - 1);

    CHECK(verify_cover(p, m, h, CoverFlavor::weak, CoverMode::basic).ok());
    VerificationReport audit = audit_trace(trace);
    INFO(audit.summary());
    CHECK(audit.ok());

    // The minimal-maximizer families of all calls together never cross.
    std::vector<Mask> cumulative;
    for (const CoverStep& s : trace.steps)
      cumulative.insert(cumulative.end(), s.maximizer_family.begin(),
                        s.maximizer_family.end());
    CHECK(check_laminar(cumulative));
    CHECK(brute::laminar(cumulative));
  }
}

TEST_CASE("each call leaves enough degree room for its own hyperedge") {
  // Per call: m_i(X) >= p_i(X) + alpha * (|A ∩ X| - 1) on every subset, the
  // inequality that makes the emitted weight safe.
  std::mt19937_64 rng(313);
  for (int rep = 0; rep < 25; ++rep) {
    int n = 2 + static_cast<int>(rng() % 5);
    SetFunction p = random_demand(n, 1 + static_cast<Val>(rng() % 4), 0.5, rng);
    DegreeVector m = random_feasible_degrees(p, rng);
    CoverOptions opts;
    opts.diagnostics = true;
    auto [h, trace] = weak_cover_basic({p, m}, opts);
    (void)h;
    for (const CoverStep& s : trace.steps) {
      REQUIRE(s.p_tables.size() == 1);
      for (Mask x = 0; x <= s.active; ++x) {
        if (x & ~s.active) continue;
        Val overlap = popcount(x & s.a);
        CHECK(brute::set_sum(s.m_values, x) >=
              s.p_tables[0][x] + s.alpha * (overlap - 1));
      }
    }
  }
}
