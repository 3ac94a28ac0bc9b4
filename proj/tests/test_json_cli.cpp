#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "brute.hpp"
#include "hypercover/commands.hpp"
#include "hypercover/cover.hpp"
#include "hypercover/generator.hpp"
#include "hypercover/json_io.hpp"
#include "hypercover/verify.hpp"

using namespace hypercover;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "hypercover_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_scratch(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// The commands print to the real streams; capture both so the test log stays
// readable and the messages themselves can be asserted on.
struct CaptureStd {
  std::ostringstream out, err;
  std::streambuf* saved_out;
  std::streambuf* saved_err;
  CaptureStd()
      : saved_out(std::cout.rdbuf(out.rdbuf())),
        saved_err(std::cerr.rdbuf(err.rdbuf())) {}
  ~CaptureStd() {
    std::cout.rdbuf(saved_out);
    std::cerr.rdbuf(saved_err);
  }
};

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

CoverInstance two_level(Val scale = 1) {
  std::vector<Val> t(32, 15 * scale);
  t[0] = 0;
  t[31] = 26 * scale;
  return {SetFunction::tabulated(5, std::move(t)),
          DegreeVector(5, 15 * scale)};
}

}  // namespace

TEST_CASE("instance files survive a parse round trip byte for byte") {
  for (const char* kind :
       {"cover", "local_ca", "simul_ca", "node_to_area", "mixed_ca"}) {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      for (bool feasible : {false, true}) {
        GenOptions gen;
        gen.kind = kind;
        gen.n = 4;
        gen.seed = seed;
        gen.feasible = feasible;
        const std::string text = serialize_instance(generate_instance(gen));
        CAPTURE(kind);
        CAPTURE(seed);
        const InstanceFile parsed = parse_instance(text);
        CHECK(serialize_instance(parsed) == text);
      }
    }
  }
}

TEST_CASE("values beyond 2^53 travel as decimal strings and round-trip") {
  const Val big = Val{3} << 55;
  CoverFileInstance inst{{SetFunction::tabulated(2, {0, big, big, big + 1})},
                         {big, big}};
  InstanceFile file{GroundSet::indexed(2), inst};
  const std::string text = serialize_instance(file);
  CHECK(contains(text, "\"" + std::to_string(big) + "\""));
  CHECK(serialize_instance(parse_instance(text)) == text);

  const InstanceFile reparsed = parse_instance(text);
  const auto& back = std::get<CoverFileInstance>(reparsed.payload);
  CHECK(back.components[0].value(0b11) == big + 1);
  CHECK(back.m[0] == big);

  // Oversized plain numbers are rejected rather than silently rounded.
  const std::string lossy = R"({"kind": "cover", "ground": ["a", "b"],
    "functions": [{"values": {"0": 0, "1": 0, "2": 0, "3": 36028797018963970}}],
    "m": [0, 0]})";
  CHECK_THROWS_WITH_AS((void)parse_instance(lossy),
                       doctest::Contains("written as strings"),
                       std::runtime_error);
}

TEST_CASE("schema violations all fail loudly with a located message") {
  GenOptions gen;
  gen.kind = "cover";
  gen.n = 3;
  gen.seed = 4;
  gen.feasible = true;
  const std::string good = serialize_instance(generate_instance(gen));

  CHECK_THROWS_WITH_AS((void)parse_instance("not json at all"),
                       doctest::Contains("invalid JSON"), std::runtime_error);
  CHECK_THROWS_WITH_AS((void)parse_instance("[1,2,3]"),
                       doctest::Contains("expected a JSON object"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS((void)parse_instance(R"({"kind": "sudoku"})"),
                       doctest::Contains("unknown instance kind"),
                       std::runtime_error);

  {
    std::string t = good;
    t.insert(t.find("\"kind\""), "\"surprise\": 1,\n  ");
    CHECK_THROWS_WITH_AS((void)parse_instance(t),
                         doctest::Contains("unknown key"), std::runtime_error);
  }
  CHECK_THROWS_WITH_AS(
      (void)parse_instance(
          R"({"kind": "cover", "ground": ["a", "a"], "functions": [], "m": []})"),
      doctest::Contains("duplicate vertex"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      (void)parse_instance(
          R"({"kind": "cover", "ground": ["a"],
              "functions": [{"values": {"0": 0}}], "m": [1]})"),
      doctest::Contains("expected exactly 2 subset values"),
      std::runtime_error);
  CHECK_THROWS_WITH_AS(
      (void)parse_instance(
          R"({"kind": "cover", "ground": ["a"],
              "functions": [{"values": {"0": 0, "7": 1}}], "m": [1]})"),
      doctest::Contains("not a subset mask"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      (void)parse_instance(
          R"({"kind": "local_ca", "m": [0, 0],
              "graph": {"vertices": ["a", "b"], "edges": []},
              "targets": [{"u": "a", "v": "c", "r": 1}]})"),
      doctest::Contains("unknown vertex"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      (void)parse_instance(
          R"({"kind": "mixed_ca", "root": "a", "k": 1, "l": 0, "m": [0],
              "graph": {"vertices": ["a"], "edges": []}})"),
      doctest::Contains("k and l must be positive"), std::runtime_error);
}

TEST_CASE("set function files round-trip with their ground set") {
  std::mt19937_64 rng(701);
  std::vector<Val> t(16);
  for (Val& v : t) v = pick(rng, -5, 5);
  t[5] = Val{5} << 54;
  SetFunction f = SetFunction::tabulated(4, t);
  GroundSet ground({"alpha", "beta", "gamma", "delta"});
  const std::string text = serialize_set_function(f, ground);
  GroundSet back_ground;
  SetFunction back = parse_set_function(text, &back_ground);
  CHECK(back_ground == ground);
  for (Mask x = 0; x < 16; ++x) CHECK(back.value(x) == f.value(x));
  CHECK(serialize_set_function(back, back_ground) == text);

  CHECK_THROWS_AS(
      (void)serialize_set_function(f.restricted(0b0111), ground),
      std::invalid_argument);
}

TEST_CASE("solution files carry a checked total and vertex list") {
  GroundSet ground = GroundSet::indexed(3);
  WeightedHypergraph h(3);
  h.add_edge(0b011, 2);
  h.add_edge(0b111, Val{1} << 54);
  const std::string text = serialize_solution(h, ground);
  CHECK(parse_solution(text, ground) == h);
  CHECK(serialize_solution(parse_solution(text, ground), ground) == text);

  CHECK_THROWS_WITH_AS((void)parse_solution(text, GroundSet::indexed(4)),
                       doctest::Contains("vertex list differs"),
                       std::runtime_error);
  std::string forged = text;
  const std::string want = "\"" + std::to_string((Val{1} << 54) + 2) + "\"";
  REQUIRE(contains(forged, want));
  forged.replace(forged.find(want), want.size(),
                 "\"" + std::to_string((Val{1} << 54) + 3) + "\"");
  CHECK_THROWS_WITH_AS((void)parse_solution(forged, ground),
                       doctest::Contains("does not match the edges"),
                       std::runtime_error);
}

TEST_CASE("traces serialize to JSON lines and back without loss") {
  CoverOptions diag;
  diag.diagnostics = true;
  CoverInstance inst = two_level();

  for (int route = 0; route < 3; ++route) {
    CoverTrace trace;
    if (route == 0) {
      trace = weak_cover_basic(inst, diag).second;
    } else if (route == 1) {
      trace = weak_cover_uniform({{inst.p}, inst.m, 0}, diag).second;
    } else {
      trace = weak_cover_uniform({{inst.p, inst.p}, inst.m, 0}, diag).second;
    }
    CAPTURE(route);
    const std::string text = trace_to_jsonl(trace);
    const CoverTrace back = parse_trace_jsonl(text);
    CHECK(trace_to_jsonl(back) == text);
    VerificationReport audit = audit_trace(back);
    INFO(audit.summary());
    CHECK(audit.ok());
  }

  // Without diagnostics the table fields must be absent, and a header that
  // promises more calls than it has is rejected.
  const CoverTrace lean = weak_cover_basic(inst).second;
  const std::string text = trace_to_jsonl(lean);
  CHECK(!contains(text, "p_tables"));
  CHECK(trace_to_jsonl(parse_trace_jsonl(text)) == text);
  const std::string truncated = text.substr(0, text.rfind("{\"a\""));
  CHECK_THROWS_WITH_AS((void)parse_trace_jsonl(truncated),
                       doctest::Contains("calls does not match"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS((void)parse_trace_jsonl(""),
                       doctest::Contains("no JSON lines"), std::runtime_error);
}

TEST_CASE("huge demands keep exact arithmetic through solve and trace") {
  const Val scale = Val{1} << 49;
  CoverInstance inst = two_level(scale);
  auto [h, trace] = weak_cover_basic(inst);
  CHECK(h.total_weight() == 26 * scale);
  const std::string text = trace_to_jsonl(trace);
  CHECK(contains(text, "\"" + std::to_string(26 * scale) + "\""));
  const CoverTrace back = parse_trace_jsonl(text);
  CHECK(trace_to_jsonl(back) == text);
  CHECK(back.k1 == 26 * scale);
  CHECK(audit_trace(back).ok());
}

TEST_CASE("generation is seed-stable") {
  GenArgs a;
  a.kind = "local_ca";
  a.n = 5;
  a.seed = 99;
  a.feasible = true;
  a.out_path = (scratch_dir() / "gen_a.json").string();
  GenArgs b = a;
  b.out_path = (scratch_dir() / "gen_b.json").string();
  GenArgs c = a;
  c.seed = 100;
  c.out_path = (scratch_dir() / "gen_c.json").string();
  {
    CaptureStd cap;
    REQUIRE(cmd_gen(a) == 0);
    REQUIRE(cmd_gen(b) == 0);
    REQUIRE(cmd_gen(c) == 0);
  }
  const std::string ta = slurp(a.out_path);
  CHECK(ta == slurp(b.out_path));
  CHECK(ta != slurp(c.out_path));
  CHECK(std::holds_alternative<LocalCAInstance>(parse_instance(ta).payload));

  GenArgs bad = a;
  bad.kind = "sudoku";
  CaptureStd cap;
  CHECK(cmd_gen(bad) == 1);
  CHECK(contains(cap.err.str(), "error:"));
}

TEST_CASE("solve, write, verify: the shipping pipeline end to end") {
  GenArgs gen;
  gen.kind = "cover";
  gen.n = 5;
  gen.seed = 17;
  gen.feasible = true;
  gen.out_path = (scratch_dir() / "pipeline_instance.json").string();
  {
    CaptureStd cap;
    REQUIRE(cmd_gen(gen) == 0);
  }

  SolveArgs solve;
  solve.paths = {gen.out_path};
  solve.mode = "uniform";
  solve.diagnostics = true;
  solve.out_path = (scratch_dir() / "pipeline_solution.json").string();
  solve.trace_path = (scratch_dir() / "pipeline_trace.jsonl").string();
  {
    CaptureStd cap;
    REQUIRE(cmd_solve(solve) == 0);
    CHECK(contains(cap.out.str(), "solved:"));
  }

  const InstanceFile file = load_instance(gen.out_path);
  const WeightedHypergraph h =
      parse_solution(slurp(solve.out_path), file.ground);
  CHECK(!h.empty());
  const CoverTrace trace = parse_trace_jsonl(slurp(solve.trace_path));
  CHECK(audit_trace(trace).ok());
  CHECK(trace_diagnostics(trace).ok());

  VerifyArgs verify;
  verify.instance_path = gen.out_path;
  verify.solution_path = solve.out_path;
  verify.mode = "uniform";
  {
    CaptureStd cap;
    CHECK(cmd_verify(verify) == 0);
    CHECK(contains(cap.out.str(), "\"ok\": true"));
  }

  // A dropped edge parses fine but fails verification with exit 1.
  WeightedHypergraph crippled(file.ground.n());
  for (std::size_t i = 1; i < h.edges().size(); ++i)
    crippled.add_edge(h.edges()[i].members, h.edges()[i].weight);
  write_scratch("pipeline_bad_solution.json",
                serialize_solution(crippled, file.ground));
  VerifyArgs bad = verify;
  bad.solution_path = (scratch_dir() / "pipeline_bad_solution.json").string();
  {
    CaptureStd cap;
    CHECK(cmd_verify(bad) == 1);
    CHECK(contains(cap.out.str(), "\"ok\": false"));
  }
}

TEST_CASE("solve exit codes: infeasible 2, errors 1, batch takes the worst") {
  // Degrees above the maximum demand are infeasible with a certificate.
  CoverInstance bad = two_level();
  bad.m = DegreeVector(5, 27);
  const fs::path infeasible = write_scratch(
      "infeasible.json",
      serialize_instance({GroundSet::indexed(5),
                          CoverFileInstance{{bad.p}, bad.m}}));
  const fs::path malformed = write_scratch("malformed.json", "{oops");
  GenArgs gen;
  gen.kind = "cover";
  gen.n = 4;
  gen.seed = 23;
  gen.feasible = true;
  gen.out_path = (scratch_dir() / "good.json").string();
  {
    CaptureStd cap;
    REQUIRE(cmd_gen(gen) == 0);
  }

  {
    SolveArgs args;
    args.paths = {infeasible.string()};
    CaptureStd cap;
    CHECK(cmd_solve(args) == 2);
    CHECK(contains(cap.out.str(), "infeasible:"));
    CHECK(contains(cap.out.str(), "certificate:"));
  }
  {
    SolveArgs args;
    args.paths = {malformed.string()};
    CaptureStd cap;
    CHECK(cmd_solve(args) == 1);
    CHECK(contains(cap.err.str(), "invalid JSON"));
  }
  {
    SolveArgs args;
    args.paths = {gen.out_path, infeasible.string()};
    CaptureStd cap;
    CHECK(cmd_solve(args) == 2);
  }
  {
    SolveArgs args;
    args.paths = {gen.out_path, infeasible.string(), malformed.string()};
    args.jobs = 3;
    CaptureStd cap;
    CHECK(cmd_solve(args) == 1);
  }
  {
    SolveArgs args;  // no input at all
    CaptureStd cap;
    CHECK(cmd_solve(args) == 1);
  }
  {
    SolveArgs args;  // per-file outputs make no sense for a batch
    args.paths = {gen.out_path, infeasible.string()};
    args.out_path = (scratch_dir() / "nope.json").string();
    CaptureStd cap;
    CHECK(cmd_solve(args) == 1);
    CHECK(contains(cap.err.str(), "single instance file"));
  }
}

TEST_CASE("the enumeration cap gates every entry point") {
  GenArgs gen;
  gen.kind = "cover";
  gen.n = 5;
  gen.seed = 31;
  gen.feasible = true;
  gen.out_path = (scratch_dir() / "cap_instance.json").string();
  {
    CaptureStd cap;
    REQUIRE(cmd_gen(gen) == 0);
  }

  SolveArgs solve;
  solve.paths = {gen.out_path};
  {
    SolveArgs tight = solve;
    tight.cap = 3;
    CaptureStd cap;
    CHECK(cmd_solve(tight) == 1);
    CHECK(contains(cap.err.str(), "exceeds the enumeration cap"));
  }
  {
    SolveArgs raised = solve;
    raised.cap = kDefaultCap + 2;
    CaptureStd cap;
    CHECK(cmd_solve(raised) == 1);
    CHECK(contains(cap.err.str(), "--accept-exponential-cost"));
    raised.cap_ack = true;
    CHECK(cmd_solve(raised) == 0);
  }
  {
    SolveArgs silly = solve;
    silly.cap = kHardCap + 1;
    silly.cap_ack = true;
    CaptureStd cap;
    CHECK(cmd_solve(silly) == 1);
    CHECK(contains(cap.err.str(), "unsupported"));
  }
  {
    ::setenv("HYPERCOVER_CAP", "3", 1);
    CaptureStd cap;
    const int rc = cmd_solve(solve);
    ::unsetenv("HYPERCOVER_CAP");
    CHECK(rc == 1);
    CHECK(contains(cap.err.str(), "exceeds the enumeration cap"));
  }
  {
    ::setenv("HYPERCOVER_CAP", "six", 1);
    CaptureStd cap;
    const int rc = cmd_solve(solve);
    ::unsetenv("HYPERCOVER_CAP");
    CHECK(rc == 1);
    CHECK(contains(cap.err.str(), "not an integer"));
  }
  {
    VerifyArgs verify;
    verify.instance_path = gen.out_path;
    verify.solution_path = gen.out_path;  // never reached
    verify.cap = 4;
    CaptureStd cap;
    CHECK(cmd_verify(verify) == 1);
    CHECK(contains(cap.err.str(), "exceeds the enumeration cap"));
  }
  {
    GenArgs big = gen;
    big.n = kDefaultCap + 1;
    big.out_path.clear();
    CaptureStd cap;
    CHECK(cmd_gen(big) == 1);
    big.cap = kDefaultCap + 1;
    big.cap_ack = true;
    CHECK(cmd_gen(big) == 0);  // explicit opt-in works (generation is cheap)
  }
}
