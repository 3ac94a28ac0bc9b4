#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hypercover {

// The CLI subcommands, callable in-process so the test suites can exercise
// the exact shipping code paths.  Exit codes: 0 success, 1 error, and for
// solve 2 = infeasible with the certificate printed.  Batch solves report
// the worst code, errors before infeasibilities.

struct SolveArgs {
  std::vector<std::string> paths;
  std::string mode = "basic";    // basic | uniform
  std::string flavor = "weak";   // weak | strong (covers only; applications
                                 // always need the strong flavor)
  bool diagnostics = false;      // record per-call tables in the trace
  std::string trace_path;        // write the trace as JSON lines
  std::string out_path;          // write the solution JSON
  int jobs = 1;                  // parallel batch solves
  int cap = 0;                   // 0 = default or HYPERCOVER_CAP
  bool cap_ack = false;          // required to raise the cap above default
};
int cmd_solve(const SolveArgs& args);

struct VerifyArgs {
  std::string instance_path;
  std::string solution_path;
  std::string mode = "basic";   // bounds to hold the solution against
  std::string flavor = "weak";  // covers only, as in solve
  int cap = 0;
  bool cap_ack = false;
};
int cmd_verify(const VerifyArgs& args);

struct GenArgs {
  std::string kind;  // cover | local_ca | simul_ca | node_to_area | mixed_ca
  int n = 5;
  std::uint64_t seed = 0;
  double density = 0.5;
  bool feasible = false;
  std::string out_path;  // empty = stdout
  int cap = 0;
  bool cap_ack = false;
};
int cmd_gen(const GenArgs& args);

int cmd_selftest();

}  // namespace hypercover
