#include <CLI11.hpp>

#include "hypercover/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"degree-specified hypergraph covers and connectivity augmentation"};
  app.require_subcommand(1);

  hypercover::SolveArgs solve;
  CLI::App* s = app.add_subcommand("solve", "solve instance files");
  s->add_option("paths", solve.paths, "instance JSON files")
      ->required()
      ->check(CLI::ExistingFile);
  s->add_option("--mode", solve.mode, "basic | uniform (default basic)");
  s->add_option("--flavor", solve.flavor,
                "weak | strong (covers only; default weak)");
  s->add_flag("--diagnostics", solve.diagnostics,
              "record per-call tables in the trace");
  s->add_option("--trace", solve.trace_path, "write the trace as JSON lines");
  s->add_option("--out", solve.out_path, "write the solution JSON");
  s->add_option("--jobs", solve.jobs, "parallel batch solves");
  s->add_option("--cap", solve.cap, "enumeration cap override");
  s->add_flag("--accept-exponential-cost", solve.cap_ack,
              "allow caps above the default");

  hypercover::VerifyArgs verify;
  CLI::App* v = app.add_subcommand("verify", "check a solution against its instance");
  v->add_option("instance", verify.instance_path, "instance JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  v->add_option("solution", verify.solution_path, "solution JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  v->add_option("--mode", verify.mode, "bounds to check against (default basic)");
  v->add_option("--flavor", verify.flavor, "weak | strong (covers only)");
  v->add_option("--cap", verify.cap, "enumeration cap override");
  v->add_flag("--accept-exponential-cost", verify.cap_ack,
              "allow caps above the default");

  hypercover::GenArgs gen;
  CLI::App* g = app.add_subcommand("gen", "generate a random instance");
  g->add_option("kind", gen.kind,
                "cover | local_ca | simul_ca | node_to_area | mixed_ca")
      ->required();
  g->add_option("-n,--n", gen.n, "vertex count (default 5)");
  g->add_option("--seed", gen.seed, "generator seed (default 0)");
  g->add_option("--density", gen.density, "edge density in [0,1] (default 0.5)");
  g->add_flag("--feasible", gen.feasible, "guarantee solvability");
  g->add_option("--out", gen.out_path, "output file (default stdout)");
  g->add_option("--cap", gen.cap, "enumeration cap override");
  g->add_flag("--accept-exponential-cost", gen.cap_ack,
              "allow caps above the default");

  CLI::App* t = app.add_subcommand("selftest", "run the acceptance suite");

  CLI11_PARSE(app, argc, argv);

  if (s->parsed()) return hypercover::cmd_solve(solve);
  if (v->parsed()) return hypercover::cmd_verify(verify);
  if (g->parsed()) return hypercover::cmd_gen(gen);
  if (t->parsed()) return hypercover::cmd_selftest();
  return 1;
}
