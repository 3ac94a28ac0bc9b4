#include "hypercover/commands.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hypercover/augmentation.hpp"
#include "hypercover/generator.hpp"
#include "hypercover/json_io.hpp"
#include "hypercover/selftest.hpp"

namespace hypercover {
namespace {

int parse_cap_text(const std::string& s, const std::string& source) {
  int cap = 0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, cap);
  if (ec != std::errc{} || ptr != end)
    throw std::runtime_error(source + ": \"" + s + "\" is not an integer");
  return cap;
}

// --cap wins over HYPERCOVER_CAP wins over the default.  Anything above the
// default is an explicit opt-in to 2^n enumeration cost.
int resolve_cap(int cli_cap, bool ack) {
  int cap = kDefaultCap;
  if (cli_cap > 0) {
    cap = cli_cap;
  } else if (const char* env = std::getenv("HYPERCOVER_CAP")) {
    cap = parse_cap_text(env, "HYPERCOVER_CAP");
  }
  if (cap < 1) throw std::runtime_error("the enumeration cap must be positive");
  if (cap > kHardCap)
    throw std::runtime_error("caps above " + std::to_string(kHardCap) +
                             " are unsupported (subset masks)");
  if (cap > kDefaultCap && !ack)
    throw std::runtime_error(
        "caps above " + std::to_string(kDefaultCap) +
        " need --accept-exponential-cost (every solve enumerates 2^n subsets)");
  return cap;
}

CoverMode parse_mode(const std::string& mode) {
  if (mode == "basic") return CoverMode::basic;
  if (mode == "uniform") return CoverMode::uniform;
  throw std::runtime_error("mode must be basic or uniform, not \"" + mode + "\"");
}

CoverFlavor parse_flavor(const std::string& flavor) {
  if (flavor == "weak") return CoverFlavor::weak;
  if (flavor == "strong") return CoverFlavor::strong;
  throw std::runtime_error("flavor must be weak or strong, not \"" + flavor +
                           "\"");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct FileOutcome {
  int code = 0;
  std::string text;
};

FileOutcome solve_one(const std::string& path, const SolveArgs& args,
                      const SolveOptions& opts) {
  FileOutcome r;
  std::ostringstream out;
  InstanceFile file;
  try {
    file = load_instance(path);
  } catch (const std::exception& e) {
    r.code = 1;
    r.text = path + ": error: " + std::string(e.what()) + "\n";
    return r;
  }
  try {
    const Solution sol = solve_application(file, opts);
    for (const std::string& note : sol.notes)
      out << path << ": note: " << note << "\n";
    if (!sol.report.ok()) {
      // The solver certifies its own output; a failed report is a bug, not
      // a property of the instance.
      out << path << ": error: solution failed certification\n"
          << sol.report.summary();
      r.code = 1;
      r.text = out.str();
      return r;
    }
    out << path << ": solved: " << sol.h.edges().size()
        << " hyperedges, total weight " << sol.h.total_weight() << ", "
        << sol.trace.steps.size() << " calls, " << sol.report.checks.size()
        << " checks passed\n";
    if (!args.out_path.empty())
      write_file(args.out_path, serialize_solution(sol.h, file.ground));
    if (!args.trace_path.empty())
      write_file(args.trace_path, trace_to_jsonl(sol.trace));
    r.text = out.str();
  } catch (const InfeasibleError& e) {
    out << path << ": infeasible: " << e.what() << "\n"
        << path << ": certificate: " << e.certificate.describe(file.ground)
        << "\n";
    r.code = 2;
    r.text = out.str();
  } catch (const std::exception& e) {
    r.code = 1;
    r.text = path + ": error: " + std::string(e.what()) + "\n";
  }
  return r;
}

}  // namespace

int cmd_solve(const SolveArgs& args) {
  SolveOptions opts;
  try {
    if (args.paths.empty())
      throw std::runtime_error("no instance files given");
    if (args.paths.size() > 1 &&
        (!args.out_path.empty() || !args.trace_path.empty()))
      throw std::runtime_error(
          "--out and --trace need a single instance file");
    opts.mode = parse_mode(args.mode);
    opts.flavor = parse_flavor(args.flavor);
    opts.cover.diagnostics = args.diagnostics;
    opts.cover.cap = resolve_cap(args.cap, args.cap_ack);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::vector<FileOutcome> results(args.paths.size());
  const int jobs =
      std::max(1, std::min<int>(args.jobs, static_cast<int>(args.paths.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < args.paths.size(); ++i)
      results[i] = solve_one(args.paths[i], args, opts);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < args.paths.size();
             i = next.fetch_add(1))
          results[i] = solve_one(args.paths[i], args, opts);
      });
    for (std::thread& t : pool) t.join();
  }

  int worst = 0;
  for (const FileOutcome& r : results) {
    (r.code == 1 ? std::cerr : std::cout) << r.text;
    if (r.code == 1 || (r.code == 2 && worst != 1)) worst = r.code;
  }
  return worst;
}

int cmd_verify(const VerifyArgs& args) {
  try {
    SolveOptions opts;
    opts.mode = parse_mode(args.mode);
    opts.flavor = parse_flavor(args.flavor);
    opts.cover.cap = resolve_cap(args.cap, args.cap_ack);
    const InstanceFile file = load_instance(args.instance_path);
    if (file.ground.n() > opts.cover.cap)
      throw std::runtime_error("instance exceeds the enumeration cap");
    const WeightedHypergraph h =
        parse_solution(read_file(args.solution_path), file.ground);
    const VerificationReport report = verify_application(file, h, opts);
    std::cout << serialize_report(report);
    return report.ok() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_gen(const GenArgs& args) {
  try {
    GenOptions opts;
    opts.kind = args.kind;
    opts.n = args.n;
    opts.seed = args.seed;
    opts.density = args.density;
    opts.feasible = args.feasible;
    opts.cap = resolve_cap(args.cap, args.cap_ack);
    const std::string text = serialize_instance(generate_instance(opts));
    if (args.out_path.empty())
      std::cout << text;
    else
      write_file(args.out_path, text);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_selftest() { return run_selftest(std::cout) ? 0 : 1; }

}  // namespace hypercover
