#include "hypercover/json_io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace hypercover {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) {
  throw std::runtime_error(msg);
}

// JSON numbers are doubles on the wire; anything beyond 2^53 travels as a
// decimal string instead.
constexpr Val kJsonIntMax = Val{1} << 53;

Val get_int(const json& j, const std::string& where) {
  if (j.is_number_unsigned()) {
    const std::uint64_t u = j.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(kJsonIntMax))
      bad(where + ": integers beyond 2^53 must be written as strings");
    return static_cast<Val>(u);
  }
  if (j.is_number_integer()) {
    const Val v = j.get<Val>();
    if (v < -kJsonIntMax || v > kJsonIntMax)
      bad(where + ": integers beyond 2^53 must be written as strings");
    return v;
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    Val v = 0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end)
      bad(where + ": \"" + s + "\" is not an integer");
    return v;
  }
  bad(where + ": expected an integer");
}

json json_int(Val v) {
  if (v < -kJsonIntMax || v > kJsonIntMax) return json(std::to_string(v));
  return json(v);
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where + ": expected a string");
  return j.get<std::string>();
}

const json& need(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) bad(where + ": missing \"" + std::string(key) + "\"");
  return *it;
}

void expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) bad(where + ": expected a JSON object");
}

void expect_array(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + ": expected a JSON list");
}

// Unknown keys are schema violations, not extensions: a misspelled field
// must not be silently ignored.
void expect_keys(const json& obj, std::initializer_list<const char*> allowed,
                 const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) bad(where + ": unknown key \"" + it.key() + "\"");
  }
}

GroundSet parse_ground(const json& j, const std::string& where) {
  expect_array(j, where);
  if (j.empty()) bad(where + ": needs at least one vertex");
  if (j.size() > static_cast<std::size_t>(kHardCap))
    bad(where + ": more than " + std::to_string(kHardCap) + " vertices");
  std::vector<std::string> labels;
  labels.reserve(j.size());
  for (const json& el : j) {
    std::string s = get_string(el, where);
    if (s.empty()) bad(where + ": empty vertex label");
    for (const std::string& prev : labels)
      if (prev == s) bad(where + ": duplicate vertex \"" + s + "\"");
    labels.push_back(std::move(s));
  }
  return GroundSet(labels);
}

json ground_json(const GroundSet& ground) {
  json a = json::array();
  for (const std::string& s : ground.labels()) a.push_back(s);
  return a;
}

int get_vertex(const json& j, const GroundSet& ground,
               const std::string& where) {
  const std::string label = get_string(j, where);
  try {
    return ground.index_of(label);
  } catch (const std::exception&) {
    bad(where + ": unknown vertex \"" + label + "\"");
  }
}

Mask get_mask(const json& j, const GroundSet& ground,
              const std::string& where) {
  expect_array(j, where);
  Mask x = 0;
  for (const json& el : j) {
    const int u = get_vertex(el, ground, where);
    if (has(x, u)) bad(where + ": vertex \"" + ground.label(u) + "\" listed twice");
    x |= bit(u);
  }
  return x;
}

json mask_json(Mask x, const GroundSet& ground) {
  json a = json::array();
  for (int u : elements_of(x)) a.push_back(ground.label(u));
  return a;
}

DegreeVector get_degrees(const json& j, int n, const std::string& where) {
  expect_array(j, where);
  if (static_cast<int>(j.size()) != n)
    bad(where + ": expected one entry per vertex (" + std::to_string(n) + ")");
  DegreeVector m(n, 0);
  for (int u = 0; u < n; ++u) {
    m[u] = get_int(j[u], where);
    if (m[u] < 0) bad(where + ": negative degree");
  }
  return m;
}

json degrees_json(const DegreeVector& m) {
  json a = json::array();
  for (Val v : m) a.push_back(json_int(v));
  return a;
}

// --- hypergraphs -----------------------------------------------------------

WeightedHypergraph parse_edges(const json& j, const GroundSet& ground,
                               const std::string& where) {
  expect_array(j, where);
  WeightedHypergraph g(ground.n());
  int i = 0;
  for (const json& e : j) {
    const std::string at = where + ", edge " + std::to_string(++i);
    expect_object(e, at);
    expect_keys(e, {"vs", "w"}, at);
    const Mask vs = get_mask(need(e, "vs", at), ground, at);
    const Val w = get_int(need(e, "w", at), at);
    if (vs == 0) bad(at + ": empty hyperedge");
    if (w < 1) bad(at + ": weight must be positive");
    g.add_edge(vs, w);
  }
  return g;
}

std::pair<GroundSet, WeightedHypergraph> parse_graph(const json& j,
                                                     const std::string& where) {
  expect_object(j, where);
  expect_keys(j, {"vertices", "edges"}, where);
  GroundSet ground = parse_ground(need(j, "vertices", where), where);
  WeightedHypergraph g =
      parse_edges(need(j, "edges", where), ground, where);
  return {std::move(ground), std::move(g)};
}

json edges_json(const WeightedHypergraph& g, const GroundSet& ground) {
  json a = json::array();
  for (const WeightedEdge& e : g.edges())
    a.push_back({{"vs", mask_json(e.members, ground)}, {"w", json_int(e.weight)}});
  return a;
}

json graph_json(const WeightedHypergraph& g, const GroundSet& ground) {
  return {{"vertices", ground_json(ground)}, {"edges", edges_json(g, ground)}};
}

std::pair<GroundSet, MixedHypergraph> parse_mixed_graph(
    const json& j, const std::string& where) {
  expect_object(j, where);
  expect_keys(j, {"vertices", "edges"}, where);
  GroundSet ground = parse_ground(need(j, "vertices", where), where);
  const json& edges = need(j, "edges", where);
  expect_array(edges, where);
  MixedHypergraph g(ground.n());
  int i = 0;
  for (const json& e : edges) {
    const std::string at = where + ", edge " + std::to_string(++i);
    expect_object(e, at);
    expect_keys(e, {"tails", "heads", "ht", "w"}, at);
    const Mask tails =
        e.contains("tails") ? get_mask(e["tails"], ground, at) : Mask{0};
    const Mask heads =
        e.contains("heads") ? get_mask(e["heads"], ground, at) : Mask{0};
    const Mask ht = e.contains("ht") ? get_mask(e["ht"], ground, at) : Mask{0};
    const Val w = get_int(need(e, "w", at), at);
    try {
      g.add_edge(tails, heads, ht, w);
    } catch (const std::invalid_argument& ex) {
      bad(at + ": " + ex.what());
    }
  }
  return {std::move(ground), std::move(g)};
}

json mixed_graph_json(const MixedHypergraph& g, const GroundSet& ground) {
  json edges = json::array();
  for (const MixedEdge& e : g.edges())
    edges.push_back({{"tails", mask_json(e.tails, ground)},
                     {"heads", mask_json(e.heads, ground)},
                     {"ht", mask_json(e.both, ground)},
                     {"w", json_int(e.weight)}});
  return {{"vertices", ground_json(ground)}, {"edges", edges}};
}

// --- set functions ----------------------------------------------------------

SetFunction parse_values(const json& j, int n, const std::string& where) {
  expect_object(j, where);
  const std::size_t size = std::size_t{1} << n;
  if (j.size() != size)
    bad(where + ": expected exactly " + std::to_string(size) +
        " subset values, got " + std::to_string(j.size()));
  std::vector<Val> table(size, 0);
  std::vector<bool> seen(size, false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    unsigned long x = size;
    const char* end = key.data() + key.size();
    const auto [ptr, ec] = std::from_chars(key.data(), end, x);
    if (ec != std::errc{} || ptr != end || x >= size)
      bad(where + ": \"" + key + "\" is not a subset mask below " +
          std::to_string(size));
    if (seen[x]) bad(where + ": subset mask " + std::to_string(x) + " repeated");
    seen[x] = true;
    table[x] = get_int(it.value(), where + ", mask " + key);
  }
  return SetFunction::tabulated(n, std::move(table));
}

json values_json(const SetFunction& f) {
  json o = json::object();
  const Mask full = full_mask(f.n());
  for (Mask x = 0;; ++x) {
    o[std::to_string(x)] = json_int(f.value(x));
    if (x == full) break;
  }
  return o;
}

// --- target matrices ---------------------------------------------------------

std::vector<std::vector<Val>> parse_targets(const json& j,
                                            const GroundSet& ground,
                                            const std::string& where) {
  expect_array(j, where);
  const int n = ground.n();
  std::vector<std::vector<Val>> r(n, std::vector<Val>(n, 0));
  int i = 0;
  for (const json& t : j) {
    const std::string at = where + ", target " + std::to_string(++i);
    expect_object(t, at);
    expect_keys(t, {"u", "v", "r"}, at);
    const int u = get_vertex(need(t, "u", at), ground, at);
    const int v = get_vertex(need(t, "v", at), ground, at);
    const Val want = get_int(need(t, "r", at), at);
    if (u == v) bad(at + ": a vertex cannot target itself");
    if (want < 0) bad(at + ": negative connectivity target");
    r[u][v] = std::max(r[u][v], want);
    r[v][u] = r[u][v];
  }
  return r;
}

json targets_json(const std::vector<std::vector<Val>>& r,
                  const GroundSet& ground) {
  json a = json::array();
  const int n = ground.n();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (r[u][v] > 0)
        a.push_back({{"u", ground.label(u)},
                     {"v", ground.label(v)},
                     {"r", json_int(r[u][v])}});
  return a;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

InstanceFile parse_instance(const std::string& text) {
  const json j = parse_text(text);
  expect_object(j, "instance");
  const std::string kind = get_string(need(j, "kind", "instance"), "kind");
  InstanceFile file;

  if (kind == "cover") {
    expect_keys(j, {"kind", "ground", "functions", "m"}, "cover instance");
    file.ground = parse_ground(need(j, "ground", "cover instance"), "ground");
    const json& fns = need(j, "functions", "cover instance");
    expect_array(fns, "functions");
    if (fns.empty() || fns.size() > 2)
      bad("functions: expected one or two demand functions");
    CoverFileInstance inst;
    int i = 0;
    for (const json& fn : fns) {
      const std::string at = "function " + std::to_string(++i);
      expect_object(fn, at);
      expect_keys(fn, {"ground", "values"}, at);
      if (fn.contains("ground") &&
          !(parse_ground(fn["ground"], at) == file.ground))
        bad(at + ": ground set differs from the instance's");
      inst.components.push_back(
          parse_values(need(fn, "values", at), file.ground.n(), at));
    }
    inst.m = get_degrees(need(j, "m", "cover instance"), file.ground.n(), "m");
    file.payload = std::move(inst);
    return file;
  }

  if (kind == "local_ca") {
    expect_keys(j, {"kind", "graph", "targets", "m"}, "local_ca instance");
    LocalCAInstance inst;
    std::tie(file.ground, inst.g) =
        parse_graph(need(j, "graph", "local_ca instance"), "graph");
    inst.r = parse_targets(need(j, "targets", "local_ca instance"),
                           file.ground, "targets");
    if (j.contains("m")) {
      inst.m = get_degrees(j["m"], file.ground.n(), "m");
      inst.has_m = true;
    } else {
      inst.m.assign(file.ground.n(), 0);
    }
    file.payload = std::move(inst);
    return file;
  }

  if (kind == "simul_ca") {
    expect_keys(j, {"kind", "graph1", "targets1", "graph2", "targets2", "m"},
                "simul_ca instance");
    SimulCAInstance inst;
    std::tie(file.ground, inst.g1) =
        parse_graph(need(j, "graph1", "simul_ca instance"), "graph1");
    GroundSet ground2;
    std::tie(ground2, inst.g2) =
        parse_graph(need(j, "graph2", "simul_ca instance"), "graph2");
    if (!(ground2 == file.ground))
      bad("graph2: vertex list differs from graph1's");
    inst.r1 = parse_targets(need(j, "targets1", "simul_ca instance"),
                            file.ground, "targets1");
    inst.r2 = parse_targets(need(j, "targets2", "simul_ca instance"),
                            file.ground, "targets2");
    inst.m = get_degrees(need(j, "m", "simul_ca instance"), file.ground.n(), "m");
    file.payload = std::move(inst);
    return file;
  }

  if (kind == "node_to_area") {
    expect_keys(j, {"kind", "graph", "areas", "m"}, "node_to_area instance");
    NodeToAreaInstance inst;
    std::tie(file.ground, inst.g) =
        parse_graph(need(j, "graph", "node_to_area instance"), "graph");
    const json& areas = need(j, "areas", "node_to_area instance");
    expect_array(areas, "areas");
    int i = 0;
    for (const json& a : areas) {
      const std::string at = "area " + std::to_string(++i);
      expect_object(a, at);
      expect_keys(a, {"vs", "r"}, at);
      Area w;
      w.members = get_mask(need(a, "vs", at), file.ground, at);
      w.r = get_int(need(a, "r", at), at);
      if (w.members == 0) bad(at + ": empty area");
      if (w.r < 0) bad(at + ": negative connectivity target");
      inst.areas.push_back(w);
    }
    inst.m = get_degrees(need(j, "m", "node_to_area instance"),
                         file.ground.n(), "m");
    file.payload = std::move(inst);
    return file;
  }

  if (kind == "mixed_ca") {
    expect_keys(j, {"kind", "graph", "root", "k", "l", "m"},
                "mixed_ca instance");
    MixedCAInstance inst;
    std::tie(file.ground, inst.g) =
        parse_mixed_graph(need(j, "graph", "mixed_ca instance"), "graph");
    inst.root = get_vertex(need(j, "root", "mixed_ca instance"), file.ground,
                           "root");
    inst.k = get_int(need(j, "k", "mixed_ca instance"), "k");
    inst.l = get_int(need(j, "l", "mixed_ca instance"), "l");
    if (inst.k < 1 || inst.l < 1) bad("k and l must be positive");
    inst.m = get_degrees(need(j, "m", "mixed_ca instance"), file.ground.n(),
                         "m");
    file.payload = std::move(inst);
    return file;
  }

  bad("unknown instance kind \"" + kind + "\"");
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const InstanceFile& file) {
  json j;
  if (const auto* c = std::get_if<CoverFileInstance>(&file.payload)) {
    j["kind"] = "cover";
    j["ground"] = ground_json(file.ground);
    json fns = json::array();
    for (const SetFunction& f : c->components)
      fns.push_back({{"values", values_json(f)}});
    j["functions"] = std::move(fns);
    j["m"] = degrees_json(c->m);
  } else if (const auto* c = std::get_if<LocalCAInstance>(&file.payload)) {
    j["kind"] = "local_ca";
    j["graph"] = graph_json(c->g, file.ground);
    j["targets"] = targets_json(c->r, file.ground);
    if (c->has_m) j["m"] = degrees_json(c->m);
  } else if (const auto* c = std::get_if<SimulCAInstance>(&file.payload)) {
    j["kind"] = "simul_ca";
    j["graph1"] = graph_json(c->g1, file.ground);
    j["targets1"] = targets_json(c->r1, file.ground);
    j["graph2"] = graph_json(c->g2, file.ground);
    j["targets2"] = targets_json(c->r2, file.ground);
    j["m"] = degrees_json(c->m);
  } else if (const auto* c = std::get_if<NodeToAreaInstance>(&file.payload)) {
    j["kind"] = "node_to_area";
    j["graph"] = graph_json(c->g, file.ground);
    json areas = json::array();
    for (const Area& w : c->areas)
      areas.push_back(
          {{"vs", mask_json(w.members, file.ground)}, {"r", json_int(w.r)}});
    j["areas"] = std::move(areas);
    j["m"] = degrees_json(c->m);
  } else {
    const auto& mc = std::get<MixedCAInstance>(file.payload);
    j["kind"] = "mixed_ca";
    j["graph"] = mixed_graph_json(mc.g, file.ground);
    j["root"] = file.ground.label(mc.root);
    j["k"] = json_int(mc.k);
    j["l"] = json_int(mc.l);
    j["m"] = degrees_json(mc.m);
  }
  return j.dump(2) + "\n";
}

std::string serialize_set_function(const SetFunction& f,
                                   const GroundSet& ground) {
  if (f.n() != ground.n())
    throw std::invalid_argument("function and ground set sizes differ");
  if (f.active() != full_mask(f.n()))
    throw std::invalid_argument("only functions on the full ground set serialize");
  const json j = {{"ground", ground_json(ground)}, {"values", values_json(f)}};
  return j.dump(2) + "\n";
}

SetFunction parse_set_function(const std::string& text, GroundSet* ground) {
  const json j = parse_text(text);
  expect_object(j, "function");
  expect_keys(j, {"ground", "values"}, "function");
  GroundSet g = parse_ground(need(j, "ground", "function"), "ground");
  SetFunction f = parse_values(need(j, "values", "function"), g.n(), "values");
  if (ground) *ground = std::move(g);
  return f;
}

std::string serialize_solution(const WeightedHypergraph& h,
                               const GroundSet& ground) {
  json j = graph_json(h, ground);
  j["total_weight"] = json_int(h.total_weight());
  return j.dump(2) + "\n";
}

WeightedHypergraph parse_solution(const std::string& text,
                                  const GroundSet& ground) {
  const json j = parse_text(text);
  expect_object(j, "solution");
  expect_keys(j, {"vertices", "edges", "total_weight"}, "solution");
  const GroundSet got = parse_ground(need(j, "vertices", "solution"), "vertices");
  if (!(got == ground))
    bad("solution: vertex list differs from the instance's");
  WeightedHypergraph h =
      parse_edges(need(j, "edges", "solution"), ground, "edges");
  const Val total = get_int(need(j, "total_weight", "solution"), "total_weight");
  if (total != h.total_weight())
    bad("solution: total_weight " + std::to_string(total) +
        " does not match the edges (" + std::to_string(h.total_weight()) + ")");
  return h;
}

// --- traces ------------------------------------------------------------------

namespace {

// kPosInf (unused weight candidates) and kNegInf (off-domain table entries)
// both serialize as null; which one null means is fixed by the field.
json part_json(Val v) { return is_pos_inf(v) ? json() : json_int(v); }
json table_entry_json(Val v) { return is_neg_inf(v) ? json() : json_int(v); }

json attained_json(unsigned attained) {
  json a = json::array();
  for (int c = 0; c < 5; ++c)
    if (attained & (1u << c)) a.push_back(c + 1);
  return a;
}

}  // namespace

std::string trace_to_jsonl(const CoverTrace& trace) {
  std::ostringstream out;
  const GroundSet& ground = trace.ground;
  json header = {{"type", "header"},
                 {"n", trace.n},
                 {"ground", ground_json(ground)},
                 {"uniform", trace.uniform},
                 {"pair", trace.pair},
                 {"diagnostics", trace.diagnostics},
                 {"removed_zero", mask_json(trace.removed_zero, ground)},
                 {"k1", json_int(trace.k1)},
                 {"m1_total", json_int(trace.m1_total)},
                 {"calls", trace.steps.size()}};
  out << header.dump() << '\n';
  int index = 0;
  for (const CoverStep& s : trace.steps) {
    json call = {{"type", "call"},
                 {"index", ++index},
                 {"active", mask_json(s.active, ground)},
                 {"k", json_int(s.k)},
                 {"m_total", json_int(s.m_total)},
                 {"a", mask_json(s.a, ground)},
                 {"alpha", json_int(s.alpha)},
                 {"attained", attained_json(s.attained)},
                 {"z", mask_json(s.z, ground)}};
    json parts = json::array();
    for (Val v : s.alpha_parts) parts.push_back(part_json(v));
    call["alpha_parts"] = std::move(parts);
    if (trace.uniform) {
      call["j"] = mask_json(s.j, ground);
      call["ratio_iterations"] = s.ratio_iterations;
    } else {
      call["forced"] = mask_json(s.forced, ground);
      json fam = json::array();
      for (Mask x : s.maximizer_family) fam.push_back(mask_json(x, ground));
      call["maximizers"] = std::move(fam);
      call["transversal"] = mask_json(s.transversal, ground);
    }
    if (trace.diagnostics) {
      json tables = json::array();
      for (const std::vector<Val>& t : s.p_tables) {
        json table = json::array();
        for (Val v : t) table.push_back(table_entry_json(v));
        tables.push_back(std::move(table));
      }
      call["p_tables"] = std::move(tables);
      call["m_values"] = degrees_json(s.m_values);
    }
    out << call.dump() << '\n';
  }
  return out.str();
}

CoverTrace parse_trace_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<json> rows;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(parse_text(line));
  }
  if (rows.empty()) bad("trace: no JSON lines");

  const json& h = rows.front();
  expect_object(h, "trace header");
  expect_keys(h,
              {"type", "n", "ground", "uniform", "pair", "diagnostics",
               "removed_zero", "k1", "m1_total", "calls"},
              "trace header");
  if (get_string(need(h, "type", "trace header"), "type") != "header")
    bad("trace: first line must be the header");
  CoverTrace trace;
  trace.ground = parse_ground(need(h, "ground", "trace header"), "ground");
  trace.n = static_cast<int>(get_int(need(h, "n", "trace header"), "n"));
  if (trace.n != trace.ground.n()) bad("trace header: n does not match ground");
  const json& uniform = need(h, "uniform", "trace header");
  const json& pair = need(h, "pair", "trace header");
  const json& diagnostics = need(h, "diagnostics", "trace header");
  if (!uniform.is_boolean() || !pair.is_boolean() || !diagnostics.is_boolean())
    bad("trace header: uniform/pair/diagnostics must be booleans");
  trace.uniform = uniform.get<bool>();
  trace.pair = pair.get<bool>();
  trace.diagnostics = diagnostics.get<bool>();
  trace.removed_zero = get_mask(need(h, "removed_zero", "trace header"),
                                trace.ground, "removed_zero");
  trace.k1 = get_int(need(h, "k1", "trace header"), "k1");
  trace.m1_total = get_int(need(h, "m1_total", "trace header"), "m1_total");
  const Val calls = get_int(need(h, "calls", "trace header"), "calls");
  if (calls != static_cast<Val>(rows.size()) - 1)
    bad("trace header: calls does not match the number of call lines");

  const std::size_t table_size = std::size_t{1} << trace.n;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::string at = "trace call " + std::to_string(i);
    const json& r = rows[i];
    expect_object(r, at);
    if (get_string(need(r, "type", at), "type") != "call")
      bad(at + ": expected a call line");
    if (get_int(need(r, "index", at), at + " index") != static_cast<Val>(i))
      bad(at + ": call lines out of order");
    CoverStep s;
    s.active = get_mask(need(r, "active", at), trace.ground, at + " active");
    s.k = get_int(need(r, "k", at), at + " k");
    s.m_total = get_int(need(r, "m_total", at), at + " m_total");
    s.a = get_mask(need(r, "a", at), trace.ground, at + " a");
    s.alpha = get_int(need(r, "alpha", at), at + " alpha");
    s.z = get_mask(need(r, "z", at), trace.ground, at + " z");
    const json& parts = need(r, "alpha_parts", at);
    expect_array(parts, at + " alpha_parts");
    if (parts.size() != 5) bad(at + ": alpha_parts must have 5 entries");
    for (int c = 0; c < 5; ++c)
      s.alpha_parts[c] = parts[c].is_null()
                             ? kPosInf
                             : get_int(parts[c], at + " alpha_parts");
    const json& attained = need(r, "attained", at);
    expect_array(attained, at + " attained");
    for (const json& el : attained) {
      const Val c = get_int(el, at + " attained");
      if (c < 1 || c > 5) bad(at + ": attained entries must be in 1..5");
      s.attained |= 1u << (c - 1);
    }
    if (trace.uniform) {
      expect_keys(r,
                  {"type", "index", "active", "k", "m_total", "a", "alpha",
                   "alpha_parts", "attained", "z", "j", "ratio_iterations",
                   "p_tables", "m_values"},
                  at);
      s.j = get_mask(need(r, "j", at), trace.ground, at + " j");
      s.ratio_iterations = static_cast<long>(
          get_int(need(r, "ratio_iterations", at), at + " ratio_iterations"));
    } else {
      expect_keys(r,
                  {"type", "index", "active", "k", "m_total", "a", "alpha",
                   "alpha_parts", "attained", "z", "forced", "maximizers",
                   "transversal", "p_tables", "m_values"},
                  at);
      s.forced = get_mask(need(r, "forced", at), trace.ground, at + " forced");
      const json& fam = need(r, "maximizers", at);
      expect_array(fam, at + " maximizers");
      for (const json& x : fam)
        s.maximizer_family.push_back(
            get_mask(x, trace.ground, at + " maximizers"));
      s.transversal =
          get_mask(need(r, "transversal", at), trace.ground, at + " transversal");
    }
    if (trace.diagnostics) {
      const json& tables = need(r, "p_tables", at);
      expect_array(tables, at + " p_tables");
      for (const json& t : tables) {
        expect_array(t, at + " p_tables");
        if (t.size() != table_size)
          bad(at + ": each value table needs 2^n entries");
        std::vector<Val> table(table_size, 0);
        for (std::size_t x = 0; x < table_size; ++x)
          table[x] = t[x].is_null() ? kNegInf : get_int(t[x], at + " p_tables");
        s.p_tables.push_back(std::move(table));
      }
      s.m_values = get_degrees(need(r, "m_values", at), trace.n, at + " m_values");
    } else if (r.contains("p_tables") || r.contains("m_values")) {
      bad(at + ": diagnostics tables present but the header says none");
    }
    trace.steps.push_back(std::move(s));
  }
  return trace;
}

std::string serialize_report(const VerificationReport& report) {
  json checks = json::array();
  for (const CheckResult& c : report.checks)
    checks.push_back({{"what", c.what}, {"ok", c.ok}, {"detail", c.detail}});
  const json j = {{"ok", report.ok()}, {"checks", std::move(checks)}};
  return j.dump(2) + "\n";
}

}  // namespace hypercover
