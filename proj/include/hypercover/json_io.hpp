#pragma once

#include <string>

#include "hypercover/augmentation.hpp"
#include "hypercover/cover.hpp"
#include "hypercover/hypergraph.hpp"
#include "hypercover/set_function.hpp"
#include "hypercover/verify.hpp"

namespace hypercover {

// All parsers throw std::runtime_error with a human-readable message on any
// schema violation.  Integers travel as JSON numbers up to |v| = 2^53 and as
// decimal strings beyond.

// Instance files: {"kind": "cover"|"local_ca"|"simul_ca"|"node_to_area"|
// "mixed_ca", ...payload}.  The ground set comes from the "ground" list
// (cover) or the graph's "vertices" (everything else).
InstanceFile parse_instance(const std::string& text);
InstanceFile load_instance(const std::string& path);
std::string serialize_instance(const InstanceFile& file);

// Tabulated functions: {"ground": [labels], "values": {subset-mask-as-
// decimal-string: value}} with all 2^n entries present.
std::string serialize_set_function(const SetFunction& f,
                                   const GroundSet& ground);
SetFunction parse_set_function(const std::string& text, GroundSet* ground);

// Hypergraphs: {"vertices": [labels], "edges": [{"vs": [labels], "w": int}]}.
// A solution additionally records "total_weight"; parsing one checks the
// vertex list matches the instance's ground set.
std::string serialize_solution(const WeightedHypergraph& h,
                               const GroundSet& ground);
WeightedHypergraph parse_solution(const std::string& text,
                                  const GroundSet& ground);

// Traces: JSON lines — one header object, then one object per call.
std::string trace_to_jsonl(const CoverTrace& trace);
CoverTrace parse_trace_jsonl(const std::string& text);

// Verification reports: {"ok": bool, "checks": [{"what", "ok", "detail"}]}.
std::string serialize_report(const VerificationReport& report);

}  // namespace hypercover
