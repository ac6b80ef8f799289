// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pocval/u256.hpp>
#include <pocval/vm.hpp>

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace pocval
{
// One event per line, fields in fixed order, no trailing spaces. Two runs of
// the same PoC serialize byte-identically.
nlohmann::ordered_json trace_event_to_json(const TraceEvent& ev);
TraceEvent trace_event_from_json(const nlohmann::json& j);

std::string trace_to_jsonl(const std::vector<TraceEvent>& trace);
void write_trace_jsonl(std::ostream& os, const std::vector<TraceEvent>& trace);

// Throws SchemaError carrying the 1-based line number of the first bad line.
std::vector<TraceEvent> read_trace_jsonl(std::istream& is);
std::vector<TraceEvent> trace_from_jsonl(const std::string& text);

// Attacker balance movement per asset, signed decimal strings:
//   {"native": "3", "gold": "-2"}
std::map<std::string, bigint> deltas_from_json(const nlohmann::json& j);
nlohmann::ordered_json deltas_to_json(const std::map<std::string, bigint>& deltas);

}  // namespace pocval
