#pragma once

#include "stabsim/engine.hpp"

namespace stabsim {

// Versioned JSON schema (docs/trace-format.md). Serialization is canonical:
// identical traces produce identical bytes.
Json trace_to_json(const ExecutionTrace& trace);
ExecutionTrace trace_from_json(const Json& j);
std::string trace_to_string(const ExecutionTrace& trace);

// Re-executes the trace's recorded schedule from its recorded initial
// configuration with the given algorithm. The result carries the original
// daemon/seed header so a faithful replay serializes byte-identically.
ExecutionTrace replay_trace(const ExecutionTrace& source, const Algorithm& algorithm);

void save_trace_file(const ExecutionTrace& trace, const std::string& path);
ExecutionTrace load_trace_file(const std::string& path);

}  // namespace stabsim
