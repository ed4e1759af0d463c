#pragma once

#include "etcsim/sim_engine.hpp"

#include <string>
#include <vector>

namespace etcsim {

/// trace.csv: t, <state columns>, V, disagreement. Doubles print with 17
/// significant digits so re-reading is exact.
std::string trace_to_csv(const Trace& trace);
/// events.csv: agent (1-based), t, kind.
std::string events_to_csv(const Trace& trace);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// Round-trip support: enough of a Trace to recompute summary metrics.
Trace trace_from_csv(const std::string& trace_csv, const std::string& events_csv);

}  // namespace etcsim
