#pragma once

#include "online/prefix.hpp"
#include "online/run.hpp"

#include <istream>
#include <ostream>

namespace online {

/// One record per event: {"n": int, "row": "bits"} for bit kinds,
/// {"n": int, "size": "p/q"} for packing.
void write_prefix_jsonl(std::ostream& out, const ArrivalPrefix& prefix);

/// Reads records written by write_prefix_jsonl. Records must be numbered
/// 1, 2, ... in order. Throws ParseError otherwise.
ArrivalPrefix read_prefix_jsonl(std::istream& in, StructureKind kind);

/// One record per height: {"height", "output" (null while pending),
/// "admissible", "monotone", "read_high_water", "violation"}.
void write_trace_jsonl(std::ostream& out, const SolutionTrace& trace);

} // namespace online
