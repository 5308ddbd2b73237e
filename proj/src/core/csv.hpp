// CSV emission: '#'-prefixed metadata header (library version, scenario
// hash, kind, units, tolerance, approximation flags) followed by a fixed
// column set.  Floats print as the shortest scientific form that parses back
// to the identical double, so output is byte-deterministic and round-trips.
#pragma once

#include <cstdint>
#include <string>

#include "core/runner.hpp"
#include "core/scenario.hpp"

namespace dsp {

std::uint64_t fnv1a64(const std::string& data);

// Shortest scientific representation that round-trips through strtod.
std::string format_shortest(double v);

std::string emit_csv(const Scenario& sc, const RunOutput& out);

}  // namespace dsp
