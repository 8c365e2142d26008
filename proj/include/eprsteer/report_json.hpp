#pragma once

// JSON forms of the report types. Numbers are written with 17 significant
// digits, independent of the C locale.

#include <string>

#include <json.hpp>

#include "eprsteer/bounds.hpp"
#include "eprsteer/experiment.hpp"
#include "eprsteer/protocol.hpp"
#include "eprsteer/states.hpp"

namespace eprsteer {

using Json = nlohmann::json;

/// Serializes with "%.17g" floating-point formatting; indent < 0 is compact.
std::string dump_json(const Json& j, int indent = -1);

/// Formats a double with the given number of significant digits ("%.*g").
std::string format_number(double v, int significant_digits = 17);

Json to_json(const BlochVector& v);
Json to_json(const SteeringBound& b);
Json to_json(const SteeringReport& r);
Json to_json(const ChshReport& r);
Json to_json(const Estimate& e);
Json to_json(const DensityMatrix& rho);
Json to_json(const PipelineReport& r);

/// Parsers re-check the invariants of the emitting type and throw
/// DomainError when they fail.
BlochVector bloch_vector_from_json(const Json& j);
SteeringReport steering_report_from_json(const Json& j);
ChshReport chsh_report_from_json(const Json& j);
DensityMatrix density_matrix_from_json(const Json& j);

}  // namespace eprsteer
