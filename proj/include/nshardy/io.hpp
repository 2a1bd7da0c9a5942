#ifndef NSHARDY_IO_HPP
#define NSHARDY_IO_HPP

#include <string>

#include <json.hpp>

#include "nshardy/hardy.hpp"
#include "nshardy/nosignaling.hpp"
#include "nshardy/vertices.hpp"

namespace nshardy {

// Wire formats. Inputs are 0/1, outcomes are 1-based, probabilities are
// exact "num/den" strings.

nlohmann::json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);

/// {"scenario": {...}, "table": [{"x":0,"y":0,"a":1,"b":1,"p":"1/2"}, ...]}
/// Every coordinate is written, in (X, Y, a, b) order.
nlohmann::json box_to_json(const JointBox& box);

/// Throws ValidationError on a missing, duplicate, or out-of-range entry.
JointBox box_from_json(const nlohmann::json& j);

nlohmann::json event_to_json(const Event& e);
nlohmann::json argument_to_json(const HardyArgument& arg);
nlohmann::json report_to_json(const OptimizationReport& report);
nlohmann::json vertex_to_json(const Vertex& v);

}  // namespace nshardy

#endif  // NSHARDY_IO_HPP
