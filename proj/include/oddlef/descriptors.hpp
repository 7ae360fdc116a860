#pragma once

#include "oddlef/jlo.hpp"
#include "oddlef/lefschetz.hpp"
#include "oddlef/spectral.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace oddlef {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

using Json = nlohmann::json;

Json load_json_file(const std::string& path);

ModelDescriptor parse_model_descriptor(const Json& j);
std::vector<FixedComponentSpec> parse_components(const Json& j);
FunctionSpec parse_function_spec(const Json& j);
std::vector<FunctionSpec> parse_function_list(const Json& j);

// either an explicit array [t0, t1, ...] (decreasing) or
// {"min": .., "max": .., "count": .., "spacing": "log"|"linear"}
std::vector<double> parse_t_grid(const Json& j);

Json report_to_json(const LefschetzReport& report);
Json jlo_result_to_json(const JLOResult& r);

std::string format_double(double v);  // shortest round-trip, deterministic

}  // namespace oddlef
