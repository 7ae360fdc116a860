#include "oddlef/descriptors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace oddlef {

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

namespace {

SpinStructure parse_spin(const std::string& s) {
  if (s == "periodic") return SpinStructure::periodic;
  if (s == "antiperiodic") return SpinStructure::antiperiodic;
  throw ParseError("spin structure must be \"periodic\" or \"antiperiodic\", got " + s);
}

template <class T>
T require(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const std::exception& e) {
    throw ParseError(std::string("field \"") + key + "\": " + e.what());
  }
}

template <class T>
T optional(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const std::exception& e) {
    throw ParseError(std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

ModelDescriptor parse_model_descriptor(const Json& j) {
  ModelDescriptor d;
  d.model = require<std::string>(j, "model");
  d.cutoff = require<int>(j, "cutoff");
  if (d.cutoff < 1) throw ParseError("cutoff must be positive");
  for (const auto& s : require<std::vector<std::string>>(j, "spin_structure"))
    d.spin.push_back(parse_spin(s));
  d.lift_sign = optional<int>(j, "lift_sign", 1);
  d.reflection_axis = optional<int>(j, "reflection_axis", d.model == "circle" ? 0 : 2);
  return d;
}

std::vector<FixedComponentSpec> parse_components(const Json& j) {
  if (!j.contains("components") || !j.at("components").is_array())
    throw ParseError("expected a top-level \"components\" array");
  std::vector<FixedComponentSpec> out;
  for (const auto& c : j.at("components")) {
    FixedComponentSpec s;
    s.name = optional<std::string>(c, "name", "F" + std::to_string(out.size() + 1));
    s.dim_f = require<int>(c, "dim");
    s.codim = require<int>(c, "codim");
    s.orientation_sign = require<int>(c, "orientation_sign");
    s.flat = optional<bool>(c, "flat", false);
    s.volume = optional<double>(c, "volume", 1.0);
    if (c.contains("char_numbers")) {
      for (const auto& [key, value] : c.at("char_numbers").items()) {
        if (!value.is_number())
          throw ParseError("char_numbers values must be numbers (component " + s.name + ")");
        s.char_numbers[key] = value.get<double>();
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

FunctionSpec parse_function_spec(const Json& j) {
  std::map<Frequency, std::complex<double>> coeffs;
  if (!j.contains("terms") || !j.at("terms").is_array())
    throw ParseError("function spec needs a \"terms\" array");
  for (const auto& term : j.at("terms")) {
    const auto freq = require<std::vector<int>>(term, "freq");
    if (freq.size() > 3) throw ParseError("frequency vectors have at most 3 entries");
    Frequency q = {0, 0, 0};
    for (std::size_t i = 0; i < freq.size(); ++i) q[i] = freq[i];
    const double re = optional<double>(term, "re", 0.0);
    const double im = optional<double>(term, "im", 0.0);
    coeffs[q] += std::complex<double>(re, im);
  }
  try {
    return FunctionSpec(std::move(coeffs));
  } catch (const FunctionError& e) {
    throw ParseError(e.what());
  }
}

std::vector<FunctionSpec> parse_function_list(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of function specs");
  std::vector<FunctionSpec> out;
  for (const auto& f : j) out.push_back(parse_function_spec(f));
  return out;
}

std::vector<double> parse_t_grid(const Json& j) {
  std::vector<double> ts;
  if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_number()) throw ParseError("t grid entries must be numbers");
      ts.push_back(v.get<double>());
    }
  } else if (j.is_object()) {
    const double tmin = require<double>(j, "min");
    const double tmax = require<double>(j, "max");
    const int count = require<int>(j, "count");
    if (count < 1) throw ParseError("t grid count must be positive");
    const std::string spacing = optional<std::string>(j, "spacing", std::string("log"));
    if (spacing == "log") {
      ts = log_spaced(tmin, tmax, count);
    } else if (spacing == "linear") {
      for (int i = 0; i < count; ++i)
        ts.push_back(count == 1 ? tmax : tmax + (tmin - tmax) * i / (count - 1));
    } else {
      throw ParseError("t grid spacing must be \"log\" or \"linear\"");
    }
  } else {
    throw ParseError("t grid must be an array or a {min,max,count} object");
  }
  for (double t : ts)
    if (t <= 0.0) throw ParseError("t grid values must be positive");
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (ts[i] >= ts[i - 1]) throw ParseError("t grid must strictly decrease toward 0");
  if (ts.empty()) throw ParseError("t grid is empty");
  return ts;
}

Json report_to_json(const LefschetzReport& report) {
  Json j;
  j["m1"] = report.m1;
  Json comps = Json::array();
  for (const auto& [name, value] : report.contributions) {
    Json c;
    c["name"] = name;
    c["contribution"] = value;
    comps.push_back(c);
  }
  j["contributions"] = comps;
  j["total"] = report.total;
  j["notes"] = report.notes;
  return j;
}

Json jlo_result_to_json(const JLOResult& r) {
  Json j;
  j["k"] = r.k;
  j["t"] = r.t;
  j["value_re"] = r.value.real();
  j["value_im"] = r.value.imag();
  j["quadrature_error"] = r.quadrature_error;
  j["basis_cutoff"] = r.basis_cutoff;
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  return j;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace oddlef
