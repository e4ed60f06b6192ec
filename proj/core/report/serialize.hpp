#pragma once

#include <string>

#include "runner.hpp"

namespace anholkit::report {

// Every floating-point number is written with 17 significant digits; NaN and infinities become null.
std::string format_number(double v);
std::string write_json(const json& v, int indent = 2);

json to_json(const NdArray<double>& a);
json report_to_json(const Report& r, bool timing);

// {"error": {"kind", "message", "path"?, "offset"?}}
json error_body(const Error& e);

}  // namespace anholkit::report
