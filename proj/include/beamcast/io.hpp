#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace beamcast {

/// 17-significant-digit decimal rendering with '.' separator; non-finite
/// values come out as "inf" / "-inf" / "nan".
std::string format_real(double v);

/// RFC 4180 field quoting: fields containing comma, quote or newline are
/// wrapped in double quotes with embedded quotes doubled.
std::string csv_field(const std::string& field);

/// One CSV line from already-rendered fields, RFC 4180 quoted.
std::string csv_row(const std::vector<std::string>& fields);

/// JSON value for a real: a number when finite, else the strings
/// "inf" / "-inf" / "nan" (JSON has no non-finite numbers).
nlohmann::json json_real(double v);

/// JSON array of reals via json_real.
nlohmann::json json_real_array(const std::vector<double>& values);

}  // namespace beamcast
