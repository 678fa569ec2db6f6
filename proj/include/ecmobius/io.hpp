#pragma once

#include <string>
#include <vector>

#include "ecmobius/coeffs.hpp"
#include "ecmobius/curve.hpp"
#include "ecmobius/special.hpp"

namespace ecmobius {

/// Curve file: `key = value` lines, `#` comments. Keys a, b, conductor
/// (required), root_number (+1, -1 or auto), ap_override.<p>, label.
CurveSpec parse_curve_text(const std::string& text);
CurveSpec parse_curve_file(const std::string& path);
std::string emit_curve(const CurveSpec& curve);

/// Coefficient CSV with header `n,a_n,mu_numer,mu_sqfree`.
std::string format_coeff_csv(const CoefficientTable& table);
CoefficientTable parse_coeff_csv(const std::string& text);

/// `RE+IMi`, `RE-IMi`, `RE` or `IMi`.
cd parse_complex(const std::string& text);

std::string read_file(const std::string& path);
/// Writes to a temporary file in the same directory and renames it over path.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace ecmobius
