#pragma once

// Polynomial JSON descriptors and numeric formatting shared by the CLI and the
// sweep persistence. All numbers are written as locale-independent decimal
// strings; doubles use shortest round-trip form.

#include "oscint/poly.hpp"

#include <string>

namespace oscint {

// shortest decimal string that parses back to exactly x
std::string format_double(double x);
double parse_double(const std::string& s);

// { "degree": d, "coeffs": ["p/q" | decimal, ...] } (index = power)
std::string poly_to_json(const Poly& p);
Poly poly_from_json(const std::string& json_text);

Poly read_poly_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace oscint
