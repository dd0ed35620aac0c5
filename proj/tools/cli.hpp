#pragma once

#include "gst/circle.hpp"
#include "gst/measure.hpp"
#include "gst/weights.hpp"

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace gst::cli {

inline constexpr const char* kSchema = "gst-1";

// Exit codes: 0 success, 1 validation error, 2 uncertified result.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "t", "t^a", "power:a", "log:c", "loglog:c", "explog:a:b", "exp-inverse",
// "exp-exp-inverse", or a built-in majorant name such as "log^-1(e/t)".
Weight parse_weight(const std::string& spec);

// Fixture name or path to a JSON file.
ClosedCircleSet parse_set(const std::string& spec);
CircleMeasure parse_measure(const std::string& spec);
// JSON array of numbers or [re, im] pairs, inline or from a file.
std::vector<std::complex<double>> parse_polynomial(const std::string& spec);

}  // namespace gst::cli
