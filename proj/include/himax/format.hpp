#pragma once

#include <string>

namespace himax {

/// Shortest decimal string that round-trips to the same double.
std::string format_shortest(double x);

/// Ten significant digits, printf %.10g style.
std::string format_sig10(double x);

}  // namespace himax
