#pragma once

#include <string>

namespace ojaregret {

// Shortest decimal representation that round-trips the exact double, so
// repeated runs produce byte-identical artifacts.
std::string fmt_double(double x);

}  // namespace ojaregret
