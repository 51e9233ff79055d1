#pragma once

#include <string>

namespace ordstat {

// Shortest decimal string that parses back to the same double.
[[nodiscard]] std::string format_real(double value);

} // namespace ordstat
