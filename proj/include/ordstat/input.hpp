#pragma once

#include <string_view>

#include "ordstat/sequence.hpp"

namespace ordstat {

/// Whitespace- or comma-separated decimal literals (optional sign, fraction
/// and exponent), or a JSON array of numbers when the first non-blank
/// character is '['. NaN, infinities and out-of-range literals are rejected
/// with InvalidInput.
[[nodiscard]] RealSequence parse_sequence(std::string_view text);

} // namespace ordstat
