#pragma once

#include "ordstat/sequence.hpp"

namespace ordstat {

// Branchless min/max via (a + b -/+ |a - b|) / 2. Exact for integers of
// magnitude <= 2^50; otherwise the rounding error is a few ulps of
// max(|a|, |b|). Non-finite inputs or an overflowing sum throw InvalidInput.
[[nodiscard]] double pairwise_min_arith(double a, double b);
[[nodiscard]] double pairwise_max_arith(double a, double b);

// Left folds of the pairwise forms: min{min{x1..x_{N-1}}, x_N}.
[[nodiscard]] double min_chain(const RealSequence& seq);
[[nodiscard]] double max_chain(const RealSequence& seq);

} // namespace ordstat
