#pragma once

#include <cstddef>
#include <cstdint>

#include "ordstat/sequence.hpp"

namespace ordstat {

/// Elimination subsequence: drops the j-th term (1-based) and closes the gap.
[[nodiscard]] RealSequence eliminate(const RealSequence& seq, std::size_t j);

/// Iterated elimination x^(j1, ..., jt); each position refers to the
/// sequence produced by the previous step.
[[nodiscard]] RealSequence eliminate(const RealSequence& seq, std::span<const std::size_t> positions);

/// n-th smallest value via the recursion
///
///   T(1, x) = min x
///   T(n, x) = max_{j = 1 .. N-n+2} T(n-1, x^(j))
///
/// evaluated directly on elimination subsequences. The number of base-case
/// calls is (N-n+2)^(n-1); requests above `budget` throw BudgetError.
/// Min and max inside the recursion use comparisons, so the result is one
/// of the input values bit for bit.
[[nodiscard]] double select_naive(Rank n, const RealSequence& seq, EvalStats& stats, Budget budget = {});

/// Same recursion, memoized on the set of surviving original indices.
/// Returns exactly what select_naive returns.
[[nodiscard]] double select_memo(Rank n, const RealSequence& seq, EvalStats& stats, Budget budget = {});

/// Diagnostic variant taking the maximum over every j = 1..N instead of
/// the truncated range. Agrees with select_naive on every input.
[[nodiscard]] double select_fullrange(Rank n, const RealSequence& seq, Budget budget = {});

enum class SelectMode { naive, memo };

/// T((N+1)/2) for odd N, mean of T(N/2) and T(N/2+1) for even N.
[[nodiscard]] double median(const RealSequence& seq, SelectMode mode = SelectMode::memo, Budget budget = {});

/// Stable sorting permutation (ties keep original order), 1-based.
[[nodiscard]] SortWitness sort_witness(const RealSequence& seq);

/// (N-n+2)^(n-1), saturating at UINT64_MAX. Used to reject naive requests
/// before any work is done.
[[nodiscard]] std::uint64_t naive_base_call_bound(std::size_t length, Rank n);

/// Number of distinct surviving-index sets the memoized recursion visits.
/// A set with eliminated indices e_1 < ... < e_d is reachable iff
/// e_i <= (N-n+2) + i - 1 for every i. Saturating.
[[nodiscard]] std::uint64_t memo_state_count(std::size_t length, Rank n);

/// Distinct states of select_fullrange: sum of C(N, d) for d < n. Saturating.
[[nodiscard]] std::uint64_t fullrange_state_count(std::size_t length, Rank n);

} // namespace ordstat
