#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordstat/sequence.hpp"

namespace ordstat {

struct BenchRecord {
    std::size_t N = 0;
    std::size_t n = 0;
    std::string mode;
    std::uint64_t base_case_calls = 0;
    std::uint64_t memo_hits = 0;
    std::uint64_t tree_nodes = 0;
    std::uint64_t dag_nodes = 0;
    double wall_time_s = 0;
    friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct BenchOptions {
    bool timing = true;          // false: skip measurement, wall_time_s = 0
    std::size_t repetitions = 5; // timed runs per measurement; the median is kept
    Budget budget;
};

/// Base-case calls of a naive selection over a length-N sequence. The count
/// depends only on (N, n).
[[nodiscard]] std::uint64_t count_calls(std::size_t length, Rank n, Budget budget = {});

struct GrowthRow {
    BenchRecord naive;
    BenchRecord memo;
    std::uint64_t predicted = 0; // (N-n+2)^(n-1)
    [[nodiscard]] bool law_holds() const noexcept { return naive.base_case_calls == predicted; }
};

/// One row per 1 <= n <= N <= max_N with naive and memo call counts and
/// the size of the arithmetic formula before/after cse. Throws BudgetError
/// if any naive evaluation exceeds the budget.
[[nodiscard]] std::vector<GrowthRow> growth_table(std::size_t max_length, const BenchOptions& options = {});

/// Times memoized selection, the compiled arithmetic formula and the sort
/// oracle on the same seeded inputs (rank defaults to the lower median).
/// Outputs are cross-checked; a disagreement throws Error.
[[nodiscard]] std::vector<BenchRecord> compare_wallclock(std::size_t length, std::size_t trials,
                                                         std::uint64_t seed, const BenchOptions& options = {},
                                                         std::optional<Rank> rank = std::nullopt);

inline constexpr const char* bench_csv_header =
    "N,n,mode,base_case_calls,memo_hits,tree_nodes,dag_nodes,wall_time_s";

[[nodiscard]] std::string records_csv(std::span<const BenchRecord> records);
[[nodiscard]] std::string records_json(std::span<const BenchRecord> records);

} // namespace ordstat
