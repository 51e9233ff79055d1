#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ordstat/sequence.hpp"

namespace ordstat {

/// Ground truth: sort a copy, return the rank-th element.
[[nodiscard]] double oracle_select(Rank n, const RealSequence& seq);

/// Median of a sorted copy; the reference for median().
[[nodiscard]] double oracle_median(const RealSequence& seq);

struct VerifyPlan {
    std::size_t max_n = 7;
    std::vector<double> alphabet{0, 1, 2, 3};
    std::uint64_t random_trials = 10000;
    std::uint64_t seed = 1;
    double tolerance = 1e-9; // arithmetic form only, relative to max |x_i|

    // Exhaustive runs need |alphabet|^max_n * max_n <= case_budget.
    std::uint64_t case_budget = 10'000'000;
    Budget budget;
    std::size_t workers = 1;
    std::size_t max_recorded_failures = 100;
    bool check_arithmetic = true;
    // Negative control: the naive selector is asked for rank n+1 (capped at N).
    bool inject_fault = false;
};

struct VerifyFailure {
    std::vector<double> input;
    std::size_t rank = 0; // 0 for median checks
    double expected = 0;
    double actual = 0;
    std::string mode;
    friend bool operator==(const VerifyFailure&, const VerifyFailure&) = default;
};

/// failure_count counts every mismatch; `failures` keeps the first
/// max_recorded_failures of them in enumeration order. Both are empty
/// exactly when the suite passed.
struct VerifyReport {
    std::uint64_t cases_run = 0;
    std::uint64_t failure_count = 0;
    std::vector<VerifyFailure> failures;

    [[nodiscard]] bool passed() const noexcept { return failure_count == 0; }
    void merge(const VerifyReport& other, std::size_t max_recorded);
    friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

/// Every tuple over the alphabet of length 1..max_n, every rank. Checks
/// naive, memo, full-range, minmax-formula and arithmetic-formula
/// selection plus the median against the sort oracle. Modes whose
/// recursion exceeds plan.budget for a given length are skipped.
/// Throws BudgetError when the enumeration exceeds plan.case_budget.
[[nodiscard]] VerifyReport exhaustive_verify(const VerifyPlan& plan);

/// Seeded random sequences of length 1..max_n: uniform values in
/// [-1e6, 1e6] plus sorted, reverse-sorted, all-equal and 1-ulp
/// near-equal-pair patterns. Same checks as exhaustive_verify.
[[nodiscard]] VerifyReport random_verify(const VerifyPlan& plan);

/// {"cases_run": .., "failure_count": .., "passed": .., "failures": [..]}
[[nodiscard]] std::string report_json(const VerifyReport& report);

} // namespace ordstat
