#include "ordstat/selection.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "ordstat/errors.hpp"

namespace ordstat {

namespace {

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > saturated - b ? saturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > saturated / a) {
        return saturated;
    }
    return a * b;
}

// Counts index sets {e_1 < ... < e_d}, 0 <= d < ranks, with
// e_i <= min(length, window + i - 1).
std::uint64_t count_eliminations(std::size_t length, std::size_t ranks, std::size_t window) {
    std::uint64_t total = 1; // d = 0
    std::vector<std::uint64_t> ways(length + 1, 0);
    std::vector<std::uint64_t> next(length + 1, 0);
    for (std::size_t v = 1; v <= std::min(length, window); ++v) {
        ways[v] = 1;
    }
    for (std::size_t d = 1; d < ranks; ++d) {
        for (std::size_t v = 1; v <= length; ++v) {
            total = sat_add(total, ways[v]);
        }
        if (d + 1 == ranks) {
            break;
        }
        const std::size_t cap = std::min(length, window + d);
        std::uint64_t prefix = 0;
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t v = 1; v <= cap; ++v) {
            next[v] = prefix;
            prefix = sat_add(prefix, ways[v]);
        }
        ways.swap(next);
    }
    return total;
}

double comparison_min(std::span<const double> xs) {
    double acc = xs[0];
    for (std::size_t k = 1; k < xs.size(); ++k) {
        if (xs[k] < acc) {
            acc = xs[k];
        }
    }
    return acc;
}

double naive_recurse(std::size_t rank, std::span<const double> xs, EvalStats& stats) {
    ++stats.recursive_calls;
    if (rank == 1) {
        ++stats.base_case_calls;
        return comparison_min(xs);
    }
    // sub holds x^(j); moving from j to j+1 only changes slot j-1.
    std::vector<double> sub(xs.begin() + 1, xs.end());
    const std::size_t last = xs.size() - rank + 2;
    double best = naive_recurse(rank - 1, sub, stats);
    for (std::size_t j = 2; j <= last; ++j) {
        sub[j - 2] = xs[j - 2];
        const double v = naive_recurse(rank - 1, sub, stats);
        if (v > best) {
            best = v;
        }
    }
    return best;
}

class MemoSelector {
public:
    MemoSelector(std::span<const double> values, bool full_range, EvalStats& stats)
        : values_(values), full_range_(full_range), stats_(stats) {}

    double run(const IndexSubset& alive, std::size_t rank) {
        ++stats_.recursive_calls;
        if (auto it = memo_.find(alive); it != memo_.end()) {
            ++stats_.memo_hits;
            return it->second;
        }
        double result = 0;
        if (rank == 1) {
            ++stats_.base_case_calls;
            bool first = true;
            alive.for_each([&](std::size_t i) {
                const double x = values_[i - 1];
                if (first || x < result) {
                    result = x;
                    first = false;
                }
            });
        } else {
            const std::size_t last = full_range_ ? alive.size() : alive.size() - rank + 2;
            result = run(alive.without_position(1), rank - 1);
            for (std::size_t j = 2; j <= last; ++j) {
                const double v = run(alive.without_position(j), rank - 1);
                if (v > result) {
                    result = v;
                }
            }
        }
        memo_.emplace(alive, result);
        return result;
    }

private:
    std::span<const double> values_;
    bool full_range_;
    EvalStats& stats_;
    std::unordered_map<IndexSubset, double, IndexSubset::Hash> memo_;
};

void check_budget(std::uint64_t needed, Budget budget, const char* what) {
    if (needed > budget.max_calls) {
        throw BudgetError(std::string(what) + " needs " +
                          (needed == saturated ? std::string("more than 2^64") : std::to_string(needed)) +
                          " calls, budget is " + std::to_string(budget.max_calls));
    }
}

} // namespace

RealSequence eliminate(const RealSequence& seq, std::size_t j) {
    const std::size_t n = seq.size();
    if (n < 2) {
        throw InvalidInput("cannot eliminate from a sequence of length 1");
    }
    if (j < 1 || j > n) {
        throw IndexError("elimination index " + std::to_string(j) + " outside 1.." + std::to_string(n));
    }
    std::vector<double> out;
    out.reserve(n - 1);
    const auto xs = seq.values();
    out.insert(out.end(), xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(j - 1));
    out.insert(out.end(), xs.begin() + static_cast<std::ptrdiff_t>(j), xs.end());
    return RealSequence(std::move(out));
}

RealSequence eliminate(const RealSequence& seq, std::span<const std::size_t> positions) {
    RealSequence current = seq;
    for (std::size_t j : positions) {
        current = eliminate(current, j);
    }
    return current;
}

double select_naive(Rank n, const RealSequence& seq, EvalStats& stats, Budget budget) {
    check_rank(n, seq.size());
    check_budget(naive_base_call_bound(seq.size(), n), budget,
                 "naive selection (use memo mode for this size)");
    return naive_recurse(n.value, seq.values(), stats);
}

double select_memo(Rank n, const RealSequence& seq, EvalStats& stats, Budget budget) {
    check_rank(n, seq.size());
    check_budget(memo_state_count(seq.size(), n), budget, "memoized selection");
    MemoSelector selector(seq.values(), false, stats);
    return selector.run(IndexSubset::full(seq.size()), n.value);
}

double select_fullrange(Rank n, const RealSequence& seq, Budget budget) {
    check_rank(n, seq.size());
    check_budget(fullrange_state_count(seq.size(), n), budget, "full-range selection");
    EvalStats scratch;
    MemoSelector selector(seq.values(), true, scratch);
    return selector.run(IndexSubset::full(seq.size()), n.value);
}

double median(const RealSequence& seq, SelectMode mode, Budget budget) {
    const std::size_t length = seq.size();
    EvalStats stats;
    auto select = [&](std::size_t rank) {
        return mode == SelectMode::naive ? select_naive(Rank{rank}, seq, stats, budget)
                                         : select_memo(Rank{rank}, seq, stats, budget);
    };
    if (length % 2 == 1) {
        return select((length + 1) / 2);
    }
    return (select(length / 2) + select(length / 2 + 1)) / 2;
}

SortWitness sort_witness(const RealSequence& seq) {
    SortWitness w;
    w.perm.resize(seq.size());
    std::iota(w.perm.begin(), w.perm.end(), std::size_t{1});
    const auto xs = seq.values();
    std::stable_sort(w.perm.begin(), w.perm.end(),
                     [&](std::size_t a, std::size_t b) { return xs[a - 1] < xs[b - 1]; });
    return w;
}

std::uint64_t naive_base_call_bound(std::size_t length, Rank n) {
    check_rank(n, length);
    const std::uint64_t branching = length - n.value + 2;
    std::uint64_t count = 1;
    for (std::size_t i = 1; i < n.value && count != saturated; ++i) {
        count = sat_mul(count, branching);
    }
    return count;
}

std::uint64_t memo_state_count(std::size_t length, Rank n) {
    check_rank(n, length);
    return count_eliminations(length, n.value, length - n.value + 2);
}

std::uint64_t fullrange_state_count(std::size_t length, Rank n) {
    check_rank(n, length);
    return count_eliminations(length, n.value, length);
}

} // namespace ordstat
