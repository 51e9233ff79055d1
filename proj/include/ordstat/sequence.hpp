#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace ordstat {

/// Finite, non-empty sequence of finite doubles. Element access through
/// at() is 1-based, matching the usual x_1..x_N notation.
class RealSequence {
public:
    explicit RealSequence(std::vector<double> values);
    RealSequence(std::initializer_list<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double at(std::size_t k) const; // 1-based
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    friend bool operator==(const RealSequence&, const RealSequence&) = default;

private:
    std::vector<double> values_;
};

/// 1-based order-statistic rank.
struct Rank {
    std::size_t value;

    constexpr explicit Rank(std::size_t n) noexcept : value(n) {}
    friend constexpr bool operator==(Rank, Rank) = default;
};

/// Throws RankError unless 1 <= rank <= length.
void check_rank(Rank rank, std::size_t length);

/// Canonical set of surviving original indices (1-based). Two subsets that
/// contain the same indices compare equal regardless of how they were
/// reached, which makes this usable as a memo key.
class IndexSubset {
public:
    static IndexSubset full(std::size_t universe);
    static IndexSubset from_indices(std::size_t universe, std::span<const std::size_t> indices);

    [[nodiscard]] std::size_t universe() const noexcept { return universe_; }
    [[nodiscard]] std::size_t size() const noexcept { return count_; }
    [[nodiscard]] bool contains(std::size_t index) const noexcept;
    [[nodiscard]] std::vector<std::size_t> indices() const;

    /// Original index of the position-th survivor (1-based position).
    [[nodiscard]] std::size_t nth(std::size_t position) const;

    /// Subset with the position-th survivor removed: the elimination
    /// subsequence expressed in original indices.
    [[nodiscard]] IndexSubset without_position(std::size_t position) const;

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const int bit = std::countr_zero(bits);
                f(w * 64 + static_cast<std::size_t>(bit) + 1);
                bits &= bits - 1;
            }
        }
    }

    friend bool operator==(const IndexSubset& a, const IndexSubset& b) noexcept {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }

    struct Hash {
        std::size_t operator()(const IndexSubset& s) const noexcept;
    };

private:
    IndexSubset(std::size_t universe, std::size_t count);

    std::size_t universe_ = 0;
    std::size_t count_ = 0;
    boost::container::small_vector<std::uint64_t, 2> words_;
};

struct EvalStats {
    std::uint64_t recursive_calls = 0;
    std::uint64_t base_case_calls = 0;
    std::uint64_t memo_hits = 0;

    EvalStats& operator+=(const EvalStats& other) noexcept {
        recursive_calls += other.recursive_calls;
        base_case_calls += other.base_case_calls;
        memo_hits += other.memo_hits;
        return *this;
    }
    friend bool operator==(const EvalStats&, const EvalStats&) = default;
};

/// Permutation (1-based) that sorts a sequence into nondecreasing order.
struct SortWitness {
    std::vector<std::size_t> perm;
    friend bool operator==(const SortWitness&, const SortWitness&) = default;
};

/// Work limit for the exponential recursions. For naive evaluation the
/// limit applies to base-case calls, for memoized evaluation to the
/// number of distinct memo entries.
struct Budget {
    static constexpr std::uint64_t default_limit = std::uint64_t{1} << 24;
    std::uint64_t max_calls = default_limit;
};

} // namespace ordstat
