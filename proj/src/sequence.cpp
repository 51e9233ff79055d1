#include "ordstat/sequence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "ordstat/errors.hpp"

namespace ordstat {

RealSequence::RealSequence(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw InvalidInput("sequence must contain at least one value");
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw InvalidInput("value at position " + std::to_string(k + 1) + " is not finite");
        }
    }
}

RealSequence::RealSequence(std::initializer_list<double> values)
    : RealSequence(std::vector<double>(values)) {}

double RealSequence::at(std::size_t k) const {
    if (k < 1 || k > values_.size()) {
        throw IndexError("index " + std::to_string(k) + " outside 1.." + std::to_string(values_.size()));
    }
    return values_[k - 1];
}

void check_rank(Rank rank, std::size_t length) {
    if (length == 0) {
        throw InvalidInput("sequence must contain at least one value");
    }
    if (rank.value < 1 || rank.value > length) {
        throw RankError("rank " + std::to_string(rank.value) + " outside 1.." + std::to_string(length));
    }
}

IndexSubset::IndexSubset(std::size_t universe, std::size_t count)
    : universe_(universe), count_(count), words_((universe + 63) / 64, 0) {}

IndexSubset IndexSubset::full(std::size_t universe) {
    if (universe == 0) {
        throw InvalidInput("index subset must be non-empty");
    }
    IndexSubset s(universe, universe);
    for (std::size_t w = 0; w < s.words_.size(); ++w) {
        const std::size_t bits = std::min<std::size_t>(64, universe - w * 64);
        s.words_[w] = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    }
    return s;
}

IndexSubset IndexSubset::from_indices(std::size_t universe, std::span<const std::size_t> indices) {
    IndexSubset s(universe, 0);
    for (std::size_t i : indices) {
        if (i < 1 || i > universe) {
            throw IndexError("index " + std::to_string(i) + " outside 1.." + std::to_string(universe));
        }
        const std::uint64_t mask = std::uint64_t{1} << ((i - 1) % 64);
        auto& word = s.words_[(i - 1) / 64];
        if ((word & mask) == 0) {
            word |= mask;
            ++s.count_;
        }
    }
    if (s.count_ == 0) {
        throw InvalidInput("index subset must be non-empty");
    }
    return s;
}

bool IndexSubset::contains(std::size_t index) const noexcept {
    if (index < 1 || index > universe_) {
        return false;
    }
    return (words_[(index - 1) / 64] >> ((index - 1) % 64)) & 1U;
}

std::vector<std::size_t> IndexSubset::indices() const {
    std::vector<std::size_t> out;
    out.reserve(count_);
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
}

std::size_t IndexSubset::nth(std::size_t position) const {
    if (position < 1 || position > count_) {
        throw IndexError("position " + std::to_string(position) + " outside 1.." + std::to_string(count_));
    }
    std::size_t remaining = position;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        const auto pop = static_cast<std::size_t>(std::popcount(words_[w]));
        if (remaining > pop) {
            remaining -= pop;
            continue;
        }
        std::uint64_t bits = words_[w];
        for (std::size_t r = 1; r < remaining; ++r) {
            bits &= bits - 1;
        }
        return w * 64 + static_cast<std::size_t>(std::countr_zero(bits)) + 1;
    }
    throw IndexError("corrupt index subset"); // unreachable with a consistent count_
}

IndexSubset IndexSubset::without_position(std::size_t position) const {
    if (count_ < 2) {
        throw InvalidInput("cannot eliminate from a single-element subset");
    }
    const std::size_t index = nth(position);
    IndexSubset out = *this;
    out.words_[(index - 1) / 64] &= ~(std::uint64_t{1} << ((index - 1) % 64));
    --out.count_;
    return out;
}

std::size_t IndexSubset::Hash::operator()(const IndexSubset& s) const noexcept {
    // splitmix-style mixing per word
    std::uint64_t h = s.universe_ * 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t w : s.words_) {
        std::uint64_t z = w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        h ^= z ^ (z >> 31);
    }
    return static_cast<std::size_t>(h);
}

} // namespace ordstat
