#pragma once

#include <cstdint>
#include <random>

namespace ordstat::detail {

// mt19937_64 output is fixed by the standard; the std distributions are
// not, so values are derived from raw draws to keep runs reproducible
// across standard libraries.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

private:
    std::mt19937_64 engine_;
};

} // namespace ordstat::detail
