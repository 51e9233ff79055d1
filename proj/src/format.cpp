#include "ordstat/format.hpp"

#include <array>
#include <charconv>

namespace ordstat {

std::string format_real(double value) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

} // namespace ordstat
