#include "ordstat/input.hpp"

#include <charconv>
#include <cmath>
#include <regex>
#include <string>
#include <vector>

#include "json.hpp"

#include "ordstat/errors.hpp"

namespace ordstat {

namespace {

bool is_separator(char c) {
    return c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

double parse_literal(std::string_view tok) {
    static const std::regex literal(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
    if (!std::regex_match(tok.begin(), tok.end(), literal)) {
        throw InvalidInput("not a decimal literal: '" + std::string(tok) + "'");
    }
    if (tok.front() == '+') {
        tok.remove_prefix(1);
    }
    double v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec == std::errc::result_out_of_range || !std::isfinite(v)) {
        throw InvalidInput("literal out of range: '" + std::string(tok) + "'");
    }
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw InvalidInput("not a decimal literal: '" + std::string(tok) + "'");
    }
    return v;
}

RealSequence parse_json_array(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(std::string("invalid JSON input: ") + e.what());
    }
    if (!j.is_array()) {
        throw InvalidInput("JSON input must be an array of numbers");
    }
    std::vector<double> values;
    values.reserve(j.size());
    for (const auto& item : j) {
        if (!item.is_number()) {
            throw InvalidInput("JSON input must contain only numbers");
        }
        values.push_back(item.get<double>());
    }
    return RealSequence(std::move(values));
}

} // namespace

RealSequence parse_sequence(std::string_view text) {
    std::size_t start = 0;
    while (start < text.size() && is_separator(text[start]) && text[start] != ',') {
        ++start;
    }
    if (start < text.size() && text[start] == '[') {
        return parse_json_array(text.substr(start));
    }
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (is_separator(text[pos])) {
            ++pos;
            continue;
        }
        std::size_t end = pos;
        while (end < text.size() && !is_separator(text[end])) {
            ++end;
        }
        values.push_back(parse_literal(text.substr(pos, end - pos)));
        pos = end;
    }
    return RealSequence(std::move(values));
}

} // namespace ordstat
