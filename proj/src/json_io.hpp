#pragma once

#include <algorithm>
#include <istream>
#include <iterator>
#include <string>

#include <json.hpp>

#include "maslov/error.hpp"

namespace maslov::detail {

/// Parses a whole JSON document; syntax errors become ParseError with the
/// 1-based line of the offending byte.
inline nlohmann::json parse_json(std::istream& in, const std::string& what) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto ? upto - 1 : 0), '\n');
        throw ParseError(what + ": " + e.what(), static_cast<std::size_t>(line));
    }
}

}  // namespace maslov::detail
