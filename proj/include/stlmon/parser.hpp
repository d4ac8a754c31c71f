#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "stlmon/formula.hpp"

namespace stlmon {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, size_t position)
      : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  size_t position() const { return position_; }

 private:
  size_t position_;
};

/* Parse a formula from its textual form. Whitespace is insignificant and
 * "#" starts a comment running to end of line. When `dim` is given, every
 * variable index is checked against it. */
Formula parse_formula(std::string_view text, std::optional<int> dim = std::nullopt);

}  // namespace stlmon
