#pragma once

// Line-oriented instance text format:
//
//   # comment
//   <color-token> <size>
//
// where <size> is a decimal ("0.25") or a rational ("1/4"). Blank lines are
// ignored.

#include <stdexcept>
#include <string>
#include <string_view>

#include "cbp/core.hpp"

namespace cbp {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Parses "p/q", an integer, or a non-negative decimal. Throws
// std::invalid_argument on anything else (including a zero denominator).
Rational parse_rational(std::string_view text);

// Canonical "p/q" form, or "p" for integers.
std::string format_rational(const Rational& value);

Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& instance);

Instance read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const Instance& instance);

}  // namespace cbp
