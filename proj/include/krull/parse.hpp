#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "krull/error.hpp"
#include "krull/polynomial.hpp"

namespace krull {

class ParseError : public UsageError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Polynomial text: integer coefficients, `/` by nonzero scalars, `^` powers,
/// optional `*` (juxtaposition multiplies), parentheses. Identifiers resolve
/// to ring variables first, then to function-field parameters.
Polynomial parse_polynomial(std::string_view text, const PolynomialRing& ring);
/// Comma-separated list; an empty string yields an empty list.
std::vector<Polynomial> parse_polynomial_list(std::string_view text, const PolynomialRing& ring);

}  // namespace krull
