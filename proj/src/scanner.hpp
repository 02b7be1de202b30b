#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "krull/parse.hpp"

namespace krull::detail {

// Character cursor with line/column tracking for the text grammars.
class Scanner {
 public:
  explicit Scanner(std::string_view text, std::size_t offset = 0) : text_(text), pos_(offset) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      const char got = peek();
      fail(std::string("expected '") + c + "'" + (got ? std::string(" but found '") + got + "'" : " but reached end of input"));
    }
  }
  bool at_identifier() {
    const char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  std::string identifier() {
    if (!at_identifier()) fail("expected identifier");
    const auto start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }
  std::string digits() {
    if (!at_digit()) fail("expected integer");
    const auto start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  std::size_t position() const { return pos_; }
  void reset(std::size_t pos) { pos_ = pos; }
  std::string_view text() const { return text_; }

  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t pos) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(message, line, column);
  }

 private:
  std::string_view text_;
  std::size_t pos_;
};

}  // namespace krull::detail

namespace krull::detail {

// Parses one polynomial starting at the scanner position; stops at the
// first character that cannot continue it (',', ';', ')').
Polynomial parse_polynomial_at(Scanner& scan, const PolynomialRing& ring);

}  // namespace krull::detail
