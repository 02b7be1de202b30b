#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "krull/field.hpp"

namespace krull {

/// Exponent vector, one entry per ambient ring variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : exponents_(arity, 0) {}
  explicit Monomial(Exponents exponents) : exponents_(std::move(exponents)) {}

  std::size_t arity() const { return exponents_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exponents_[i]; }
  const Exponents& exponents() const { return exponents_; }

  std::uint64_t degree() const;
  bool is_one() const;
  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  /// Bitmask of variables with a positive exponent (first 64 variables).
  std::uint64_t support() const;

  Monomial operator*(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  /// this / divisor; divisor must divide this.
  Monomial quotient(const Monomial& divisor) const;
  /// Same exponents with `extra` zero entries appended.
  Monomial extended(std::size_t extra) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Plain lexicographic comparison of exponent vectors (storage order only).
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  Exponents exponents_;
};

/// Lex and GrevLex rank variables in ring order (first variable largest).
/// BlockElimination is the product order grevlex(block) x grevlex(rest):
/// anything containing a block variable is above every block-free monomial.
class MonomialOrder {
 public:
  enum class Kind { Lex, GrevLex, BlockElimination };

  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::GrevLex, {}); }
  static MonomialOrder elimination(std::vector<std::size_t> block);

  Kind kind() const { return kind_; }
  const std::vector<std::size_t>& block() const { return block_; }

  /// Throws UsageError on arity mismatch.
  std::strong_ordering compare(const Monomial& u, const Monomial& v) const;
  bool greater(const Monomial& u, const Monomial& v) const { return compare(u, v) > 0; }

  /// Stable textual key, used for basis caching and reports.
  std::string key() const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind kind, std::vector<std::size_t> block);
  Kind kind_;
  std::vector<std::size_t> block_;
  std::uint64_t block_mask_ = 0;
};

std::strong_ordering compare(const Monomial& u, const Monomial& v, const MonomialOrder& order);

/// Parses "lex" / "grevlex".
MonomialOrder parse_order(const std::string& name);

}  // namespace krull
