#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "krull/field.hpp"
#include "krull/monomial.hpp"

namespace krull {

/// K[x_1..x_n]. Variable names are distinct and disjoint from the
/// field's parameters. Immutable, cheap to copy, compared structurally.
class PolynomialRing {
 public:
  PolynomialRing(CoefficientField field, std::vector<std::string> variables);

  const CoefficientField& field() const { return data_->field; }
  const std::vector<std::string>& variables() const { return data_->variables; }
  std::size_t variable_count() const { return data_->variables.size(); }
  std::optional<std::size_t> index_of(const std::string& name) const;
  /// Ring variables plus function-field parameters.
  std::size_t user_variable_count() const { return variable_count() + field().parameter_count(); }

  /// Same field, `extra` appended after the existing variables.
  PolynomialRing extended(const std::vector<std::string>& extra) const;
  /// A name clashing with neither variables nor parameters, built from stem.
  std::string fresh_name(const std::string& stem) const;

  bool operator==(const PolynomialRing& other) const;
  bool operator!=(const PolynomialRing& other) const { return !(*this == other); }
  std::string to_string() const;

 private:
  struct Data {
    CoefficientField field;
    std::vector<std::string> variables;
  };
  std::shared_ptr<const Data> data_;
};

struct Term {
  Monomial monomial;
  Scalar coeff;
};

/// Immutable sparse polynomial. Terms are stored grevlex-descending with
/// nonzero coefficients, so equality is a plain comparison of term lists.
class Polynomial {
 public:
  explicit Polynomial(PolynomialRing ring);
  /// Merges repeated monomials, drops zeros, sorts.
  static Polynomial from_terms(PolynomialRing ring, std::vector<Term> terms);
  static Polynomial constant(PolynomialRing ring, const Scalar& value);
  static Polynomial variable(PolynomialRing ring, std::size_t index);
  static Polynomial variable(PolynomialRing ring, const std::string& name);

  const PolynomialRing& ring() const { return ring_; }
  const CoefficientField& field() const { return ring_.field(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::uint64_t total_degree() const;
  /// Bitmask of variables that occur.
  std::uint64_t support() const;
  bool involves(std::size_t variable) const;

  /// Throws UsageError on the zero polynomial.
  std::pair<Monomial, Scalar> leading_term(const MonomialOrder& order) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial scaled(const Scalar& c) const;
  Polynomial times_term(const Monomial& m, const Scalar& c) const;
  Polynomial pow(unsigned exponent) const;
  /// Divide by the leading coefficient under `order` (zero stays zero).
  Polynomial monic(const MonomialOrder& order) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Canonical text, e.g. "3/2*x^2*y - t*z + 1".
  std::string to_string() const;

 private:
  Polynomial(PolynomialRing ring, std::vector<Term> sorted_terms);
  void require_same_ring(const Polynomial& other) const;
  PolynomialRing ring_;
  std::vector<Term> terms_;
};

Polynomial add(const Polynomial& a, const Polynomial& b);
Polynomial mul(const Polynomial& a, const Polynomial& b);
std::pair<Monomial, Scalar> leading_term(const Polynomial& p, const MonomialOrder& order);

/// Exact quotient a / b; throws Error when b does not divide a.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

/// Reduce num/den over Q or F_p: divide by the gcd and make the denominator
/// monic (grevlex leading coefficient 1). 0/den becomes 0/1.
std::pair<Polynomial, Polynomial> rational_function_normalize(const Polynomial& num,
                                                              const Polynomial& den);

/// Coefficient image of `value` (from `source`) in `target`: identity, ground
/// embedding, or parameter renaming by name. Throws UsageError otherwise.
Scalar map_scalar(const CoefficientField& source, const CoefficientField& target, const Scalar& value);

/// Ring homomorphism: variable i of p's ring goes to images[i] (a polynomial
/// of `target`), coefficients through map_scalar.
Polynomial map_polynomial(const Polynomial& p, const PolynomialRing& target,
                          std::span<const Polynomial> images);

/// Re-read p in a ring whose variables include every variable of p's ring by
/// name, possibly over a larger field.
Polynomial transfer_by_name(const Polynomial& p, const PolynomialRing& target);

/// Substitute variable `index` by `value` (same ring).
Polynomial substitute(const Polynomial& p, std::size_t index, const Polynomial& value);

}  // namespace krull
