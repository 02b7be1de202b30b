#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace krull {

using Exponents = std::vector<std::uint32_t>;

/// Term of a polynomial in the parameters of a rational function field.
/// Coefficients live in the ground field (Q, or F_p stored as 0 <= c < p).
struct ParamTerm {
  Exponents exponents;
  mpq_class coeff;

  friend bool operator==(const ParamTerm& a, const ParamTerm& b) {
    return a.exponents == b.exponents && a.coeff == b.coeff;
  }
};

/// Sorted lexicographically descending on exponents, no zero coefficients.
using ParamPoly = std::vector<ParamTerm>;

/// Element of K(t_1..t_m): reduced fraction with a monic denominator.
struct RationalFunction {
  ParamPoly num;
  ParamPoly den;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num == b.num && a.den == b.den;
  }
};

/// An element of some CoefficientField. Meaningless without its field:
/// all arithmetic goes through CoefficientField.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(mpq_class value) : rep_(std::move(value)) {}
  explicit Scalar(RationalFunction value) : rep_(std::move(value)) {}

  bool is_ground() const { return std::holds_alternative<mpq_class>(rep_); }
  const mpq_class& ground() const { return std::get<mpq_class>(rep_); }
  const RationalFunction& fraction() const { return std::get<RationalFunction>(rep_); }

  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  std::variant<mpq_class, RationalFunction> rep_;
};

enum class FieldKind { Rationals, PrimeField, RationalFunctions };

/// Coefficient field: Q, F_p, or a single transcendental layer K(t_1..t_m)
/// over Q or F_p. Immutable and cheap to copy.
class CoefficientField {
 public:
  static CoefficientField rationals();
  static CoefficientField prime_field(std::uint64_t p);
  /// Throws UsageError when base is itself a function field (tower depth 1)
  /// or when parameter names repeat.
  static CoefficientField rational_functions(const CoefficientField& base,
                                             std::vector<std::string> parameters);

  FieldKind kind() const { return data_->kind; }
  std::uint64_t characteristic() const { return data_->p; }
  bool is_function_field() const { return data_->kind == FieldKind::RationalFunctions; }
  /// Q or F_p underneath.
  CoefficientField ground() const;
  const std::vector<std::string>& parameters() const { return data_->parameters; }
  std::size_t parameter_count() const { return data_->parameters.size(); }

  bool operator==(const CoefficientField& other) const;
  bool operator!=(const CoefficientField& other) const { return !(*this == other); }
  std::string to_string() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_integer(long value) const;
  /// Throws UsageError if the denominator vanishes in characteristic p.
  Scalar from_rational(const mpq_class& value) const;
  Scalar parameter(std::size_t index) const;
  /// Build num/den from parameter polynomials over the ground field.
  Scalar fraction(ParamPoly num, ParamPoly den) const;
  /// Image of a ground-field scalar (of the same characteristic) in this field.
  Scalar embed_ground(const Scalar& ground_value) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  /// Throws UsageError on zero.
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;
  /// True when the scalar lies in the ground field (always, unless function field).
  bool is_ground_constant(const Scalar& a) const;
  /// Number of printed summands; used to decide on parentheses.
  std::size_t summand_count(const Scalar& a) const;
  bool is_negative_literal(const Scalar& a) const;

  std::string format(const Scalar& a) const;

 private:
  struct Data {
    FieldKind kind = FieldKind::Rationals;
    std::uint64_t p = 0;
    std::vector<std::string> parameters;
  };
  explicit CoefficientField(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

bool is_prime(std::uint64_t n);

/// Polynomials over the ground field Q or F_p (characteristic p, 0 for Q).
namespace param {

mpq_class reduce(const mpq_class& value, std::uint64_t p);
ParamPoly constant(const mpq_class& value, std::size_t arity, std::uint64_t p);
ParamPoly add(const ParamPoly& a, const ParamPoly& b, std::uint64_t p);
ParamPoly neg(const ParamPoly& a, std::uint64_t p);
ParamPoly sub(const ParamPoly& a, const ParamPoly& b, std::uint64_t p);
ParamPoly mul(const ParamPoly& a, const ParamPoly& b, std::uint64_t p);
ParamPoly scale(const ParamPoly& a, const mpq_class& c, std::uint64_t p);
/// Exact quotient; throws Error when b does not divide a.
ParamPoly divide_exact(const ParamPoly& a, const ParamPoly& b, std::uint64_t p);
/// Greatest common divisor, normalized so its grevlex-leading coefficient is 1.
/// Recursive primitive remainder sequence over K[t_{k+1}..t_m][t_k].
ParamPoly gcd(const ParamPoly& a, const ParamPoly& b, std::uint64_t p);
/// Coefficient of the grevlex-leading term.
const mpq_class& leading_coeff_grevlex(const ParamPoly& a);
/// Reduced fraction with a monic (grevlex) denominator. den must be nonzero.
RationalFunction normalize(ParamPoly num, ParamPoly den, std::uint64_t p);

}  // namespace param

}  // namespace krull
