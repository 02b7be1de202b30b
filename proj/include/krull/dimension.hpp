#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "krull/certificate.hpp"
#include "krull/ideal.hpp"

namespace krull {

/// K[x]/I. A presentation of the unit ideal is the zero ring.
class AffineAlgebra {
 public:
  explicit AffineAlgebra(IdealPresentation presentation) : presentation_(std::move(presentation)) {}
  /// K[vars]/(0).
  static AffineAlgebra polynomial_ring(PolynomialRing ring) { return AffineAlgebra(IdealPresentation(std::move(ring), {})); }

  const IdealPresentation& presentation() const { return presentation_; }
  const PolynomialRing& ring() const { return presentation_.ring(); }
  const CoefficientField& base() const { return presentation_.ring().field(); }

  std::string to_string() const;

 private:
  IdealPresentation presentation_;
};

class DimensionValue {
 public:
  enum class Kind { Exact, EmptyRing, Infinite, Interval };

  static DimensionValue exact(std::uint64_t d) { return DimensionValue(Kind::Exact, d, d); }
  static DimensionValue empty_ring() { return DimensionValue(Kind::EmptyRing, 0, 0); }
  static DimensionValue infinite() { return DimensionValue(Kind::Infinite, 0, std::nullopt); }
  /// [lo, hi], hi = nullopt meaning unbounded. Equal bounds collapse to
  /// Exact; throws UsageError when lo > hi.
  static DimensionValue interval(std::uint64_t lo, std::optional<std::uint64_t> hi);

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::Exact; }
  /// Throws UsageError unless Exact.
  std::uint64_t value() const;
  std::uint64_t lower() const { return lo_; }
  std::optional<std::uint64_t> upper() const { return hi_; }

  std::string to_string() const;
  friend bool operator==(const DimensionValue&, const DimensionValue&) = default;

 private:
  DimensionValue(Kind kind, std::uint64_t lo, std::optional<std::uint64_t> hi) : kind_(kind), lo_(lo), hi_(hi) {}
  Kind kind_;
  std::uint64_t lo_;
  std::optional<std::uint64_t> hi_;
};

/// Largest |U| with no generator's support inside U, plus one such U as a
/// bitmask. Generators are monomials of `arity` variables.
std::pair<std::size_t, std::uint64_t> max_independent_set(const std::vector<Monomial>& generators, std::size_t arity);

/// Throws UsageError when ring variables plus function-field parameters
/// exceed options.max_variables.
void check_variable_cap(const PolynomialRing& ring, const EngineOptions& options);

DimensionValue dim_affine(const AffineAlgebra& algebra, const EngineOptions& options = {});
DimensionValue dim_affine(const AffineAlgebra& algebra, const MonomialOrder& order, const EngineOptions& options = {});

/// dim K[x][1/f] via K[x, Y]/(fY - 1); f must be nonzero.
DimensionValue dim_poly_localization(const Polynomial& f, const EngineOptions& options = {});

/// K[x, Y]/(I, fY - 1) with Y fresh. Throws UsageError when f lies in I.
AffineAlgebra rabinowitsch_presentation(const AffineAlgebra& algebra, const Polynomial& f,
                                        const EngineOptions& options = {});

DimensionValue dim_localization_element(const AffineAlgebra& algebra, const Polynomial& f,
                                        const EngineOptions& options = {});

enum class ZeroDivisorStatus { ZeroElement, ZeroDivisor, NonZeroDivisor };
std::string to_string(ZeroDivisorStatus status);

/// ZeroElement when f lies in I; otherwise compares (I : f) with I.
ZeroDivisorStatus zero_divisor_status(const AffineAlgebra& algebra, const Polynomial& f,
                                      const EngineOptions& options = {});
/// ZeroElement counts as a zero-divisor.
bool is_zero_divisor(const AffineAlgebra& algebra, const Polynomial& f, const EngineOptions& options = {});

struct HeightResult {
  std::uint64_t height = 0;
  PrimalityCheck primality;
};

/// n - dim K[x]/P. The certificate must verify; throws UsageError when it
/// does not or when P = (1).
HeightResult height_of_prime(const IdealPresentation& prime, const PrimalityCertificate& certificate,
                             const EngineOptions& options = {});

/// dim of K(X_1..X_n) ⊗_K A, computed by reading A's generators over the
/// function field with n fresh parameters. Throws UsageError when A is
/// already over a function field.
DimensionValue dim_generic_fiber(const AffineAlgebra& algebra, std::size_t n, const EngineOptions& options = {});
/// The function-field ring used by dim_generic_fiber.
PolynomialRing generic_fiber_ring(const PolynomialRing& ring, std::size_t n);

struct TrdegResult {
  std::uint64_t trdeg = 0;
  PrimalityCheck domain;
};

/// trdeg_K Frac(A) = dim A for a certified domain. Throws UsageError on an
/// invalid certificate or the zero ring.
TrdegResult trdeg_affine_domain(const AffineAlgebra& algebra, const PrimalityCertificate& certificate,
                                const EngineOptions& options = {});

}  // namespace krull
