#include "krull/dimension.hpp"

#include <algorithm>

#include "krull/error.hpp"

namespace krull {

std::string AffineAlgebra::to_string() const {
  return ring().to_string() + "/" + presentation_.to_string();
}

DimensionValue DimensionValue::interval(std::uint64_t lo, std::optional<std::uint64_t> hi) {
  if (hi && lo > *hi) {
    throw UsageError("empty interval [" + std::to_string(lo) + ", " + std::to_string(*hi) + "]");
  }
  if (hi && lo == *hi) return exact(lo);
  return DimensionValue(Kind::Interval, lo, hi);
}

std::uint64_t DimensionValue::value() const {
  if (kind_ != Kind::Exact) throw UsageError("dimension " + to_string() + " is not an exact integer");
  return lo_;
}

std::string DimensionValue::to_string() const {
  switch (kind_) {
    case Kind::Exact:
      return std::to_string(lo_);
    case Kind::EmptyRing:
      return "empty";
    case Kind::Infinite:
      return "inf";
    case Kind::Interval:
      return "[" + std::to_string(lo_) + ", " + (hi_ ? std::to_string(*hi_) : std::string("inf")) + "]";
  }
  return "";
}

std::pair<std::size_t, std::uint64_t> max_independent_set(const std::vector<Monomial>& generators,
                                                          std::size_t arity) {
  if (arity > 63) throw UsageError("independent-set enumeration supports at most 63 variables");
  std::vector<std::uint64_t> supports;
  supports.reserve(generators.size());
  for (const auto& g : generators) supports.push_back(g.support());
  const std::uint64_t full = (std::uint64_t{1} << arity) - 1;
  const auto independent = [&](std::uint64_t u) {
    for (const auto s : supports) {
      if ((s & ~u) == 0) return false;
    }
    return true;
  };
  // Scan by decreasing size; within a size, increasing mask value.
  for (std::size_t k = arity + 1; k-- > 0;) {
    if (k == 0) return {0, 0};
    std::uint64_t u = (std::uint64_t{1} << k) - 1;
    while (u <= full) {
      if (independent(u)) return {k, u};
      // Next mask with the same popcount (Gosper's hack).
      const std::uint64_t c = u & (~u + 1);
      const std::uint64_t r = u + c;
      if (r == 0 || r > full) break;
      u = (((r ^ u) >> 2) / c) | r;
    }
  }
  return {0, 0};
}

void check_variable_cap(const PolynomialRing& ring, const EngineOptions& options) {
  if (ring.user_variable_count() > options.max_variables) {
    throw UsageError(ring.to_string() + " has " + std::to_string(ring.user_variable_count()) +
                     " variables including parameters; the cap is " + std::to_string(options.max_variables) +
                     " (raise it with --max-vars)");
  }
}

DimensionValue dim_affine(const AffineAlgebra& algebra, const MonomialOrder& order, const EngineOptions& options) {
  const auto basis = algebra.presentation().groebner_basis(order, options);
  std::vector<Monomial> leads;
  for (const auto& g : basis) {
    if (g.is_constant()) return DimensionValue::empty_ring();
    leads.push_back(g.leading_term(order).first);
  }
  return DimensionValue::exact(max_independent_set(leads, algebra.ring().variable_count()).first);
}

DimensionValue dim_affine(const AffineAlgebra& algebra, const EngineOptions& options) {
  return dim_affine(algebra, MonomialOrder::grevlex(), options);
}

AffineAlgebra rabinowitsch_presentation(const AffineAlgebra& algebra, const Polynomial& f,
                                        const EngineOptions& options) {
  const auto& ring = algebra.ring();
  if (f.ring() != ring) throw UsageError("element lives in " + f.ring().to_string() + ", expected " + ring.to_string());
  if (ideal_membership(f, algebra.presentation(), options)) {
    throw UsageError(f.to_string() + " is zero in " + algebra.to_string());
  }
  const auto larger = ring.extended({ring.fresh_name("Y")});
  const auto y = Polynomial::variable(larger, ring.variable_count());
  std::vector<Polynomial> gens;
  for (const auto& g : algebra.presentation().generators()) {
    if (!g.is_zero()) gens.push_back(transfer_by_name(g, larger));
  }
  gens.push_back(transfer_by_name(f, larger) * y - Polynomial::constant(larger, larger.field().one()));
  return AffineAlgebra(IdealPresentation(larger, std::move(gens)));
}

DimensionValue dim_localization_element(const AffineAlgebra& algebra, const Polynomial& f,
                                        const EngineOptions& options) {
  return dim_affine(rabinowitsch_presentation(algebra, f, options), options);
}

DimensionValue dim_poly_localization(const Polynomial& f, const EngineOptions& options) {
  if (f.is_zero()) throw UsageError("cannot invert the zero polynomial");
  return dim_localization_element(AffineAlgebra::polynomial_ring(f.ring()), f, options);
}

std::string to_string(ZeroDivisorStatus status) {
  switch (status) {
    case ZeroDivisorStatus::ZeroElement:
      return "zero element";
    case ZeroDivisorStatus::ZeroDivisor:
      return "zero-divisor";
    case ZeroDivisorStatus::NonZeroDivisor:
      return "non-zero-divisor";
  }
  return "";
}

ZeroDivisorStatus zero_divisor_status(const AffineAlgebra& algebra, const Polynomial& f,
                                      const EngineOptions& options) {
  if (f.ring() != algebra.ring()) throw UsageError("element lives in another ring");
  if (ideal_membership(f, algebra.presentation(), options)) return ZeroDivisorStatus::ZeroElement;
  const auto quotient = ideal_quotient(algebra.presentation(), f, options);
  return same_ideal(quotient, algebra.presentation(), options) ? ZeroDivisorStatus::NonZeroDivisor
                                                               : ZeroDivisorStatus::ZeroDivisor;
}

bool is_zero_divisor(const AffineAlgebra& algebra, const Polynomial& f, const EngineOptions& options) {
  return zero_divisor_status(algebra, f, options) != ZeroDivisorStatus::NonZeroDivisor;
}

HeightResult height_of_prime(const IdealPresentation& prime, const PrimalityCertificate& certificate,
                             const EngineOptions& options) {
  if (contains_one(prime, options)) throw UsageError("height of the unit ideal is undefined");
  auto check = check_primality(prime, certificate, options);
  if (!check.valid) throw UsageError("primality certificate rejected: " + check.detail);
  const auto d = dim_affine(AffineAlgebra(prime), options).value();
  return {prime.ring().variable_count() - d, std::move(check)};
}

PolynomialRing generic_fiber_ring(const PolynomialRing& ring, std::size_t n) {
  const auto& field = ring.field();
  if (field.is_function_field()) {
    throw UsageError("tower depth exceeded: " + ring.to_string() + " is already over a function field");
  }
  std::vector<std::string> names;
  const auto taken = [&](const std::string& s) {
    return ring.index_of(s).has_value() || std::find(names.begin(), names.end(), s) != names.end();
  };
  for (std::size_t i = 1; names.size() < n; ++i) {
    std::string name = "X" + std::to_string(i);
    while (taken(name)) name = "_" + name;
    names.push_back(name);
  }
  return PolynomialRing(CoefficientField::rational_functions(field, names), ring.variables());
}

DimensionValue dim_generic_fiber(const AffineAlgebra& algebra, std::size_t n, const EngineOptions& options) {
  const auto target = generic_fiber_ring(algebra.ring(), n);
  if (n == 0) return dim_affine(algebra, options);
  std::vector<Polynomial> gens;
  for (const auto& g : algebra.presentation().generators()) gens.push_back(transfer_by_name(g, target));
  return dim_affine(AffineAlgebra(IdealPresentation(target, std::move(gens))), options);
}

TrdegResult trdeg_affine_domain(const AffineAlgebra& algebra, const PrimalityCertificate& certificate,
                                const EngineOptions& options) {
  const auto d = dim_affine(algebra, options);
  if (d.kind() == DimensionValue::Kind::EmptyRing) throw UsageError("the zero ring has no fraction field");
  auto check = check_primality(algebra.presentation(), certificate, options);
  if (!check.valid) throw UsageError("domain certificate rejected: " + check.detail);
  return {d.value(), std::move(check)};
}

}  // namespace krull
