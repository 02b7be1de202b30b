#pragma once

#include <optional>
#include <string>
#include <vector>

#include "krull/ring_expr.hpp"

namespace krull {

enum class Effect { Exact, Lower, Upper, Infinite, Empty, Note };
std::string to_string(Effect effect);

/// One rule application. `citation` states the mathematical fact used.
struct TraceEntry {
  std::string rule;
  std::string citation;
  /// Canonical text of the expression the rule was applied to.
  std::string node;
  Effect effect = Effect::Note;
  Count value;
  std::vector<std::string> premises;
};

struct KernelCheck {
  std::string node;
  /// "affine" (dim_affine) or "generic-fiber" (dim_generic_fiber).
  std::string method;
  DimensionValue value = DimensionValue::exact(0);
  /// The node's settled value equals the kernel value.
  bool consistent = false;
};

struct DimensionResult {
  DimensionValue value = DimensionValue::exact(0);
  std::vector<TraceEntry> trace;
  /// Presentation used for the kernel cross-check of the root, if any.
  std::optional<AffineAlgebra> flattened;
  std::vector<KernelCheck> kernel_checks;
  /// Some premise rests on a caller assertion.
  bool asserted = false;
  /// trdeg over the base of the fraction field, when a domain rule fired at the root.
  std::optional<std::uint64_t> trdeg;
};

struct EvaluateOptions {
  EngineOptions engine;
  /// Treat expressions not structurally known to be Noetherian as Noetherian.
  bool assert_noetherian = false;
  /// Accept Frac of rings without a domain certificate.
  bool assert_domain = false;
};

/// Sum of all but the largest trdeg; Infinite when two are infinite.
/// Throws UsageError on an empty list or mixed base fields.
DimensionResult rule_thm24(const std::vector<FieldExtensionDescriptor>& factors);

/// dim K(X_1..X_n) ⊗ A >= n + dim S^{-1}A, S = K[t_1..t_n] - {0}.
TraceEntry rule_thm1_lower(std::uint64_t n, const DimensionValue& localized);
/// dim K(X_1..X_n) ⊗ A <= dim A + n for Noetherian A; nothing otherwise.
std::optional<TraceEntry> rule_thm1_upper(std::uint64_t n, const DimensionValue& dim_a, bool noetherian);
/// Infinite when the field leg and A both have infinite transcendence degree.
std::optional<TraceEntry> rule_thm1_infinite(const Count& leg_trdeg, const Count& subfield_trdeg);
/// Exact n + dim A when A is Noetherian and contains a subfield of trdeg >= n;
/// otherwise the interval [min(n, m) + dim A, n + dim A] (upper only when Noetherian).
DimensionResult rule_cor23(std::uint64_t n, const DimensionValue& dim_a, bool noetherian, const Count& subfield_trdeg);
/// Note: L is integral over its transcendental part, so L ⊗ M and the
/// purely transcendental part tensored with M have equal dimension.
std::optional<TraceEntry> rule_integral_eq(const FieldExtensionDescriptor& desc);
/// Exact 0 when every variable satisfies a monic univariate generator.
std::optional<TraceEntry> rule_integral_eq(const AffineAlgebra& algebra);
/// L ⊗ A is faithfully flat over K(X_1..X_k) ⊗ A when k < trdeg L; the
/// lower bound of the smaller ring carries over.
std::optional<TraceEntry> rule_faithflat_lb(const Count& leg_trdeg, std::uint64_t k, const Count& sub_lower);
/// dim K[x][1/f] = n for f != 0.
std::optional<TraceEntry> rule_lem26(const AffineAlgebra& algebra, const Polynomial& f);
/// dim A[1/f] = dim A for a non-zero-divisor f.
std::optional<TraceEntry> rule_thm27(ZeroDivisorStatus status, const DimensionValue& dim_a);
/// dim A = trdeg Frac(A) for a certified affine domain.
std::optional<TraceEntry> rule_cor28(const AffineAlgebra& algebra, const PrimalityCertificate& certificate,
                                     const EngineOptions& options = {});

/// Primality certificate found syntactically: (0), a principal ideal with
/// irreducibility evidence, or x_i - t_i relations over such a base.
/// nullptr when none applies.
CertificatePtr detect_prime_certificate(const IdealPresentation& ideal);

/// K[t_1..t_n] -> A injective, with K the coefficient field of A.
bool algebraically_independent(const AffineAlgebra& algebra, const std::vector<Polynomial>& elements,
                               const EngineOptions& options = {});

/// Applies every applicable rule bottom-up, runs the kernel on every node
/// with an affine presentation and intersects the bounds. Throws
/// InconsistencyError when two sources disagree.
DimensionResult evaluate(const RingExpr& expr, const EvaluateOptions& options = {});

}  // namespace krull
