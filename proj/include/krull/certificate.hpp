#pragma once

#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "krull/ideal.hpp"

namespace krull {

class PrimalityCertificate;
using CertificatePtr = std::shared_ptr<const PrimalityCertificate>;

/// The ideal is (0) in a polynomial ring over a field.
struct ZeroIdealInDomain {};

/// The ideal is (generator) and the generator passes one of the
/// irreducibility checks of irreducibility_evidence().
struct PrincipalIrreducible {
  Polynomial generator;
};

/// J = P + (X_1 - t_1, ..., X_k - t_k) where no t_i involves any X_j.
/// Evaluation X_i -> t_i identifies the quotient by J with the quotient by P,
/// so J is prime whenever P is.
struct SubstitutionTransfer {
  IdealPresentation base_prime;
  CertificatePtr base_certificate;
  std::vector<std::size_t> variables;
  std::vector<Polynomial> values;
};

/// J = P + (f*Y - 1) with f outside P and Y fresh: the quotient by J is the
/// localization (K[x]/P)[1/f], a domain whenever P is prime.
struct RabinowitschOfPrime {
  IdealPresentation base_prime;
  CertificatePtr base_certificate;
  Polynomial element;
  std::size_t variable;
};

/// Caller-supplied; accepted but flagged in every report.
struct Asserted {
  std::string note;
};

class PrimalityCertificate {
 public:
  using Kind = std::variant<ZeroIdealInDomain, PrincipalIrreducible, SubstitutionTransfer, RabinowitschOfPrime, Asserted>;

  template <class T>
    requires std::is_constructible_v<Kind, T>
  PrimalityCertificate(T kind) : kind_(std::move(kind)) {}  // NOLINT(google-explicit-constructor)

  const Kind& kind() const { return kind_; }
  std::string kind_name() const;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&kind_);
  }

 private:
  Kind kind_;
};

CertificatePtr make_certificate(PrimalityCertificate::Kind kind);

struct PrimalityCheck {
  bool valid = false;
  /// Some certificate in the tree is Asserted.
  bool asserted = false;
  std::string detail;
};

/// Checks that `certificate` proves `ideal` prime, recursing into base
/// certificates. Never decides primality on its own.
PrimalityCheck check_primality(const IdealPresentation& ideal, const PrimalityCertificate& certificate,
                               const EngineOptions& options = {});

/// P + (X_i - t_i).
IdealPresentation substitution_ideal(const SubstitutionTransfer& cert);
/// P + (f*Y - 1).
IdealPresentation rabinowitsch_ideal(const RabinowitschOfPrime& cert);

/// Soundness of the evaluation X_i -> t_i: every generator of P + (X - t)
/// maps into P and each X_i - t_i maps to 0. Throws UsageError on a
/// malformed map (t_i involving some X_j, repeated or unknown variables).
bool verify_substitution_transfer(const SubstitutionTransfer& cert, const EngineOptions& options = {});

/// A short description of why p is irreducible, if one of the supported
/// criteria applies: linear in some variable with coprime coefficients,
/// coprime-exponent binomial x^a - c*y^b, or univariate of degree 2 or 3
/// without roots in the coefficient field.
std::optional<std::string> irreducibility_evidence(const Polynomial& p);

}  // namespace krull
