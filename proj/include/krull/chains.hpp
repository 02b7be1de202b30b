#pragma once

#include <optional>
#include <string>
#include <vector>

#include "krull/certificate.hpp"
#include "krull/dimension.hpp"

namespace krull {

struct ChainLink {
  IdealPresentation ideal;
  /// A generator of this link outside the previous one; empty for the first link.
  std::optional<Polynomial> strictness_witness;
  CertificatePtr primality;
};

/// P_0 ⊊ ... ⊊ P_m ⊊ (P_m, X_1 - t_1) ⊊ ... ⊊ (P_m, X_1 - t_1, ..., X_n - t_n)
/// in A[X_1..X_n], presented inside K[y, X].
struct ChainCertificate {
  PolynomialRing ring;
  std::vector<ChainLink> links;
  /// Indices of X_1..X_n in `ring`; T = K[X] - {0}.
  std::vector<std::size_t> t_variables;
  /// t_1..t_n, read in `ring`.
  std::vector<Polynomial> witnesses;
  /// Number of links carried over from the base chain.
  std::size_t base_length = 0;
};

/// Extends each base prime of A to A[X] and appends one link per witness.
/// `base_chain` holds ideals of A's ring containing A's ideal, with one
/// certificate each. Throws UsageError when the base chain is not strictly
/// ascending, a fresh name clashes or a witness is not an element of A.
ChainCertificate build_chain(const AffineAlgebra& algebra, const std::vector<IdealPresentation>& base_chain,
                             const std::vector<CertificatePtr>& base_certificates,
                             const std::vector<Polynomial>& witnesses, const std::vector<std::string>& fresh,
                             const EngineOptions& options = {});

/// The same certificate read in `larger`, a ring with extra trailing variables.
CertificatePtr extend_certificate(const PrimalityCertificate& certificate, const PolynomialRing& larger);

/// Each link contains the previous one and its strictness witness lies
/// outside the previous link.
bool verify_strictness(const ChainCertificate& chain, const EngineOptions& options = {});
/// No link meets K[X] - {0}: the contraction of every link to K[X] is (0).
/// Links over K(u) are first contracted to K[u][y, X].
bool verify_avoidance(const ChainCertificate& chain, const EngineOptions& options = {});
/// Secondary check through evaluation: every generator of every extension
/// link maps into P_m under X_i -> t_i, and the evaluation K[Z] -> A/P_m,
/// Z_i -> t_i, is injective.
bool verify_evaluation(const ChainCertificate& chain, const EngineOptions& options = {});

struct ChainVerification {
  bool strict = false;
  bool avoidance = false;
  bool evaluation = false;
  bool primality = false;
  bool asserted = false;
  std::vector<std::string> details;
  bool ok() const { return strict && avoidance && evaluation && primality; }
};

ChainVerification verify_chain(const ChainCertificate& chain, const EngineOptions& options = {});

/// links - 1, once every check passes; throws UsageError otherwise.
std::uint64_t certified_lower_bound(const ChainCertificate& chain, const EngineOptions& options = {});

}  // namespace krull
