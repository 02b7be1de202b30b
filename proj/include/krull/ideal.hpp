#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "krull/options.hpp"
#include "krull/polynomial.hpp"

namespace krull {

/// Generators of an ideal of a polynomial ring, plus a memo of reduced
/// Groebner bases keyed by monomial order. Copies share the memo.
/// The zero ideal is the generator list {0}.
class IdealPresentation {
 public:
  /// An empty generator list is read as {0}. Throws UsageError when a
  /// generator lives in another ring.
  IdealPresentation(PolynomialRing ring, std::vector<Polynomial> generators);

  const PolynomialRing& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  /// Every generator is zero.
  bool is_zero_ideal() const;

  /// Reduced basis (monic, sorted by leading monomial descending); the zero
  /// ideal has the empty basis. Computed once per order.
  std::vector<Polynomial> groebner_basis(const MonomialOrder& order, const EngineOptions& options = {}) const;

  std::string to_string() const;

 private:
  struct Memo {
    std::mutex mutex;
    std::map<std::string, std::shared_ptr<const std::vector<Polynomial>>> bases;
  };
  PolynomialRing ring_;
  std::vector<Polynomial> generators_;
  std::shared_ptr<Memo> memo_;
};

/// Full reduction of f by `basis`. Divisors are tried in order of leading
/// monomial, largest first, so the remainder is deterministic.
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis, const MonomialOrder& order);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);

/// Reduced Groebner basis via Buchberger's algorithm with the normal
/// selection strategy and both Buchberger criteria. Throws BudgetExhausted
/// past options.max_pair_reductions. Fills the presentation's memo.
std::vector<Polynomial> buchberger(const IdealPresentation& ideal, const MonomialOrder& order,
                                   const EngineOptions& options = {});

bool ideal_membership(const Polynomial& f, const IdealPresentation& ideal, const EngineOptions& options = {});
/// Mutual containment of generators.
bool same_ideal(const IdealPresentation& a, const IdealPresentation& b, const EngineOptions& options = {});
bool contains_one(const IdealPresentation& ideal, const EngineOptions& options = {});

/// I intersected with K[keep], generators expressed in the same ring.
IdealPresentation eliminate(const IdealPresentation& ideal, const std::vector<std::size_t>& keep,
                            const EngineOptions& options = {});
IdealPresentation eliminate(const IdealPresentation& ideal, const std::vector<std::string>& keep,
                            const EngineOptions& options = {});

/// (I : f). Uses I ∩ (f) = (t*I + (1-t)*f) ∩ K[x] and divides by f.
IdealPresentation ideal_quotient(const IdealPresentation& ideal, const Polynomial& f,
                                 const EngineOptions& options = {});
/// I ∩ J by the tag-variable construction.
IdealPresentation intersect(const IdealPresentation& a, const IdealPresentation& b, const EngineOptions& options = {});
/// (I : f^inf) = (I + (fY - 1)) ∩ K[x].
IdealPresentation saturate(const IdealPresentation& ideal, const Polynomial& f, const EngineOptions& options = {});

/// The ideal generated by I's generators in a ring with extra trailing variables.
IdealPresentation extend_ideal(const IdealPresentation& ideal, const PolynomialRing& larger);
/// Drop trailing variables; every generator must avoid them.
Polynomial restrict_polynomial(const Polynomial& p, const PolynomialRing& smaller);

/// K[u_1..u_m, x_1..x_n] for a ring K(u)[x]: parameters become the leading
/// variables. Identity shape for rings over Q or F_p.
PolynomialRing parameter_flattened_ring(const PolynomialRing& ring);
/// p times the lcm of its coefficient denominators, read in the flat ring.
Polynomial clear_parameter_denominators(const Polynomial& p, const PolynomialRing& flat);
/// J ∩ K[u][x] for J in K(u)[x], in parameter_flattened_ring. Returns the
/// ideal itself for rings over Q or F_p.
IdealPresentation contract_parameters(const IdealPresentation& ideal, const EngineOptions& options = {});

}  // namespace krull
