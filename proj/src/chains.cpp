#include "krull/chains.hpp"

#include <algorithm>

#include "krull/error.hpp"

namespace krull {

namespace {

Polynomial lift(const Polynomial& p, const PolynomialRing& larger) { return transfer_by_name(p, larger); }

IdealPresentation lift(const IdealPresentation& ideal, const PolynomialRing& larger) {
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(lift(g, larger));
  return IdealPresentation(larger, std::move(gens));
}

std::vector<Polynomial> nonzero_generators(const IdealPresentation& ideal) {
  std::vector<Polynomial> out;
  for (const auto& g : ideal.generators()) {
    if (!g.is_zero()) out.push_back(g);
  }
  return out;
}

// First generator of `upper` with nonzero normal form modulo `lower`.
std::optional<Polynomial> find_strictness_witness(const IdealPresentation& lower, const IdealPresentation& upper,
                                                  const EngineOptions& options) {
  for (const auto& g : upper.generators()) {
    if (!ideal_membership(g, lower, options)) return g;
  }
  return std::nullopt;
}

bool contained(const IdealPresentation& a, const IdealPresentation& b, const EngineOptions& options) {
  return std::all_of(a.generators().begin(), a.generators().end(),
                     [&](const Polynomial& g) { return ideal_membership(g, b, options); });
}

}  // namespace

CertificatePtr extend_certificate(const PrimalityCertificate& certificate, const PolynomialRing& larger) {
  struct Extend {
    const PolynomialRing& larger;
    CertificatePtr operator()(const ZeroIdealInDomain& c) const { return make_certificate(c); }
    CertificatePtr operator()(const PrincipalIrreducible& c) const {
      return make_certificate(PrincipalIrreducible{lift(c.generator, larger)});
    }
    CertificatePtr operator()(const SubstitutionTransfer& c) const {
      std::vector<Polynomial> values;
      for (const auto& v : c.values) values.push_back(lift(v, larger));
      return make_certificate(SubstitutionTransfer{lift(c.base_prime, larger), sub(c.base_certificate), c.variables,
                                                   std::move(values)});
    }
    CertificatePtr operator()(const RabinowitschOfPrime& c) const {
      return make_certificate(
          RabinowitschOfPrime{lift(c.base_prime, larger), sub(c.base_certificate), lift(c.element, larger), c.variable});
    }
    CertificatePtr operator()(const Asserted& c) const { return make_certificate(c); }
    CertificatePtr sub(const CertificatePtr& c) const {
      return c ? std::visit(*this, c->kind()) : CertificatePtr{};
    }
  };
  return std::visit(Extend{larger}, certificate.kind());
}

ChainCertificate build_chain(const AffineAlgebra& algebra, const std::vector<IdealPresentation>& base_chain,
                             const std::vector<CertificatePtr>& base_certificates,
                             const std::vector<Polynomial>& witnesses, const std::vector<std::string>& fresh,
                             const EngineOptions& options) {
  const auto& ring = algebra.ring();
  if (base_chain.empty()) throw UsageError("the base chain needs at least one prime");
  if (base_chain.size() != base_certificates.size()) throw UsageError("one certificate per base prime is required");
  if (witnesses.size() != fresh.size()) throw UsageError("one fresh variable per witness is required");
  for (const auto& name : fresh) {
    if (ring.index_of(name)) throw UsageError("fresh variable " + name + " clashes with " + ring.to_string());
  }
  const auto larger = ring.extended(fresh);
  for (const auto& t : witnesses) {
    if (t.ring() != ring) {
      throw UsageError("witness " + t.to_string() + " is not an element of " + ring.to_string());
    }
  }

  ChainCertificate chain{larger, {}, {}, {}, base_chain.size()};
  for (std::size_t k = 0; k < fresh.size(); ++k) chain.t_variables.push_back(ring.variable_count() + k);
  for (const auto& t : witnesses) chain.witnesses.push_back(lift(t, larger));

  for (std::size_t i = 0; i < base_chain.size(); ++i) {
    const auto& prime = base_chain[i];
    if (prime.ring() != ring) throw UsageError("base prime " + prime.to_string() + " lives in another ring");
    if (!base_certificates[i]) throw UsageError("missing certificate for base prime " + prime.to_string());
    if (!contained(algebra.presentation(), prime, options)) {
      throw UsageError("base prime " + prime.to_string() + " does not contain the ideal of A");
    }
    std::optional<Polynomial> witness;
    if (i > 0) {
      if (!contained(base_chain[i - 1], prime, options)) throw UsageError("base chain is not ascending");
      witness = find_strictness_witness(base_chain[i - 1], prime, options);
      if (!witness) throw UsageError("strictness failure in the base chain at link " + std::to_string(i));
      witness = lift(*witness, larger);
    }
    chain.links.push_back({lift(prime, larger), witness, extend_certificate(*base_certificates[i], larger)});
  }

  const auto top = chain.links.back();
  for (std::size_t k = 0; k < witnesses.size(); ++k) {
    SubstitutionTransfer transfer{top.ideal, top.primality,
                                  std::vector<std::size_t>(chain.t_variables.begin(), chain.t_variables.begin() + k + 1),
                                  std::vector<Polynomial>(chain.witnesses.begin(), chain.witnesses.begin() + k + 1)};
    auto ideal = substitution_ideal(transfer);
    auto witness = find_strictness_witness(chain.links.back().ideal, ideal, options);
    if (!witness) throw UsageError("strictness failure at witness " + std::to_string(k + 1));
    chain.links.push_back({std::move(ideal), witness, make_certificate(std::move(transfer))});
  }
  return chain;
}

bool verify_strictness(const ChainCertificate& chain, const EngineOptions& options) {
  for (std::size_t i = 1; i < chain.links.size(); ++i) {
    const auto& lower = chain.links[i - 1].ideal;
    const auto& upper = chain.links[i].ideal;
    const auto& witness = chain.links[i].strictness_witness;
    if (!witness || witness->ring() != chain.ring) return false;
    if (!contained(lower, upper, options)) return false;
    if (!ideal_membership(*witness, upper, options)) return false;
    if (ideal_membership(*witness, lower, options)) return false;
  }
  return true;
}

bool verify_avoidance(const ChainCertificate& chain, const EngineOptions& options) {
  std::vector<std::string> keep;
  for (const auto x : chain.t_variables) keep.push_back(chain.ring.variables()[x]);
  for (const auto& link : chain.links) {
    const auto contracted = contract_parameters(link.ideal, options);
    if (!eliminate(contracted, keep, options).groebner_basis(MonomialOrder::grevlex(), options).empty()) return false;
  }
  return true;
}

bool verify_evaluation(const ChainCertificate& chain, const EngineOptions& options) {
  if (chain.witnesses.empty()) return true;
  if (chain.base_length == 0 || chain.base_length > chain.links.size()) return false;
  const auto& ring = chain.ring;
  const auto& pm = chain.links[chain.base_length - 1].ideal;
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < ring.variable_count(); ++i) images.push_back(Polynomial::variable(ring, i));
  for (std::size_t k = 0; k < chain.t_variables.size(); ++k) {
    for (const auto x : chain.t_variables) {
      if (chain.witnesses[k].involves(x)) return false;
    }
    images[chain.t_variables[k]] = chain.witnesses[k];
  }
  for (std::size_t i = chain.base_length; i < chain.links.size(); ++i) {
    for (const auto& g : chain.links[i].ideal.generators()) {
      if (!ideal_membership(map_polynomial(g, ring, images), pm, options)) return false;
    }
  }

  // Injectivity of K[Z] -> A/P_m, Z_i -> t_i: its kernel is the contraction
  // of P_m + (Z - t) to K[Z], computed in a ring with Z placed first.
  std::vector<std::string> names;
  for (std::size_t k = 0; k < chain.witnesses.size(); ++k) {
    std::string name = "_Z" + std::to_string(k + 1);
    while (ring.index_of(name)) name = "_" + name;
    names.push_back(name);
  }
  const auto z_names = names;
  names.insert(names.end(), ring.variables().begin(), ring.variables().end());
  const PolynomialRing evaluation_ring(ring.field(), names);
  std::vector<Polynomial> gens;
  for (const auto& g : nonzero_generators(pm)) gens.push_back(lift(g, evaluation_ring));
  for (std::size_t k = 0; k < chain.witnesses.size(); ++k) {
    gens.push_back(Polynomial::variable(evaluation_ring, k) - lift(chain.witnesses[k], evaluation_ring));
  }
  const auto contracted = contract_parameters(IdealPresentation(evaluation_ring, std::move(gens)), options);
  return eliminate(contracted, z_names, options).groebner_basis(MonomialOrder::grevlex(), options).empty();
}

ChainVerification verify_chain(const ChainCertificate& chain, const EngineOptions& options) {
  ChainVerification out;
  out.strict = verify_strictness(chain, options);
  if (!out.strict) out.details.push_back("strictness failed");
  out.avoidance = verify_avoidance(chain, options);
  if (!out.avoidance) out.details.push_back("a link meets K[X] - {0}");
  try {
    out.evaluation = verify_evaluation(chain, options);
  } catch (const UsageError& e) {
    out.evaluation = false;
    out.details.push_back(e.what());
  }
  if (!out.evaluation) out.details.push_back("evaluation check failed");
  out.primality = true;
  for (std::size_t i = 0; i < chain.links.size(); ++i) {
    const auto& link = chain.links[i];
    PrimalityCheck check;
    if (!link.primality) {
      check.detail = "missing certificate";
    } else {
      try {
        check = check_primality(link.ideal, *link.primality, options);
      } catch (const UsageError& e) {
        check.detail = e.what();
      }
    }
    if (!check.valid) {
      out.primality = false;
      out.details.push_back("link " + std::to_string(i) + ": " + check.detail);
    }
    out.asserted = out.asserted || check.asserted;
  }
  return out;
}

std::uint64_t certified_lower_bound(const ChainCertificate& chain, const EngineOptions& options) {
  const auto v = verify_chain(chain, options);
  if (!v.ok()) {
    std::string why;
    for (const auto& d : v.details) why += (why.empty() ? "" : "; ") + d;
    throw UsageError("refusing to certify a lower bound: " + why);
  }
  return chain.links.size() - 1;
}

}  // namespace krull
