#include "krull/cli.hpp"
#include "krull/dsl.hpp"

namespace krull {
namespace {

using nlohmann::json;

json generators_json(const IdealPresentation& ideal) {
  json out = json::array();
  if (ideal.is_zero_ideal()) return out;
  for (const auto& g : ideal.generators()) out.push_back(g.to_string());
  return out;
}

IdealPresentation ideal_from(const json& j, const PolynomialRing& ring) {
  std::vector<Polynomial> gens;
  for (const auto& g : j) gens.push_back(parse_polynomial(g.get<std::string>(), ring));
  return IdealPresentation(ring, std::move(gens));
}

std::size_t variable_index(const json& j, const PolynomialRing& ring) {
  const auto name = j.get<std::string>();
  const auto i = ring.index_of(name);
  if (!i) throw UsageError("unknown variable '" + name + "' in certificate");
  return *i;
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace

json certificate_to_json(const PrimalityCertificate& certificate) {
  json j{{"kind", certificate.kind_name()}};
  if (const auto* c = certificate.as<PrincipalIrreducible>()) {
    j["generator"] = c->generator.to_string();
  } else if (const auto* c = certificate.as<SubstitutionTransfer>()) {
    const auto& ring = c->base_prime.ring();
    j["base_prime"] = generators_json(c->base_prime);
    j["base_certificate"] = certificate_to_json(*c->base_certificate);
    j["variables"] = json::array();
    for (auto v : c->variables) j["variables"].push_back(ring.variables()[v]);
    j["values"] = json::array();
    for (const auto& v : c->values) j["values"].push_back(v.to_string());
  } else if (const auto* c = certificate.as<RabinowitschOfPrime>()) {
    j["base_prime"] = generators_json(c->base_prime);
    j["base_certificate"] = certificate_to_json(*c->base_certificate);
    j["element"] = c->element.to_string();
    j["variable"] = c->base_prime.ring().variables()[c->variable];
  } else if (const auto* c = certificate.as<Asserted>()) {
    j["note"] = c->note;
  }
  return j;
}

CertificatePtr certificate_from_json(const json& j, const PolynomialRing& ring) {
  return guarded([&]() -> CertificatePtr {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "ZeroIdealInDomain") return make_certificate(ZeroIdealInDomain{});
    if (kind == "PrincipalIrreducible") {
      return make_certificate(PrincipalIrreducible{parse_polynomial(j.at("generator").get<std::string>(), ring)});
    }
    if (kind == "SubstitutionTransfer") {
      SubstitutionTransfer c{ideal_from(j.at("base_prime"), ring), certificate_from_json(j.at("base_certificate"), ring),
                             {}, {}};
      for (const auto& v : j.at("variables")) c.variables.push_back(variable_index(v, ring));
      for (const auto& v : j.at("values")) c.values.push_back(parse_polynomial(v.get<std::string>(), ring));
      if (c.variables.size() != c.values.size()) throw UsageError("malformed certificate: variables and values differ in length");
      return make_certificate(std::move(c));
    }
    if (kind == "RabinowitschOfPrime") {
      return make_certificate(RabinowitschOfPrime{ideal_from(j.at("base_prime"), ring),
                                                  certificate_from_json(j.at("base_certificate"), ring),
                                                  parse_polynomial(j.at("element").get<std::string>(), ring),
                                                  variable_index(j.at("variable"), ring)});
    }
    if (kind == "Asserted") return make_certificate(Asserted{j.value("note", std::string())});
    throw UsageError("unknown certificate kind '" + kind + "'");
  });
}

json chain_to_json(const ChainCertificate& chain) {
  json links = json::array();
  for (const auto& link : chain.links) {
    links.push_back({{"generators", generators_json(link.ideal)},
                     {"witness", link.strictness_witness ? json(link.strictness_witness->to_string()) : json(nullptr)},
                     {"primality", certificate_to_json(*link.primality)}});
  }
  json t = json::array();
  for (auto i : chain.t_variables) t.push_back(chain.ring.variables()[i]);
  json w = json::array();
  for (const auto& p : chain.witnesses) w.push_back(p.to_string());
  return {{"ring", {{"field", chain.ring.field().to_string()}, {"variables", chain.ring.variables()}}},
          {"links", links},
          {"t_variables", t},
          {"witnesses", w},
          {"base_length", chain.base_length}};
}

ChainCertificate chain_from_json(const json& j) {
  return guarded([&] {
    const auto& r = j.at("ring");
    const PolynomialRing ring(parse_field(r.at("field").get<std::string>()),
                              r.at("variables").get<std::vector<std::string>>());
    ChainCertificate chain{ring, {}, {}, {}, j.at("base_length").get<std::size_t>()};
    for (const auto& l : j.at("links")) {
      ChainLink link{ideal_from(l.at("generators"), ring), std::nullopt, certificate_from_json(l.at("primality"), ring)};
      if (!l.at("witness").is_null()) link.strictness_witness = parse_polynomial(l.at("witness").get<std::string>(), ring);
      chain.links.push_back(std::move(link));
    }
    for (const auto& v : j.at("t_variables")) chain.t_variables.push_back(variable_index(v, ring));
    for (const auto& w : j.at("witnesses")) chain.witnesses.push_back(parse_polynomial(w.get<std::string>(), ring));
    if (chain.links.empty()) throw UsageError("malformed certificate: no links");
    if (chain.witnesses.size() != chain.t_variables.size()) {
      throw UsageError("malformed certificate: one witness per X variable expected");
    }
    return chain;
  });
}

}  // namespace krull
