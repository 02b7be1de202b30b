#include "krull/certificate.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "krull/error.hpp"

namespace krull {

std::string PrimalityCertificate::kind_name() const {
  struct Name {
    std::string operator()(const ZeroIdealInDomain&) const { return "ZeroIdealInDomain"; }
    std::string operator()(const PrincipalIrreducible&) const { return "PrincipalIrreducible"; }
    std::string operator()(const SubstitutionTransfer&) const { return "SubstitutionTransfer"; }
    std::string operator()(const RabinowitschOfPrime&) const { return "RabinowitschOfPrime"; }
    std::string operator()(const Asserted&) const { return "Asserted"; }
  };
  return std::visit(Name{}, kind_);
}

CertificatePtr make_certificate(PrimalityCertificate::Kind kind) {
  return std::make_shared<const PrimalityCertificate>(std::move(kind));
}

namespace {

// Coefficient-free view of p over the ground field as a ParamPoly in all ring
// variables. Only valid when every coefficient is a ground constant.
ParamPoly to_param(const Polynomial& p) {
  ParamPoly out;
  for (const auto& t : p.terms()) {
    out.push_back({t.monomial.exponents(), t.coeff.ground()});
  }
  std::sort(out.begin(), out.end(), [](const ParamTerm& a, const ParamTerm& b) { return a.exponents > b.exponents; });
  return out;
}

bool all_ground(const Polynomial& p) {
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [&](const Term& t) { return p.field().is_ground_constant(t.coeff); });
}

// The constant value of a ground-constant scalar.
mpq_class ground_value(const CoefficientField& field, const Scalar& s) {
  if (s.is_ground()) return s.ground();
  (void)field;
  const auto& num = s.fraction().num;
  return num.empty() ? mpq_class(0) : num.front().coeff;
}

std::vector<mpz_class> positive_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Coefficients c_0..c_d of a univariate polynomial in ground constants.
bool has_root(const std::vector<mpq_class>& c, std::uint64_t p) {
  const auto eval = [&](const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  if (p != 0) {
    for (std::uint64_t r = 0; r < p; ++r) {
      if (param::reduce(eval(mpq_class(static_cast<unsigned long>(r))), p) == 0) return true;
    }
    return false;
  }
  mpz_class scale = 1;
  for (const auto& v : c) scale = lcm(scale, v.get_den());
  std::vector<mpz_class> z;
  for (const auto& v : c) z.push_back(mpz_class(v * scale));
  if (z.front() == 0) return true;
  for (const auto& num : positive_divisors(z.front())) {
    for (const auto& den : positive_divisors(z.back())) {
      for (int sign : {1, -1}) {
        mpq_class x(sign * num, den);
        x.canonicalize();
        if (eval(x) == 0) return true;
      }
    }
  }
  return false;
}

constexpr std::uint64_t kMaxEnumeratedPrime = 1000000;
const mpz_class kMaxRootSearch("1000000000000");

std::optional<std::string> univariate_evidence(const Polynomial& p, std::size_t var) {
  const auto deg = p.total_degree();
  if (deg != 2 && deg != 3) return std::nullopt;
  const auto& field = p.field();
  if (!all_ground(p)) return std::nullopt;
  const std::uint64_t ch = field.characteristic();
  if (ch > kMaxEnumeratedPrime) return std::nullopt;
  std::vector<mpq_class> c(deg + 1, 0);
  for (const auto& t : p.terms()) c[t.monomial[var]] = ground_value(field, t.coeff);
  if (ch == 0) {
    mpz_class scale = 1;
    for (const auto& v : c) scale = lcm(scale, v.get_den());
    if (abs(mpz_class(c.front() * scale)) > kMaxRootSearch || abs(mpz_class(c.back() * scale)) > kMaxRootSearch) {
      return std::nullopt;
    }
  }
  // A ground polynomial with no root in the ground field has none in a
  // purely transcendental extension either: the ground field is
  // algebraically closed inside it.
  if (has_root(c, ch)) return std::nullopt;
  return "degree " + std::to_string(deg) + " in " + p.ring().variables()[var] + " without roots in " +
         field.ground().to_string();
}

std::optional<std::string> binomial_evidence(const Polynomial& p) {
  if (p.size() != 2) return std::nullopt;
  const auto& m1 = p.terms()[0].monomial;
  const auto& m2 = p.terms()[1].monomial;
  const auto single = [](const Monomial& m) -> std::optional<std::size_t> {
    const auto s = m.support();
    if (s == 0 || (s & (s - 1)) != 0) return std::nullopt;
    return static_cast<std::size_t>(__builtin_ctzll(s));
  };
  const auto i = single(m1), j = single(m2);
  if (!i || !j || *i == *j) return std::nullopt;
  const auto a = m1[*i], b = m2[*j];
  if (std::gcd(a, b) != 1) return std::nullopt;
  const auto& vars = p.ring().variables();
  return "binomial " + vars[*i] + "^" + std::to_string(a) + " - c*" + vars[*j] + "^" + std::to_string(b) +
         " with coprime exponents";
}

std::optional<std::string> linear_evidence(const Polynomial& p) {
  const auto& ring = p.ring();
  const auto& field = p.field();
  for (std::size_t v = 0; v < ring.variable_count(); ++v) {
    unsigned top = 0;
    for (const auto& t : p.terms()) top = std::max<unsigned>(top, t.monomial[v]);
    if (top != 1) continue;
    std::vector<Term> lead, rest;
    for (const auto& t : p.terms()) {
      if (t.monomial[v] == 1) {
        auto e = t.monomial.exponents();
        e[v] = 0;
        lead.push_back({Monomial(e), t.coeff});
      } else {
        rest.push_back(t);
      }
    }
    const auto g = Polynomial::from_terms(ring, lead);
    const auto h = Polynomial::from_terms(ring, rest);
    const auto& name = ring.variables()[v];
    if (g.is_constant()) return "linear in " + name + " with unit coefficient";
    if (h.is_constant() && !h.is_zero()) return "linear in " + name + " with unit constant term";
    if (h.is_zero() || !all_ground(p) || field.is_function_field()) continue;
    const auto d = param::gcd(to_param(g), to_param(h), field.characteristic());
    const bool unit = d.size() == 1 && std::all_of(d.front().exponents.begin(), d.front().exponents.end(),
                                                   [](std::uint32_t e) { return e == 0; });
    if (unit) return "linear in " + name + " with coprime coefficients";
  }
  return std::nullopt;
}

void require_ring(const Polynomial& p, const PolynomialRing& ring, const char* what) {
  if (p.ring() != ring) throw UsageError(std::string(what) + " lives in " + p.ring().to_string() + ", expected " + ring.to_string());
}

PrimalityCheck fail(std::string why) { return {false, false, std::move(why)}; }

}  // namespace

std::optional<std::string> irreducibility_evidence(const Polynomial& p) {
  if (p.is_zero() || p.is_constant()) return std::nullopt;
  if (p.total_degree() == 1) return std::string("total degree 1");
  const auto s = p.support();
  if ((s & (s - 1)) == 0) {
    if (auto e = univariate_evidence(p, static_cast<std::size_t>(__builtin_ctzll(s)))) return e;
  }
  if (auto e = binomial_evidence(p)) return e;
  return linear_evidence(p);
}

bool verify_substitution_transfer(const SubstitutionTransfer& cert, const EngineOptions& options) {
  const auto& ring = cert.base_prime.ring();
  if (cert.variables.size() != cert.values.size()) throw UsageError("substitution: variable and value counts differ");
  std::set<std::size_t> seen;
  for (std::size_t k = 0; k < cert.variables.size(); ++k) {
    const auto x = cert.variables[k];
    if (x >= ring.variable_count()) throw UsageError("substitution: variable index out of range");
    if (!seen.insert(x).second) throw UsageError("substitution: variable " + ring.variables()[x] + " repeated");
    require_ring(cert.values[k], ring, "substitution value");
  }
  for (std::size_t k = 0; k < cert.values.size(); ++k) {
    for (const auto x : cert.variables) {
      if (cert.values[k].involves(x)) {
        throw UsageError("substitution value " + cert.values[k].to_string() + " involves " + ring.variables()[x]);
      }
    }
  }
  for (const auto& g : cert.base_prime.generators()) {
    for (const auto x : cert.variables) {
      if (g.involves(x)) return false;
    }
  }
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < ring.variable_count(); ++i) images.push_back(Polynomial::variable(ring, i));
  for (std::size_t k = 0; k < cert.variables.size(); ++k) images[cert.variables[k]] = cert.values[k];
  const auto extended = substitution_ideal(cert);
  for (const auto& g : extended.generators()) {
    if (!ideal_membership(map_polynomial(g, ring, images), cert.base_prime, options)) return false;
  }
  for (std::size_t k = 0; k < cert.variables.size(); ++k) {
    const auto rel = Polynomial::variable(ring, cert.variables[k]) - cert.values[k];
    if (!map_polynomial(rel, ring, images).is_zero()) return false;
  }
  return true;
}

IdealPresentation substitution_ideal(const SubstitutionTransfer& cert) {
  const auto& ring = cert.base_prime.ring();
  std::vector<Polynomial> gens;
  if (!cert.base_prime.is_zero_ideal()) gens = cert.base_prime.generators();
  for (std::size_t k = 0; k < cert.variables.size(); ++k) {
    gens.push_back(Polynomial::variable(ring, cert.variables[k]) - cert.values[k]);
  }
  return IdealPresentation(ring, std::move(gens));
}

IdealPresentation rabinowitsch_ideal(const RabinowitschOfPrime& cert) {
  const auto& ring = cert.base_prime.ring();
  std::vector<Polynomial> gens;
  if (!cert.base_prime.is_zero_ideal()) gens = cert.base_prime.generators();
  const auto one = Polynomial::constant(ring, ring.field().one());
  gens.push_back(cert.element * Polynomial::variable(ring, cert.variable) - one);
  return IdealPresentation(ring, std::move(gens));
}

PrimalityCheck check_primality(const IdealPresentation& ideal, const PrimalityCertificate& certificate,
                               const EngineOptions& options) {
  if (contains_one(ideal, options)) return fail("the unit ideal is not prime");
  const auto& ring = ideal.ring();

  if (certificate.as<ZeroIdealInDomain>()) {
    if (!ideal.groebner_basis(MonomialOrder::grevlex(), options).empty()) return fail("ideal is not (0)");
    return {true, false, "zero ideal of " + ring.to_string()};
  }

  if (const auto* c = certificate.as<PrincipalIrreducible>()) {
    if (c->generator.ring() != ring) return fail("generator lives in another ring");
    auto evidence = irreducibility_evidence(c->generator);
    if (!evidence) return fail("no irreducibility evidence for " + c->generator.to_string());
    if (!same_ideal(ideal, IdealPresentation(ring, {c->generator}), options)) {
      return fail("ideal is not generated by " + c->generator.to_string());
    }
    return {true, false, "(" + c->generator.to_string() + "): " + *evidence};
  }

  if (const auto* c = certificate.as<SubstitutionTransfer>()) {
    if (!c->base_certificate) return fail("substitution transfer without a base certificate");
    if (c->base_prime.ring() != ring) return fail("base prime lives in another ring");
    if (!verify_substitution_transfer(*c, options)) return fail("evaluation map does not land in the base prime");
    if (!same_ideal(ideal, substitution_ideal(*c), options)) return fail("ideal differs from base + (X - t)");
    auto base = check_primality(c->base_prime, *c->base_certificate, options);
    if (!base.valid) return fail("base: " + base.detail);
    return {true, base.asserted, "evaluation onto prime " + c->base_prime.to_string()};
  }

  if (const auto* c = certificate.as<RabinowitschOfPrime>()) {
    if (!c->base_certificate) return fail("localization without a base certificate");
    if (c->base_prime.ring() != ring || c->element.ring() != ring) return fail("data lives in another ring");
    if (c->variable >= ring.variable_count()) return fail("variable index out of range");
    if (c->element.involves(c->variable)) return fail("element involves the inverted variable");
    for (const auto& g : c->base_prime.generators()) {
      if (g.involves(c->variable)) return fail("base prime involves the inverted variable");
    }
    if (ideal_membership(c->element, c->base_prime, options)) return fail("element lies in the base prime");
    if (!same_ideal(ideal, rabinowitsch_ideal(*c), options)) return fail("ideal differs from base + (fY - 1)");
    auto base = check_primality(c->base_prime, *c->base_certificate, options);
    if (!base.valid) return fail("base: " + base.detail);
    return {true, base.asserted, "localization of prime " + c->base_prime.to_string() + " at " + c->element.to_string()};
  }

  const auto& a = *certificate.as<Asserted>();
  return {true, true, a.note.empty() ? std::string("asserted by caller") : "asserted: " + a.note};
}

}  // namespace krull
