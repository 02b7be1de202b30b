#include "krull/calculus.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "krull/error.hpp"

namespace krull {
namespace {

namespace cite {
constexpr const char* thm24 =
    "dim(L_1 ⊗_K ... ⊗_K L_n) = t_1 + ... + t_{n-1} for t_1 <= ... <= t_n the trdeg_K L_i when t_{n-1} < inf; "
    "infinite when t_{n-1} = t_n = inf";
constexpr const char* thm1_lb =
    "dim K(X_1..X_n) ⊗_K A >= n + dim S^{-1}A, S = K[t_1..t_n] - {0}, for t_1..t_n in A algebraically "
    "independent over K";
constexpr const char* thm1_ub = "dim K(X_1..X_n) ⊗_K A <= dim A[X_1..X_n] = dim A + n for Noetherian A";
constexpr const char* thm1_inf =
    "dim K(X_1, X_2, ...) ⊗_K A = inf when A contains infinitely many elements algebraically independent over K";
constexpr const char* cor23 =
    "dim K(X_1..X_n) ⊗_K A = n + dim A for Noetherian A containing a field of trdeg >= n over K";
constexpr const char* integral = "an integral extension has the same Krull dimension as its base";
constexpr const char* faithflat = "dim B >= dim A when B is faithfully flat over A";
constexpr const char* lem26 = "dim K[X_1..X_n][1/f] = n for nonzero f";
constexpr const char* thm27 = "dim A[1/f] = dim A for an affine algebra A and a non-zero-divisor f";
constexpr const char* cor28 = "dim A = trdeg_K Frac(A) for an affine domain A over K";
constexpr const char* poly = "dim A[X_1..X_k] = dim A + k for Noetherian A, and >= dim A + k for any A";
constexpr const char* kernel =
    "dim K[x]/I = size of a largest set of variables independent modulo the leading-term ideal of I";
constexpr const char* generic_fiber = "K(X_1..X_n) ⊗_K B is B presented over K(X_1..X_n)";
constexpr const char* unit = "A ⊗_K K = A";
constexpr const char* juxtapose = "K[x]/I ⊗_K K[y]/J = K[x, y]/(I + J)";
constexpr const char* zero_tensor = "A ⊗_K 0 = 0";
constexpr const char* loc_zero = "A[1/0] is the zero ring";
constexpr const char* zero_divisor = "no closed rule for A[1/f] with f a zero-divisor";
constexpr const char* locsub =
    "for t_1..t_n algebraically independent over K, S^{-1}A = K(Z) ⊗_{K[Z]} A with Z_i -> t_i";
constexpr const char* no_rule = "no rule applies to this shape; only dim >= 0 is known";
constexpr const char* asserted_noetherian = "Noetherian by caller assertion";
constexpr const char* asserted_domain = "domain by caller assertion";
}  // namespace cite

TraceEntry entry(std::string rule, const char* citation, Effect effect, Count value,
                 std::vector<std::string> premises = {}) {
  TraceEntry e;
  e.rule = std::move(rule);
  e.citation = citation;
  e.effect = effect;
  e.value = value;
  e.premises = std::move(premises);
  return e;
}

TraceEntry note(std::string rule, const char* citation, std::vector<std::string> premises = {}) {
  return entry(std::move(rule), citation, Effect::Note, Count{}, std::move(premises));
}

Count lower_of(const DimensionValue& v) {
  return v.kind() == DimensionValue::Kind::Infinite ? Count::countable() : Count::finite(v.lower());
}

Count upper_of(const DimensionValue& v) {
  if (v.kind() == DimensionValue::Kind::Infinite || !v.upper()) return Count::countable();
  return Count::finite(*v.upper());
}

Count minus(const Count& a, std::size_t p) {
  if (a.infinite) return a;
  return Count::finite(a.value >= p ? a.value - p : 0);
}

std::vector<Polynomial> nonzero_generators(const IdealPresentation& ideal) {
  std::vector<Polynomial> out;
  for (const auto& g : ideal.generators()) {
    if (!g.is_zero()) out.push_back(g);
  }
  return out;
}

// g = c*x_i + r with c a nonzero scalar and r free of x_i.
std::optional<Polynomial> solve_for(const Polynomial& g, std::size_t i) {
  std::optional<Scalar> c;
  std::vector<Term> rest;
  for (const auto& t : g.terms()) {
    if (t.monomial[i] == 0) {
      rest.push_back(t);
      continue;
    }
    if (t.monomial[i] != 1 || c) return std::nullopt;
    for (std::size_t j = 0; j < t.monomial.arity(); ++j) {
      if (j != i && t.monomial[j] != 0) return std::nullopt;
    }
    c = t.coeff;
  }
  if (!c) return std::nullopt;
  const auto& field = g.field();
  return -Polynomial::from_terms(g.ring(), std::move(rest)).scaled(field.inv(*c));
}

}  // namespace

std::string to_string(Effect effect) {
  switch (effect) {
    case Effect::Exact:
      return "exact";
    case Effect::Lower:
      return "lower";
    case Effect::Upper:
      return "upper";
    case Effect::Infinite:
      return "infinite";
    case Effect::Empty:
      return "empty";
    case Effect::Note:
      return "note";
  }
  return "";
}

DimensionResult rule_thm24(const std::vector<FieldExtensionDescriptor>& factors) {
  if (factors.empty()) throw UsageError("the tensor-of-fields formula needs at least one factor");
  std::vector<Count> t;
  std::vector<std::string> premises;
  for (const auto& f : factors) {
    if (f.base != factors.front().base) throw UsageError("tensor factors over different base fields");
    t.push_back(trdeg_of(f));
    premises.push_back("trdeg = " + t.back().to_string());
  }
  std::sort(t.begin(), t.end());
  DimensionResult out;
  if (t.size() >= 2 && t[t.size() - 2].infinite) {
    out.value = DimensionValue::infinite();
    out.trace.push_back(entry("THM24-FORMULA", cite::thm24, Effect::Infinite, Count::countable(), premises));
    return out;
  }
  const auto sum = std::accumulate(t.begin(), t.end() - 1, Count::finite(0));
  out.value = DimensionValue::exact(sum.value);
  out.trace.push_back(entry("THM24-FORMULA", cite::thm24, Effect::Exact, sum, premises));
  return out;
}

TraceEntry rule_thm1_lower(std::uint64_t n, const DimensionValue& localized) {
  const auto lo = localized.kind() == DimensionValue::Kind::EmptyRing ? Count::finite(0) : lower_of(localized);
  return entry("THM1-LB", cite::thm1_lb, Effect::Lower, Count::finite(n) + lo,
               {"n = " + std::to_string(n), "dim S^{-1}A >= " + lo.to_string()});
}

std::optional<TraceEntry> rule_thm1_upper(std::uint64_t n, const DimensionValue& dim_a, bool noetherian) {
  if (!noetherian) return std::nullopt;
  const auto hi = upper_of(dim_a);
  if (hi.infinite) return std::nullopt;
  return entry("THM1-UB", cite::thm1_ub, Effect::Upper, Count::finite(n) + hi,
               {"n = " + std::to_string(n), "dim A <= " + hi.to_string(), "A Noetherian"});
}

std::optional<TraceEntry> rule_thm1_infinite(const Count& leg_trdeg, const Count& subfield_trdeg) {
  if (!leg_trdeg.infinite || !subfield_trdeg.infinite) return std::nullopt;
  return entry("THM1-INF", cite::thm1_inf, Effect::Infinite, Count::countable(),
               {"trdeg L = inf", "A contains a subfield of trdeg inf"});
}

DimensionResult rule_cor23(std::uint64_t n, const DimensionValue& dim_a, bool noetherian, const Count& subfield_trdeg) {
  DimensionResult out;
  const auto k = min(Count::finite(n), subfield_trdeg).value;
  // with k witnesses inside a subfield, S^{-1}A = A
  auto lower = rule_thm1_lower(k, dim_a);
  if (k < n) lower.premises.push_back("only " + std::to_string(k) + " independent elements available");
  out.trace.push_back(lower);
  if (k < n) {
    if (auto f = rule_faithflat_lb(Count::finite(n), k, lower.value)) out.trace.push_back(*f);
  }
  const auto upper = rule_thm1_upper(n, dim_a, noetherian);
  if (upper) out.trace.push_back(*upper);
  if (k == n && noetherian && dim_a.is_exact()) {
    out.trace.push_back(entry("COR23-EQ", cite::cor23, Effect::Exact, Count::finite(n + dim_a.value()),
                              {"n = " + std::to_string(n), "dim A = " + dim_a.to_string(), "A Noetherian",
                               "subfield trdeg " + subfield_trdeg.to_string() + " >= n"}));
    out.value = DimensionValue::exact(n + dim_a.value());
    return out;
  }
  if (lower.value.infinite) {
    out.value = DimensionValue::infinite();
  } else {
    out.value = DimensionValue::interval(lower.value.value,
                                         upper ? std::optional<std::uint64_t>(upper->value.value) : std::nullopt);
  }
  return out;
}

std::optional<TraceEntry> rule_integral_eq(const FieldExtensionDescriptor& desc) {
  if (desc.algebraic_part.empty()) return std::nullopt;
  std::vector<std::string> premises;
  for (const auto& a : desc.algebraic_part) {
    premises.push_back(a.symbol + " is a root of the monic " + a.minimal_polynomial.to_string());
  }
  return note("INTEGRAL-EQ", cite::integral, std::move(premises));
}

std::optional<TraceEntry> rule_integral_eq(const AffineAlgebra& algebra) {
  const auto& ring = algebra.ring();
  std::vector<std::string> premises;
  for (std::size_t i = 0; i < ring.variable_count(); ++i) {
    std::optional<Polynomial> witness;
    for (const auto& g : algebra.presentation().generators()) {
      if (!g.is_constant() && g.support() == (std::uint64_t{1} << i)) {
        witness = g;
        break;
      }
    }
    if (!witness) return std::nullopt;
    premises.push_back(ring.variables()[i] + " is integral: " + witness->to_string());
  }
  return entry("INTEGRAL-EQ", cite::integral, Effect::Exact, Count::finite(0), std::move(premises));
}

std::optional<TraceEntry> rule_faithflat_lb(const Count& leg_trdeg, std::uint64_t k, const Count& sub_lower) {
  if (!(Count::finite(k) < leg_trdeg)) return std::nullopt;
  return entry("FAITHFLAT-LB", cite::faithflat, Effect::Lower, sub_lower,
               {"L ⊗ A is free over K(X_1..X_" + std::to_string(k) + ") ⊗ A", "trdeg L = " + leg_trdeg.to_string()});
}

std::optional<TraceEntry> rule_lem26(const AffineAlgebra& algebra, const Polynomial& f) {
  if (!algebra.presentation().is_zero_ideal() || f.is_zero() || f.ring() != algebra.ring()) return std::nullopt;
  const auto n = algebra.ring().variable_count();
  return entry("LEM26", cite::lem26, Effect::Exact, Count::finite(n),
               {"n = " + std::to_string(n), "f = " + f.to_string() + " != 0"});
}

std::optional<TraceEntry> rule_thm27(ZeroDivisorStatus status, const DimensionValue& dim_a) {
  if (status != ZeroDivisorStatus::NonZeroDivisor || !dim_a.is_exact()) return std::nullopt;
  return entry("THM27", cite::thm27, Effect::Exact, Count::finite(dim_a.value()),
               {"dim A = " + dim_a.to_string(), "f is a non-zero-divisor: (I : f) = I"});
}

std::optional<TraceEntry> rule_cor28(const AffineAlgebra& algebra, const PrimalityCertificate& certificate,
                                     const EngineOptions& options) {
  try {
    const auto r = trdeg_affine_domain(algebra, certificate, options);
    return entry("COR28", cite::cor28, Effect::Exact, Count::finite(r.trdeg),
                 {"domain certificate: " + certificate.kind_name(), "trdeg Frac(A) = " + std::to_string(r.trdeg)});
  } catch (const UsageError&) {
    return std::nullopt;
  }
}

CertificatePtr detect_prime_certificate(const IdealPresentation& ideal) {
  auto gens = nonzero_generators(ideal);
  const auto& ring = ideal.ring();
  if (gens.empty()) return make_certificate(ZeroIdealInDomain{});
  if (gens.size() == 1 && irreducibility_evidence(gens.front())) return make_certificate(PrincipalIrreducible{gens.front()});

  std::vector<std::size_t> vars;
  std::vector<Polynomial> values;
  std::vector<Polynomial> base;
  for (const auto& g : gens) {
    bool used = false;
    for (std::size_t i = 0; i < ring.variable_count() && !used; ++i) {
      if (std::find(vars.begin(), vars.end(), i) != vars.end()) continue;
      const auto value = solve_for(g, i);
      if (!value) continue;
      if (std::any_of(vars.begin(), vars.end(), [&](std::size_t x) { return value->involves(x); })) continue;
      if (std::any_of(values.begin(), values.end(), [&](const Polynomial& v) { return v.involves(i); })) continue;
      vars.push_back(i);
      values.push_back(*value);
      used = true;
    }
    if (!used) base.push_back(g);
  }
  if (vars.empty()) return nullptr;
  // b ≡ b(t) modulo the relations x_i - t_i, so the remaining generators
  // are read after substitution.
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < ring.variable_count(); ++i) images.push_back(Polynomial::variable(ring, i));
  for (std::size_t k = 0; k < vars.size(); ++k) images[vars[k]] = values[k];
  for (auto& b : base) b = map_polynomial(b, ring, images);
  std::erase_if(base, [](const Polynomial& b) { return b.is_zero(); });
  IdealPresentation base_ideal(ring, base);
  auto base_cert = detect_prime_certificate(base_ideal);
  if (!base_cert) return nullptr;
  return make_certificate(SubstitutionTransfer{std::move(base_ideal), std::move(base_cert), std::move(vars), std::move(values)});
}

bool algebraically_independent(const AffineAlgebra& algebra, const std::vector<Polynomial>& elements,
                               const EngineOptions& options) {
  const auto& ring = algebra.ring();
  std::set<std::string> taken(ring.variables().begin(), ring.variables().end());
  taken.insert(ring.field().parameters().begin(), ring.field().parameters().end());
  std::vector<std::string> z;
  for (std::size_t i = 1; z.size() < elements.size(); ++i) {
    auto name = "_Z" + std::to_string(i);
    if (taken.insert(name).second) z.push_back(name);
  }
  auto names = z;
  names.insert(names.end(), ring.variables().begin(), ring.variables().end());
  const PolynomialRing big(ring.field(), names);
  std::vector<Polynomial> gens;
  for (const auto& g : nonzero_generators(algebra.presentation())) gens.push_back(transfer_by_name(g, big));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].ring() != ring) throw UsageError("element " + elements[i].to_string() + " is not in " + ring.to_string());
    gens.push_back(Polynomial::variable(big, i) - transfer_by_name(elements[i], big));
  }
  // kernel of K[Z] -> A over K = K_0(u): contract to K_0[u][Z, x], keep u and Z
  const auto contracted = contract_parameters(IdealPresentation(big, std::move(gens)), options);
  auto keep = ring.field().parameters();
  keep.insert(keep.end(), z.begin(), z.end());
  return eliminate(contracted, keep, options).groebner_basis(MonomialOrder::grevlex(), options).empty();
}

namespace {

struct Analysis {
  bool empty = false;
  Count lo = Count::finite(0);
  Count hi = Count::countable();
  bool noetherian = false;
  bool is_field = false;
  bool domain = false;
  /// trdeg over the ground field of the largest known subfield.
  Count subfield = Count::finite(0);
  /// trdeg over the ground field of Frac, for domains.
  std::optional<Count> frac_trdeg;
  std::optional<std::uint64_t> trdeg;

  DimensionValue value() const {
    if (empty) return DimensionValue::empty_ring();
    if (lo.infinite) return DimensionValue::infinite();
    if (lo == hi) return DimensionValue::exact(lo.value);
    return DimensionValue::interval(lo.value, hi.infinite ? std::nullopt : std::optional<std::uint64_t>(hi.value));
  }
};

bool closed(const std::vector<TraceEntry>& claims) {
  return std::any_of(claims.begin(), claims.end(), [](const TraceEntry& e) {
    return e.effect == Effect::Exact || e.effect == Effect::Infinite || e.effect == Effect::Empty;
  });
}

class Evaluator {
 public:
  Evaluator(const EvaluateOptions& options, DimensionResult& out) : options_(options), out_(out) {}

  Analysis analyze(const RingExpr& e) {
    switch (e.kind()) {
      case RingExpr::Kind::BaseField:
        return base_field(e);
      case RingExpr::Kind::FieldExt:
        return field_ext(e);
      case RingExpr::Kind::PolyExt:
        return poly(e);
      case RingExpr::Kind::Quotient:
        return quotient(e);
      case RingExpr::Kind::LocElement:
        return loc(e);
      case RingExpr::Kind::LocSubringComplement:
        return loc_sub(e);
      case RingExpr::Kind::Tensor:
        return tensor(e);
      case RingExpr::Kind::FracField:
        return frac(e);
    }
    throw InconsistencyError("unknown expression kind");
  }

 private:
  Analysis base_field(const RingExpr& e) {
    Analysis a;
    a.is_field = a.noetherian = a.domain = true;
    a.subfield = Count::finite(e.field().parameter_count());
    a.frac_trdeg = a.subfield;
    settle(e, rule_thm24({FieldExtensionDescriptor{e.field(), Count::finite(0), {}}}).trace, a);
    return a;
  }

  Analysis field_ext(const RingExpr& e) {
    const auto& d = e.extension();
    Analysis a;
    a.is_field = a.domain = true;
    a.noetherian = !d.trdeg.infinite;
    a.subfield = Count::finite(d.base.parameter_count()) + d.trdeg;
    a.frac_trdeg = a.subfield;
    auto claims = rule_thm24({d}).trace;
    if (auto r = rule_integral_eq(d)) claims.push_back(*r);
    settle(e, std::move(claims), a);
    return a;
  }

  Analysis poly(const RingExpr& e) {
    const auto c = analyze(e.child());
    const auto k = Count::finite(e.variables().size());
    Analysis a;
    a.domain = c.domain;
    a.subfield = c.subfield;
    if (c.frac_trdeg) a.frac_trdeg = *c.frac_trdeg + k;
    std::vector<TraceEntry> claims;
    if (c.empty) {
      claims.push_back(entry("POLY-DIM", cite::poly, Effect::Empty, Count{}, {"A = 0"}));
    } else if (c.lo.infinite) {
      claims.push_back(entry("POLY-DIM", cite::poly, Effect::Infinite, Count::countable(), {"dim A = inf"}));
    } else {
      a.noetherian = noetherian(e.child(), c, claims);
      claims.push_back(entry("POLY-DIM", cite::poly, Effect::Lower, c.lo + k, {"dim A >= " + c.lo.to_string()}));
      if (a.noetherian && !c.hi.infinite) {
        claims.push_back(entry("POLY-DIM", cite::poly, Effect::Upper, c.hi + k,
                               {"dim A <= " + c.hi.to_string(), "A Noetherian"}));
      }
    }
    settle(e, std::move(claims), a);
    return a;
  }

  Analysis quotient(const RingExpr& e) {
    const auto c = analyze(e.child());
    const auto& flat = *e.flat();
    Analysis a;
    a.noetherian = true;
    a.subfield = c.subfield;
    std::vector<TraceEntry> claims;
    if (auto r = rule_integral_eq(flat)) claims.push_back(*r);
    const auto cert = detect_prime_certificate(flat.presentation());
    std::optional<TraceEntry> domain;
    if (cert) {
      domain = guarded([&] { return rule_cor28(flat, *cert, options_.engine); });
      if (domain) claims.push_back(*domain);
    }
    settle(e, std::move(claims), a);
    if (domain && !a.empty) {
      a.domain = true;
      a.trdeg = domain->value.value;
      a.frac_trdeg = Count::finite(flat.base().parameter_count()) + domain->value;
    }
    return a;
  }

  Analysis loc(const RingExpr& e) {
    const auto c = analyze(e.child());
    const auto& inner = *e.child().flat();
    const auto& f = e.polynomials().front();
    Analysis a;
    a.noetherian = true;
    a.domain = c.domain;
    a.subfield = c.subfield;
    a.frac_trdeg = c.frac_trdeg;
    std::vector<TraceEntry> claims;
    if (auto r = rule_lem26(inner, f)) claims.push_back(*r);
    const auto status = zero_divisor_status(inner, f, options_.engine);
    if (status == ZeroDivisorStatus::ZeroElement) {
      claims.push_back(entry("LOC-ZERO", cite::loc_zero, Effect::Empty, Count{}, {"f lies in I"}));
    } else if (status == ZeroDivisorStatus::ZeroDivisor) {
      claims.push_back(note("THM27", cite::zero_divisor, {"f = " + f.to_string() + " is a zero-divisor"}));
    } else if (auto r = rule_thm27(status, c.value())) {
      claims.push_back(*r);
    }
    settle(e, std::move(claims), a);
    return a;
  }

  Analysis loc_sub(const RingExpr& e) {
    const auto c = analyze(e.child());
    const auto& inner = *e.child().flat();
    if (!algebraically_independent(inner, e.polynomials(), options_.engine)) {
      throw UsageError("LocSub generators of " + e.to_string() + " are not algebraically independent over " +
                       inner.base().to_string());
    }
    Analysis a;
    a.noetherian = true;
    a.domain = c.domain;
    a.subfield = c.subfield + Count::finite(e.polynomials().size());
    a.frac_trdeg = c.frac_trdeg;
    std::vector<std::string> premises;
    for (const auto& t : e.polynomials()) premises.push_back("t = " + t.to_string());
    settle(e, {note("LOCSUB-INDEP", cite::locsub, std::move(premises))}, a);
    return a;
  }

  Analysis frac(const RingExpr& e) {
    const auto c = analyze(e.child());
    std::vector<TraceEntry> claims;
    if (!c.domain) {
      if (!options_.assert_domain) throw UsageError("Frac needs a domain, and " + e.child().to_string() + " is not certified as one");
      claims.push_back(note("DOMAIN-ASSERTED", cite::asserted_domain, {e.child().to_string()}));
      out_.asserted = true;
    }
    Analysis a;
    a.is_field = a.noetherian = a.domain = true;
    a.frac_trdeg = c.frac_trdeg;
    a.subfield = c.frac_trdeg.value_or(c.subfield);
    auto thm24 = rule_thm24({FieldExtensionDescriptor{e.base(), Count::finite(0), {}}}).trace;
    claims.insert(claims.end(), thm24.begin(), thm24.end());
    settle(e, std::move(claims), a);
    if (c.frac_trdeg && !c.frac_trdeg->infinite) a.trdeg = minus(*c.frac_trdeg, e.base().parameter_count()).value;
    return a;
  }

  Analysis tensor(const RingExpr& e) {
    const auto& base = e.base();
    const auto p = base.parameter_count();
    struct Leg {
      const RingExpr* expr;
      Analysis analysis;
      bool affine;
    };
    std::vector<Leg> legs;
    for (const auto& child : e.children()) {
      auto ca = analyze(child);
      if (child.kind() == RingExpr::Kind::BaseField && child.field() == base) continue;
      legs.push_back({&child, std::move(ca), child.flat() && child.flat()->base() == base});
    }
    Analysis a;
    a.noetherian = e.flat().has_value();
    for (const auto& l : legs) a.subfield = max(a.subfield, l.analysis.subfield);
    std::vector<TraceEntry> claims;

    const bool any_empty = std::any_of(legs.begin(), legs.end(), [](const Leg& l) { return l.analysis.empty; });
    const bool all_fields = std::all_of(legs.begin(), legs.end(), [](const Leg& l) { return l.analysis.is_field; });
    if (any_empty) {
      claims.push_back(entry("TENSOR-ZERO", cite::zero_tensor, Effect::Empty, Count{}));
    } else if (legs.empty()) {
      claims = rule_thm24({FieldExtensionDescriptor{base, Count::finite(0), {}}}).trace;
      a.is_field = a.domain = true;
    } else if (legs.size() == 1) {
      const auto& c = legs.front().analysis;
      a = c;
      a.trdeg.reset();
      claims.push_back(c.lo.infinite ? entry("TENSOR-UNIT", cite::unit, Effect::Infinite, Count::countable())
                                     : entry("TENSOR-UNIT", cite::unit, Effect::Lower, c.lo));
      if (!c.lo.infinite && !c.hi.infinite) claims.push_back(entry("TENSOR-UNIT", cite::unit, Effect::Upper, c.hi));
    } else if (all_fields) {
      std::vector<FieldExtensionDescriptor> factors;
      for (const auto& l : legs) factors.push_back({base, field_trdeg(l, p), {}});
      claims = rule_thm24(factors).trace;
      if (legs.size() == 2) {
        // the same ring read as L ⊗ A with L the smaller field
        const std::size_t small = factors[1].trdeg < factors[0].trdeg ? 1 : 0;
        const auto& other = legs[1 - small];
        Analysis as_a = other.analysis;
        two_leg(factors[small].trdeg, as_a, noetherian(*other.expr, other.analysis, claims), factors[1 - small].trdeg, claims);
      }
      // a localization of a finite-type algebra over at most one infinite leg
      a.noetherian = std::count_if(factors.begin(), factors.end(), [](const auto& f) { return f.trdeg.infinite; }) <= 1;
    } else {
      auto field_leg = std::find_if(legs.begin(), legs.end(), [](const Leg& l) { return l.analysis.is_field && !l.affine; });
      std::vector<const Leg*> rest;
      for (auto it = legs.begin(); it != legs.end(); ++it) {
        if (it != field_leg) rest.push_back(&*it);
      }
      const bool rest_affine = std::all_of(rest.begin(), rest.end(), [](const Leg* l) { return l->affine; });
      if (field_leg != legs.end() && (rest.size() == 1 || rest_affine)) {
        Analysis as_a;
        bool as_a_noetherian = true;
        if (rest.size() == 1) {
          as_a = rest.front()->analysis;
          as_a_noetherian = noetherian(*rest.front()->expr, as_a, claims);
        } else {
          as_a = juxtaposition(rest, base);
        }
        two_leg(field_trdeg(*field_leg, p), as_a, as_a_noetherian, minus(as_a.subfield, p), claims);
      } else if (field_leg == legs.end() && rest_affine) {
        claims.push_back(note("TENSOR-AFFINE", cite::juxtapose));
      } else {
        claims.push_back(entry("NO-RULE", cite::no_rule, Effect::Lower, Count::finite(0)));
      }
    }
    settle(e, std::move(claims), a);
    return a;
  }

  Count field_trdeg(const auto& leg, std::size_t p) const {
    const auto& a = leg.analysis;
    if (!a.frac_trdeg) throw UsageError("transcendence degree of " + leg.expr->to_string() + " is unknown");
    return minus(*a.frac_trdeg, p);
  }

  // dim of the juxtaposed affine legs, by the kernel.
  template <class Legs>
  Analysis juxtaposition(const Legs& rest, const CoefficientField& base) {
    auto juxt = AffineAlgebra::polynomial_ring(PolynomialRing(base, {}));
    for (const auto* l : rest) juxt = tensor_flatten_affine(juxt, *l->expr->flat());
    check_variable_cap(juxt.ring(), options_.engine);
    const auto d = dim_affine(juxt, options_.engine);
    Analysis a;
    a.noetherian = true;
    for (const auto* l : rest) a.subfield = max(a.subfield, l->analysis.subfield);
    auto k = entry("KERNEL", cite::kernel, d.kind() == DimensionValue::Kind::EmptyRing ? Effect::Empty : Effect::Exact,
                   d.kind() == DimensionValue::Kind::EmptyRing ? Count{} : Count::finite(d.value()));
    k.node = juxt.to_string();
    out_.trace.push_back(k);
    out_.kernel_checks.push_back({k.node, "affine", d, true});
    if (d.kind() == DimensionValue::Kind::EmptyRing) {
      a.empty = true;
    } else {
      a.lo = a.hi = Count::finite(d.value());
    }
    return a;
  }

  void two_leg(const Count& n, const Analysis& as_a, bool a_noetherian, const Count& m, std::vector<TraceEntry>& claims) {
    if (as_a.empty) {
      claims.push_back(entry("TENSOR-ZERO", cite::zero_tensor, Effect::Empty, Count{}));
      return;
    }
    if (n.infinite) {
      if (auto r = rule_thm1_infinite(n, m)) {
        claims.push_back(*r);
        return;
      }
      // K(X_1..X_m) ⊗ A sits faithfully flat under L ⊗ A
      const auto lower = rule_thm1_lower(m.value, as_a.value());
      claims.push_back(lower);
      if (auto r = rule_faithflat_lb(n, m.value, lower.value)) claims.push_back(*r);
      return;
    }
    const auto r = rule_cor23(n.value, as_a.value(), a_noetherian, m);
    claims.insert(claims.end(), r.trace.begin(), r.trace.end());
  }

  bool noetherian(const RingExpr& e, const Analysis& a, std::vector<TraceEntry>& claims) {
    if (a.noetherian) return true;
    if (!options_.assert_noetherian) return false;
    claims.push_back(note("NOETHERIAN-ASSERTED", cite::asserted_noetherian, {e.to_string()}));
    out_.asserted = true;
    return true;
  }

  template <class F>
  auto guarded(F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const BudgetExhausted&) {
      return std::nullopt;
    }
  }

  // Runs the kernel on e's presentation, then intersects every claim.
  void settle(const RingExpr& e, std::vector<TraceEntry> claims, Analysis& a) {
    const auto node = e.to_string();
    std::optional<KernelCheck> check;
    if (e.flat()) {
      KernelCheck k;
      k.node = node;
      k.method = e.generic_fiber() ? "generic-fiber" : "affine";
      try {
        check_variable_cap(e.flat()->ring(), options_.engine);
        k.value = e.generic_fiber() ? dim_generic_fiber(e.generic_fiber()->first, e.generic_fiber()->second, options_.engine)
                                    : dim_affine(*e.flat(), options_.engine);
        const bool is_empty = k.value.kind() == DimensionValue::Kind::EmptyRing;
        claims.push_back(entry(e.generic_fiber() ? "KERNEL-GENERIC-FIBER" : "KERNEL",
                               e.generic_fiber() ? cite::generic_fiber : cite::kernel,
                               is_empty ? Effect::Empty : Effect::Exact,
                               is_empty ? Count{} : Count::finite(k.value.value()), {e.flat()->to_string()}));
        check = k;
      } catch (const BudgetExhausted& ex) {
        if (!closed(claims)) throw;
        claims.push_back(note("KERNEL", cite::kernel, {std::string("skipped: ") + ex.what()}));
      } catch (const UsageError& ex) {
        if (!closed(claims)) throw;
        claims.push_back(note("KERNEL", cite::kernel, {std::string("skipped: ") + ex.what()}));
      }
    }

    const bool empty = std::any_of(claims.begin(), claims.end(), [](const TraceEntry& c) { return c.effect == Effect::Empty; });
    Count lo = Count::finite(0), hi = Count::countable();
    std::string lo_rule = "(none)", hi_rule = "(none)";
    std::optional<std::pair<Count, std::string>> exact;
    for (auto& c : claims) {
      c.node = node;
      if (empty) continue;
      switch (c.effect) {
        case Effect::Exact:
          if (exact && exact->first != c.value) {
            throw InconsistencyError("at " + node + ": " + exact->second + " gives " + exact->first.to_string() + " but " +
                                     c.rule + " gives " + c.value.to_string());
          }
          exact = std::make_pair(c.value, c.rule);
          if (lo < c.value) lo = c.value, lo_rule = c.rule;
          if (c.value < hi) hi = c.value, hi_rule = c.rule;
          break;
        case Effect::Lower:
          if (lo < c.value) lo = c.value, lo_rule = c.rule;
          break;
        case Effect::Upper:
          if (c.value < hi) hi = c.value, hi_rule = c.rule;
          break;
        case Effect::Infinite:
          lo = Count::countable(), lo_rule = c.rule;
          break;
        default:
          break;
      }
    }
    if (!empty && hi < lo) {
      throw InconsistencyError("at " + node + ": lower bound " + lo.to_string() + " from " + lo_rule +
                               " exceeds upper bound " + hi.to_string() + " from " + hi_rule);
    }
    if (empty) {
      a.empty = true;
      a.is_field = false;
      a.domain = false;
    } else {
      a.lo = lo;
      a.hi = hi;
    }
    out_.trace.insert(out_.trace.end(), claims.begin(), claims.end());
    if (check) {
      check->consistent = check->value == a.value();
      out_.kernel_checks.push_back(*check);
    }
  }

  const EvaluateOptions& options_;
  DimensionResult& out_;
};

}  // namespace

DimensionResult evaluate(const RingExpr& expr, const EvaluateOptions& options) {
  DimensionResult out;
  Evaluator evaluator(options, out);
  const auto a = evaluator.analyze(expr);
  out.value = a.value();
  out.flattened = expr.flat();
  out.trdeg = a.trdeg;
  return out;
}

}  // namespace krull
