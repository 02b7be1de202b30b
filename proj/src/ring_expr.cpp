#include "krull/ring_expr.hpp"

#include <algorithm>
#include <set>

#include "krull/error.hpp"

namespace krull {
namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string join_polys(const std::vector<Polynomial>& polys) {
  std::vector<std::string> parts;
  for (const auto& p : polys) parts.push_back(p.to_string());
  return join(parts, ", ");
}

// Names built from `stem` + 1, 2, ... avoiding `taken`; each pick is added to it.
std::vector<std::string> fresh_names(const std::string& stem, std::size_t count, std::set<std::string>& taken) {
  std::vector<std::string> out;
  for (std::size_t i = 1; out.size() < count; ++i) {
    auto name = stem + std::to_string(i);
    if (taken.insert(name).second) out.push_back(name);
  }
  return out;
}

std::set<std::string> names_of(const PolynomialRing& ring) {
  std::set<std::string> s(ring.variables().begin(), ring.variables().end());
  s.insert(ring.field().parameters().begin(), ring.field().parameters().end());
  return s;
}

std::vector<Polynomial> nonzero_generators(const IdealPresentation& ideal) {
  std::vector<Polynomial> out;
  for (const auto& g : ideal.generators()) {
    if (!g.is_zero()) out.push_back(g);
  }
  return out;
}

bool params_subset(const CoefficientField& small, const CoefficientField& large) {
  if (small.characteristic() != large.characteristic()) return false;
  for (const auto& p : small.parameters()) {
    const auto& lp = large.parameters();
    if (std::find(lp.begin(), lp.end(), p) == lp.end()) return false;
  }
  return true;
}

// Scalar of a function field that lies in the ground field, as a ground scalar.
Scalar ground_value(const CoefficientField& field, const Scalar& s) {
  if (s.is_ground()) return s;
  const auto& num = s.fraction().num;
  if (num.empty()) return field.ground().zero();
  return Scalar(num.front().coeff);
}

// A's presentation re-read over its ground field; every coefficient must be
// a ground constant.
std::optional<AffineAlgebra> descend_to_ground(const AffineAlgebra& algebra) {
  const auto& field = algebra.base();
  const PolynomialRing ring(field.ground(), algebra.ring().variables());
  std::vector<Polynomial> gens;
  for (const auto& g : algebra.presentation().generators()) {
    std::vector<Term> terms;
    for (const auto& t : g.terms()) {
      if (!field.is_ground_constant(t.coeff)) return std::nullopt;
      terms.push_back({t.monomial, ground_value(field, t.coeff)});
    }
    gens.push_back(Polynomial::from_terms(ring, std::move(terms)));
  }
  return AffineAlgebra(IdealPresentation(ring, std::move(gens)));
}

bool is_unit_leg(const RingExpr& leg, const CoefficientField& over) {
  return leg.kind() == RingExpr::Kind::BaseField && leg.field() == over;
}

}  // namespace

void FieldExtensionDescriptor::validate() const {
  if (trdeg.infinite && !algebraic_part.empty()) {
    throw UsageError("an extension of infinite transcendence degree cannot carry an algebraic part");
  }
  std::vector<std::string> symbols;
  for (const auto& a : algebraic_part) {
    const auto& params = base.parameters();
    if (std::find(params.begin(), params.end(), a.symbol) != params.end()) {
      throw UsageError("algebraic symbol '" + a.symbol + "' clashes with a parameter of " + base.to_string());
    }
    if (std::find(symbols.begin(), symbols.end(), a.symbol) != symbols.end()) {
      throw UsageError("algebraic symbol '" + a.symbol + "' adjoined twice");
    }
    symbols.push_back(a.symbol);
  }
  if (algebraic_part.empty()) return;
  const PolynomialRing ring(base, symbols);
  for (std::size_t i = 0; i < algebraic_part.size(); ++i) {
    const auto& p = algebraic_part[i].minimal_polynomial;
    const auto& s = algebraic_part[i].symbol;
    if (p.ring() != ring) throw UsageError("minimal polynomial of '" + s + "' must live in " + ring.to_string());
    for (std::size_t j = i + 1; j < symbols.size(); ++j) {
      if (p.involves(j)) throw UsageError("minimal polynomial of '" + s + "' uses the later symbol '" + symbols[j] + "'");
    }
    std::uint32_t degree = 0;
    for (const auto& t : p.terms()) degree = std::max(degree, t.monomial[i]);
    if (degree == 0) throw UsageError("minimal polynomial of '" + s + "' is constant in '" + s + "'");
    std::size_t leading = 0;
    bool monic = true;
    for (const auto& t : p.terms()) {
      if (t.monomial[i] != degree) continue;
      ++leading;
      for (std::size_t j = 0; j < symbols.size(); ++j) {
        if (j != i && t.monomial[j] != 0) monic = false;
      }
      if (!base.is_one(t.coeff)) monic = false;
    }
    if (!monic || leading != 1) throw UsageError("minimal polynomial of '" + s + "' is not monic in '" + s + "'");
  }
}

bool operator==(const FieldExtensionDescriptor& a, const FieldExtensionDescriptor& b) {
  if (a.base != b.base || a.trdeg != b.trdeg || a.algebraic_part.size() != b.algebraic_part.size()) return false;
  for (std::size_t i = 0; i < a.algebraic_part.size(); ++i) {
    if (a.algebraic_part[i].symbol != b.algebraic_part[i].symbol) return false;
    if (a.algebraic_part[i].minimal_polynomial != b.algebraic_part[i].minimal_polynomial) return false;
  }
  return true;
}

Count trdeg_of(const FieldExtensionDescriptor& desc) { return desc.trdeg; }

CoefficientField adjoin_parameters(const CoefficientField& field, const std::vector<std::string>& extra) {
  if (extra.empty()) return field;
  auto params = field.parameters();
  params.insert(params.end(), extra.begin(), extra.end());
  return CoefficientField::rational_functions(field.ground(), std::move(params));
}

AffineAlgebra read_over(const AffineAlgebra& algebra, const CoefficientField& larger) {
  const PolynomialRing ring(larger, algebra.ring().variables());
  std::vector<Polynomial> gens;
  for (const auto& g : algebra.presentation().generators()) gens.push_back(transfer_by_name(g, ring));
  return AffineAlgebra(IdealPresentation(ring, std::move(gens)));
}

AffineAlgebra tensor_flatten_affine(const AffineAlgebra& a, const AffineAlgebra& b) {
  if (a.base() != b.base()) {
    throw UsageError("cannot juxtapose algebras over " + a.base().to_string() + " and " + b.base().to_string());
  }
  auto taken = names_of(a.ring());
  taken.insert(b.ring().variables().begin(), b.ring().variables().end());
  auto variables = a.ring().variables();
  for (const auto& name : b.ring().variables()) {
    if (std::find(variables.begin(), variables.end(), name) == variables.end()) {
      variables.push_back(name);
    } else {
      variables.push_back(fresh_names(name + "_", 1, taken).front());
    }
  }
  const PolynomialRing ring(a.base(), variables);
  std::vector<Polynomial> images_a, images_b;
  for (std::size_t i = 0; i < a.ring().variable_count(); ++i) images_a.push_back(Polynomial::variable(ring, i));
  for (std::size_t i = 0; i < b.ring().variable_count(); ++i) {
    images_b.push_back(Polynomial::variable(ring, a.ring().variable_count() + i));
  }
  std::vector<Polynomial> gens;
  for (const auto& g : nonzero_generators(a.presentation())) gens.push_back(map_polynomial(g, ring, images_a));
  for (const auto& g : nonzero_generators(b.presentation())) gens.push_back(map_polynomial(g, ring, images_b));
  return AffineAlgebra(IdealPresentation(ring, std::move(gens)));
}

RingExpr RingExpr::base_field(CoefficientField field) {
  Node n;
  n.kind = Kind::BaseField;
  n.base = field;
  n.field = field;
  n.flat = AffineAlgebra::polynomial_ring(PolynomialRing(field, {}));
  return RingExpr(std::make_shared<const Node>(std::move(n)));
}

RingExpr RingExpr::field_ext(FieldExtensionDescriptor desc) {
  desc.validate();
  Node n;
  n.kind = Kind::FieldExt;
  n.base = desc.base;
  n.field = desc.base;
  if (!desc.trdeg.infinite) {
    std::set<std::string> taken(desc.base.parameters().begin(), desc.base.parameters().end());
    std::vector<std::string> symbols;
    for (const auto& a : desc.algebraic_part) {
      taken.insert(a.symbol);
      symbols.push_back(a.symbol);
    }
    const auto transcendental = fresh_names("_t", desc.trdeg.value, taken);
    const PolynomialRing ring(adjoin_parameters(desc.base, transcendental), symbols);
    std::vector<Polynomial> gens;
    for (const auto& a : desc.algebraic_part) gens.push_back(transfer_by_name(a.minimal_polynomial, ring));
    n.flat = AffineAlgebra(IdealPresentation(ring, std::move(gens)));
  }
  n.extension = std::move(desc);
  return RingExpr(std::make_shared<const Node>(std::move(n)));
}

RingExpr RingExpr::poly(RingExpr inner, std::vector<std::string> variables) {
  if (variables.empty()) throw UsageError("Poly needs at least one variable");
  Node n;
  n.kind = Kind::PolyExt;
  n.base = inner.base();
  n.field = inner.field();
  if (const auto& flat = inner.flat()) {
    const auto ring = flat->ring().extended(variables);
    n.flat = AffineAlgebra(extend_ideal(flat->presentation(), ring));
  } else {
    // no presentation to extend, but names must still be well formed
    static_cast<void>(PolynomialRing(inner.base(), variables));
  }
  n.variables = std::move(variables);
  n.children.push_back(std::move(inner));
  return RingExpr(std::make_shared<const Node>(std::move(n)));
}

RingExpr RingExpr::quotient(RingExpr inner, std::vector<Polynomial> generators) {
  const auto& ring = inner.ring_for("Quot");
  if (generators.empty()) throw UsageError("Quot needs at least one generator");
  Node n;
  n.kind = Kind::Quotient;
  n.base = inner.base();
  n.field = inner.field();
  auto gens = nonzero_generators(inner.flat()->presentation());
  for (const auto& g : generators) {
    if (g.ring() != ring) throw UsageError("Quot generator " + g.to_string() + " is not in " + ring.to_string());
    if (!g.is_zero()) gens.push_back(g);
  }
  n.flat = AffineAlgebra(IdealPresentation(ring, std::move(gens)));
  n.polynomials = std::move(generators);
  n.children.push_back(std::move(inner));
  return RingExpr(std::make_shared<const Node>(std::move(n)));
}

RingExpr RingExpr::loc(RingExpr inner, Polynomial element) {
  const auto& ring = inner.ring_for("Loc");
  if (element.ring() != ring) throw UsageError("Loc element " + element.to_string() + " is not in " + ring.to_string());
  Node n;
  n.kind = Kind::LocElement;
  n.base = inner.base();
  n.field = inner.field();
  // A[1/f] = A[Y]/(fY - 1); membership of f is left to evaluation
  const auto larger = ring.extended({ring.fresh_name("Y")});
  const auto y = Polynomial::variable(larger, larger.variable_count() - 1);
  auto gens = nonzero_generators(extend_ideal(inner.flat()->presentation(), larger));
  gens.push_back(transfer_by_name(element, larger) * y - Polynomial::constant(larger, larger.field().one()));
  n.flat = AffineAlgebra(IdealPresentation(larger, std::move(gens)));
  n.polynomials = {std::move(element)};
  n.children.push_back(std::move(inner));
  return RingExpr(std::make_shared<const Node>(std::move(n)));
}

RingExpr RingExpr::loc_sub(RingExpr inner, std::vector<Polynomial> generators) {
  const auto& ring = inner.ring_for("LocSub");
  if (generators.empty()) throw UsageError("LocSub needs at least one subring generator");
  for (const auto& t : generators) {
    if (t.ring() != ring) throw UsageError("LocSub generator " + t.to_string() + " is not in " + ring.to_string());
  }
  Node n;
  n.kind = Kind::LocSubringComplement;
  n.base = inner.base();
  n.field = inner.field();
  // S^{-1}A = A ⊗_{K[Z]} K(Z) = K(Z)[x]/(I + (Z - t)) when K[Z] -> A, Z -> t, is injective
  auto taken = names_of(ring);
  const auto z = fresh_names("_z", generators.size(), taken);
  const auto field = adjoin_parameters(ring.field(), z);
  const PolynomialRing target(field, ring.variables());
  std::vector<Polynomial> gens;
  for (const auto& g : nonzero_generators(inner.flat()->presentation())) gens.push_back(transfer_by_name(g, target));
  const auto offset = ring.field().parameter_count();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    gens.push_back(Polynomial::constant(target, field.parameter(offset + i)) - transfer_by_name(generators[i], target));
  }
  n.flat = AffineAlgebra(IdealPresentation(target, std::move(gens)));
  n.polynomials = std::move(generators);
  n.children.push_back(std::move(inner));
  return RingExpr(std::make_shared<const Node>(std::move(n)));
}

namespace {

CoefficientField default_tensor_base(const std::vector<RingExpr>& legs) {
  const auto& first = legs.front().base();
  for (const auto& leg : legs) {
    if (leg.base().characteristic() != first.characteristic()) {
      throw UsageError("tensor legs over " + first.to_string() + " and " + leg.base().to_string() +
                       " have different characteristics");
    }
  }
  const bool common = std::all_of(legs.begin(), legs.end(), [&](const RingExpr& l) { return l.base() == first; });
  return common ? first : first.ground();
}

}  // namespace

RingExpr RingExpr::tensor(std::vector<RingExpr> legs, std::optional<CoefficientField> over) {
  if (legs.empty()) throw UsageError("Tensor needs at least one leg");
  const auto fallback = default_tensor_base(legs);
  const auto base = over.value_or(fallback);
  for (const auto& leg : legs) {
    if (!params_subset(base, leg.base())) {
      throw UsageError("tensor leg " + leg.to_string() + " is not an algebra over " + base.to_string());
    }
  }
  Node n;
  n.kind = Kind::Tensor;
  n.base = base;
  n.field = base;

  std::vector<AffineAlgebra> affine;
  std::vector<const RingExpr*> other;
  for (const auto& leg : legs) {
    if (is_unit_leg(leg, base)) continue;
    if (leg.flat() && leg.flat()->base() == base) {
      affine.push_back(*leg.flat());
    } else {
      other.push_back(&leg);
    }
  }
  auto juxtaposed = AffineAlgebra::polynomial_ring(PolynomialRing(base, {}));
  for (const auto& a : affine) juxtaposed = tensor_flatten_affine(juxtaposed, a);
  if (other.empty()) {
    n.flat = juxtaposed;
  } else if (other.size() == 1 && !base.is_function_field() && other.front()->flat()) {
    // L ⊗ A with L = K(P) ⊗ B, B over K: the generic fiber of B ⊗ A
    const auto& leg_flat = *other.front()->flat();
    if (leg_flat.base().is_function_field() && leg_flat.base().ground() == base) {
      if (auto descended = descend_to_ground(leg_flat)) {
        auto combined = tensor_flatten_affine(*descended, juxtaposed);
        const auto count = leg_flat.base().parameter_count();
        n.flat = read_over(combined, generic_fiber_ring(combined.ring(), count).field());
        n.generic_fiber = std::make_pair(std::move(combined), count);
      }
    }
  }
  n.explicit_base = over.has_value() && *over != fallback;
  n.children = std::move(legs);
  return RingExpr(std::make_shared<const Node>(std::move(n)));
}

RingExpr RingExpr::frac(RingExpr inner) {
  Node n;
  n.kind = Kind::FracField;
  n.base = inner.base();
  n.field = inner.field();
  const auto ik = inner.kind();
  if (ik == Kind::BaseField || ik == Kind::FieldExt || ik == Kind::FracField) {
    n.flat = inner.flat();
  } else if (const auto& flat = inner.flat(); flat && flat->presentation().is_zero_ideal()) {
    // Frac(K[x]) = K(x)
    n.flat = AffineAlgebra::polynomial_ring(PolynomialRing(adjoin_parameters(flat->base(), flat->ring().variables()), {}));
  }
  n.children.push_back(std::move(inner));
  return RingExpr(std::make_shared<const Node>(std::move(n)));
}

const PolynomialRing& RingExpr::ring_for(const std::string& what) const {
  if (!node_->flat) throw UsageError(what + " needs an affine presentation, but " + to_string() + " has none");
  return node_->flat->ring();
}

std::string RingExpr::to_string() const {
  switch (kind()) {
    case Kind::BaseField:
      return field().to_string();
    case Kind::FieldExt: {
      const auto& e = extension();
      std::string out = "Ext(" + e.base.to_string() + "; " + e.trdeg.to_string();
      if (!e.algebraic_part.empty()) {
        std::vector<Polynomial> polys;
        for (const auto& a : e.algebraic_part) polys.push_back(a.minimal_polynomial);
        out += "; " + join_polys(polys);
      }
      return out + ")";
    }
    case Kind::PolyExt:
      return "Poly(" + child().to_string() + "; " + join(variables(), ",") + ")";
    case Kind::Quotient:
      return "Quot(" + child().to_string() + "; " + join_polys(polynomials()) + ")";
    case Kind::LocElement:
      return "Loc(" + child().to_string() + "; " + join_polys(polynomials()) + ")";
    case Kind::LocSubringComplement:
      return "LocSub(" + child().to_string() + "; " + join_polys(polynomials()) + ")";
    case Kind::Tensor: {
      std::vector<std::string> parts;
      for (const auto& leg : children()) parts.push_back(leg.to_string());
      return "Tensor(" + join(parts, ", ") + (node_->explicit_base ? "; " + base().to_string() : "") + ")";
    }
    case Kind::FracField:
      return "Frac(" + child().to_string() + ")";
  }
  return "";
}

bool operator==(const RingExpr& a, const RingExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.base() != b.base() || a.field() != b.field()) return false;
  if (a.node_->extension.has_value() != b.node_->extension.has_value()) return false;
  if (a.node_->extension && !(*a.node_->extension == *b.node_->extension)) return false;
  return a.children() == b.children() && a.variables() == b.variables() && a.polynomials() == b.polynomials();
}

}  // namespace krull
