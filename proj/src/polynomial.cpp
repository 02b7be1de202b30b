#include "krull/polynomial.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "krull/error.hpp"

namespace krull {

namespace {

const MonomialOrder& canonical_order() {
  static const MonomialOrder order = MonomialOrder::grevlex();
  return order;
}

struct CanonicalGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return canonical_order().greater(a, b); }
};

}  // namespace

PolynomialRing::PolynomialRing(CoefficientField field, std::vector<std::string> variables) {
  std::set<std::string> seen;
  for (const auto& v : variables) {
    if (v.empty()) throw UsageError("empty variable name");
    if (!seen.insert(v).second) throw UsageError("repeated variable '" + v + "'");
  }
  for (const auto& p : field.parameters()) {
    if (seen.count(p)) {
      throw UsageError("variable '" + p + "' is also a parameter of " + field.to_string());
    }
  }
  data_ = std::make_shared<const Data>(Data{std::move(field), std::move(variables)});
}

std::optional<std::size_t> PolynomialRing::index_of(const std::string& name) const {
  const auto& vars = variables();
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vars.begin());
}

PolynomialRing PolynomialRing::extended(const std::vector<std::string>& extra) const {
  auto vars = variables();
  vars.insert(vars.end(), extra.begin(), extra.end());
  return PolynomialRing(field(), std::move(vars));
}

std::string PolynomialRing::fresh_name(const std::string& stem) const {
  const auto taken = [&](const std::string& n) {
    if (index_of(n)) return true;
    const auto& ps = field().parameters();
    return std::find(ps.begin(), ps.end(), n) != ps.end();
  };
  if (!taken(stem)) return stem;
  for (std::size_t i = 1;; ++i) {
    auto candidate = stem + std::to_string(i);
    if (!taken(candidate)) return candidate;
  }
}

bool PolynomialRing::operator==(const PolynomialRing& other) const {
  if (data_ == other.data_) return true;
  return data_->field == other.data_->field && data_->variables == other.data_->variables;
}

std::string PolynomialRing::to_string() const {
  std::string out = field().to_string() + "[";
  for (std::size_t i = 0; i < variable_count(); ++i) {
    if (i) out += ",";
    out += variables()[i];
  }
  return out + "]";
}

Polynomial::Polynomial(PolynomialRing ring) : ring_(std::move(ring)) {}

Polynomial::Polynomial(PolynomialRing ring, std::vector<Term> sorted_terms)
    : ring_(std::move(ring)), terms_(std::move(sorted_terms)) {}

Polynomial Polynomial::from_terms(PolynomialRing ring, std::vector<Term> terms) {
  const auto& field = ring.field();
  std::map<Monomial, Scalar, CanonicalGreater> acc;
  for (auto& t : terms) {
    if (t.monomial.arity() != ring.variable_count()) throw UsageError("monomial arity mismatch");
    auto it = acc.find(t.monomial);
    if (it == acc.end()) {
      acc.emplace(std::move(t.monomial), std::move(t.coeff));
    } else {
      it->second = field.add(it->second, t.coeff);
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (!field.is_zero(c)) out.push_back({m, c});
  }
  return Polynomial(std::move(ring), std::move(out));
}

Polynomial Polynomial::constant(PolynomialRing ring, const Scalar& value) {
  if (ring.field().is_zero(value)) return Polynomial(std::move(ring));
  const auto n = ring.variable_count();
  return Polynomial(std::move(ring), {Term{Monomial(n), value}});
}

Polynomial Polynomial::variable(PolynomialRing ring, std::size_t index) {
  if (index >= ring.variable_count()) throw UsageError("variable index out of range");
  Exponents e(ring.variable_count(), 0);
  e[index] = 1;
  auto one = ring.field().one();
  return Polynomial(std::move(ring), {Term{Monomial(std::move(e)), std::move(one)}});
}

Polynomial Polynomial::variable(PolynomialRing ring, const std::string& name) {
  auto idx = ring.index_of(name);
  if (!idx) throw UsageError("unknown variable '" + name + "' in " + ring.to_string());
  return variable(std::move(ring), *idx);
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

std::uint64_t Polynomial::total_degree() const {
  // grevlex-descending: the first term has maximal degree
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

std::uint64_t Polynomial::support() const {
  std::uint64_t mask = 0;
  for (const auto& t : terms_) mask |= t.monomial.support();
  return mask;
}

bool Polynomial::involves(std::size_t variable) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.monomial[variable] != 0; });
}

std::pair<Monomial, Scalar> Polynomial::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) throw UsageError("leading term of the zero polynomial");
  if (order.kind() == MonomialOrder::Kind::GrevLex) return {terms_.front().monomial, terms_.front().coeff};
  const Term* best = &terms_.front();
  for (const auto& t : terms_) {
    if (order.greater(t.monomial, best->monomial)) best = &t;
  }
  return {best->monomial, best->coeff};
}

void Polynomial::require_same_ring(const Polynomial& other) const {
  if (ring_ != other.ring_) {
    throw UsageError("ring mismatch: " + ring_.to_string() + " vs " + other.ring_.to_string());
  }
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  require_same_ring(other);
  const auto& field = ring_.field();
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  const auto& a = terms_;
  const auto& b = other.terms_;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    if (i == a.size()) {
      out.push_back(b[j++]);
      continue;
    }
    const auto c = canonical_order().compare(a[i].monomial, b[j].monomial);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
    } else {
      auto s = field.add(a[i].coeff, b[j].coeff);
      if (!field.is_zero(s)) out.push_back({a[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::operator-() const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coeff = field().neg(t.coeff);
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& other) const { return *this + (-other); }

Polynomial Polynomial::operator*(const Polynomial& other) const {
  require_same_ring(other);
  const auto& field = ring_.field();
  std::map<Monomial, Scalar, CanonicalGreater> acc;
  for (const auto& x : terms_) {
    for (const auto& y : other.terms_) {
      auto m = x.monomial * y.monomial;
      auto c = field.mul(x.coeff, y.coeff);
      auto it = acc.find(m);
      if (it == acc.end()) {
        acc.emplace(std::move(m), std::move(c));
      } else {
        it->second = field.add(it->second, c);
      }
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (!field.is_zero(c)) out.push_back({m, c});
  }
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  const auto& field = ring_.field();
  if (field.is_zero(c)) return Polynomial(ring_);
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coeff = field.mul(t.coeff, c);
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::times_term(const Monomial& m, const Scalar& c) const {
  const auto& field = ring_.field();
  if (field.is_zero(c)) return Polynomial(ring_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.monomial * m, field.mul(t.coeff, c)});
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(ring_, field().one());
  Polynomial base = *this;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic(const MonomialOrder& order) const {
  if (terms_.empty()) return *this;
  return scaled(field().inv(leading_term(order).second));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.ring_ != b.ring_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].monomial != b.terms_[i].monomial || !(a.terms_[i].coeff == b.terms_[i].coeff)) {
      return false;
    }
  }
  return true;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  const auto& field = ring_.field();
  const auto& names = ring_.variables();
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    Scalar c = t.coeff;
    const bool negative = field.is_negative_literal(c);
    if (negative) c = field.neg(c);
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    std::ostringstream mono;
    bool has_monomial = false;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (t.monomial[i] == 0) continue;
      if (has_monomial) mono << "*";
      mono << names[i];
      if (t.monomial[i] > 1) mono << "^" << t.monomial[i];
      has_monomial = true;
    }
    std::string coeff = field.format(c);
    if (field.summand_count(c) > 1) coeff = "(" + coeff + ")";
    if (!has_monomial) {
      out << coeff;
    } else if (field.is_one(c)) {
      out << mono.str();
    } else {
      out << coeff << "*" << mono.str();
    }
  }
  return out.str();
}

Polynomial add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial mul(const Polynomial& a, const Polynomial& b) { return a * b; }
std::pair<Monomial, Scalar> leading_term(const Polynomial& p, const MonomialOrder& order) {
  return p.leading_term(order);
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw UsageError("division by the zero polynomial");
  const auto& order = canonical_order();
  const auto& field = a.field();
  const auto [lead_m, lead_c] = b.leading_term(order);
  const auto lead_inv = field.inv(lead_c);
  std::vector<Term> quotient;
  Polynomial rest = a;
  while (!rest.is_zero()) {
    const auto& top = rest.terms().front();
    if (!lead_m.divides(top.monomial)) throw Error("inexact polynomial division");
    const auto m = top.monomial.quotient(lead_m);
    const auto c = field.mul(top.coeff, lead_inv);
    quotient.push_back({m, c});
    rest = rest - b.times_term(m, c);
  }
  return Polynomial::from_terms(a.ring(), std::move(quotient));
}

namespace {

ParamPoly to_param(const Polynomial& p) {
  ParamPoly out;
  for (const auto& t : p.terms()) out.push_back({t.monomial.exponents(), t.coeff.ground()});
  std::sort(out.begin(), out.end(), [](const ParamTerm& x, const ParamTerm& y) { return x.exponents > y.exponents; });
  return out;
}

Polynomial from_param(const PolynomialRing& ring, const ParamPoly& q) {
  std::vector<Term> terms;
  for (const auto& t : q) terms.push_back({Monomial(t.exponents), Scalar(t.coeff)});
  return Polynomial::from_terms(ring, std::move(terms));
}

}  // namespace

std::pair<Polynomial, Polynomial> rational_function_normalize(const Polynomial& num, const Polynomial& den) {
  if (num.ring() != den.ring()) throw UsageError("ring mismatch in rational function");
  if (den.is_zero()) throw UsageError("zero denominator");
  const auto& ring = num.ring();
  if (ring.field().is_function_field()) {
    throw UsageError("rational_function_normalize expects a ring over Q or F_p");
  }
  const auto p = ring.field().characteristic();
  auto n = ring.variable_count();
  if (n == 0) {
    // constants: divide through
    auto c = ring.field().div(num.is_zero() ? ring.field().zero() : num.terms()[0].coeff, den.terms()[0].coeff);
    return {Polynomial::constant(ring, c), Polynomial::constant(ring, ring.field().one())};
  }
  auto normalized = param::normalize(to_param(num), to_param(den), p);
  return {from_param(ring, normalized.num), from_param(ring, normalized.den)};
}

Scalar map_scalar(const CoefficientField& source, const CoefficientField& target, const Scalar& value) {
  if (source == target) return value;
  if (source.characteristic() != target.characteristic()) {
    throw UsageError("cannot map " + source.to_string() + " into " + target.to_string());
  }
  if (!source.is_function_field()) return target.from_rational(value.ground());
  if (!target.is_function_field()) {
    throw UsageError("cannot map " + source.to_string() + " into " + target.to_string());
  }
  const auto& from = source.parameters();
  const auto& to = target.parameters();
  std::vector<std::size_t> position(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto it = std::find(to.begin(), to.end(), from[i]);
    if (it == to.end()) {
      throw UsageError("parameter '" + from[i] + "' missing from " + target.to_string());
    }
    position[i] = static_cast<std::size_t>(it - to.begin());
  }
  const auto remap = [&](const ParamPoly& q) {
    ParamPoly out;
    for (const auto& t : q) {
      Exponents e(to.size(), 0);
      for (std::size_t i = 0; i < from.size(); ++i) e[position[i]] = t.exponents[i];
      out.push_back({e, t.coeff});
    }
    std::sort(out.begin(), out.end(), [](const ParamTerm& x, const ParamTerm& y) { return x.exponents > y.exponents; });
    return out;
  };
  return target.fraction(remap(value.fraction().num), remap(value.fraction().den));
}

Polynomial map_polynomial(const Polynomial& p, const PolynomialRing& target, std::span<const Polynomial> images) {
  const auto& source = p.ring();
  if (images.size() != source.variable_count()) throw UsageError("image count does not match variable count");
  for (const auto& img : images) {
    if (img.ring() != target) throw UsageError("image polynomial not in target ring");
  }
  // powers cache per variable
  std::vector<std::vector<Polynomial>> powers(images.size());
  const auto power = [&](std::size_t var, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, target.field().one()));
    while (cache.size() <= e) cache.push_back(cache.back() * images[var]);
    return cache[e];
  };
  Polynomial result(target);
  for (const auto& t : p.terms()) {
    Polynomial term = Polynomial::constant(target, map_scalar(source.field(), target.field(), t.coeff));
    for (std::size_t i = 0; i < images.size() && !term.is_zero(); ++i) {
      if (t.monomial[i] != 0) term = term * power(i, t.monomial[i]);
    }
    result = result + term;
  }
  return result;
}

Polynomial transfer_by_name(const Polynomial& p, const PolynomialRing& target) {
  const auto& source = p.ring();
  std::vector<Polynomial> images;
  images.reserve(source.variable_count());
  const auto& params = target.field().parameters();
  for (const auto& name : source.variables()) {
    if (auto idx = target.index_of(name)) {
      images.push_back(Polynomial::variable(target, *idx));
      continue;
    }
    auto it = std::find(params.begin(), params.end(), name);
    if (it == params.end()) {
      throw UsageError("variable '" + name + "' has no counterpart in " + target.to_string());
    }
    images.push_back(Polynomial::constant(target, target.field().parameter(static_cast<std::size_t>(it - params.begin()))));
  }
  return map_polynomial(p, target, images);
}

Polynomial substitute(const Polynomial& p, std::size_t index, const Polynomial& value) {
  const auto& ring = p.ring();
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < ring.variable_count(); ++i) {
    images.push_back(i == index ? value : Polynomial::variable(ring, i));
  }
  return map_polynomial(p, ring, images);
}

}  // namespace krull
