#include "krull/ideal.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "krull/error.hpp"

namespace krull {

namespace {

// Terms sorted descending under a working order.
using OrderedTerms = std::vector<Term>;

struct Working {
  OrderedTerms terms;
  Monomial lead() const { return terms.front().monomial; }
};

OrderedTerms sorted_terms(const Polynomial& p, const MonomialOrder& order) {
  OrderedTerms out = p.terms();
  if (order.kind() != MonomialOrder::Kind::GrevLex) {
    std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) { return order.greater(a.monomial, b.monomial); });
  }
  return out;
}

// f[offset..] - c*m*g, both sorted under `order`.
OrderedTerms sub_multiple(const OrderedTerms& f, std::size_t offset, const Scalar& c, const Monomial& m,
                          const OrderedTerms& g, const MonomialOrder& order, const CoefficientField& field) {
  OrderedTerms out;
  out.reserve(f.size() - offset + g.size());
  std::size_t i = offset, j = 0;
  while (i < f.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(f[i++]);
      continue;
    }
    Monomial gm = g[j].monomial * m;
    if (i == f.size()) {
      out.push_back({std::move(gm), field.neg(field.mul(c, g[j].coeff))});
      ++j;
      continue;
    }
    const auto cmp = order.compare(f[i].monomial, gm);
    if (cmp > 0) {
      out.push_back(f[i++]);
    } else if (cmp < 0) {
      out.push_back({std::move(gm), field.neg(field.mul(c, g[j].coeff))});
      ++j;
    } else {
      auto s = field.sub(f[i].coeff, field.mul(c, g[j].coeff));
      if (!field.is_zero(s)) out.push_back({f[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

// Full reduction; `reducers` lists indices into `basis`, leading monomials descending.
OrderedTerms reduce_full(OrderedTerms f, const std::vector<Working>& basis, const std::vector<std::size_t>& reducers,
                         const MonomialOrder& order, const CoefficientField& field, std::size_t skip = SIZE_MAX) {
  OrderedTerms remainder;
  std::size_t offset = 0;
  while (offset < f.size()) {
    const Term& top = f[offset];
    const auto top_support = top.monomial.support();
    const Working* divisor = nullptr;
    for (auto idx : reducers) {
      if (idx == skip) continue;
      const auto& lead = basis[idx].terms.front().monomial;
      if ((lead.support() & ~top_support) != 0) continue;
      if (lead.divides(top.monomial)) {
        divisor = &basis[idx];
        break;
      }
    }
    if (!divisor) {
      remainder.push_back(top);
      ++offset;
      continue;
    }
    const auto& lead = divisor->terms.front();
    const Scalar c = field.div(top.coeff, lead.coeff);
    const Monomial m = top.monomial.quotient(lead.monomial);
    // top term cancels exactly; skip it and merge the rest
    OrderedTerms tail(divisor->terms.begin() + 1, divisor->terms.end());
    f = sub_multiple(f, offset + 1, c, m, tail, order, field);
    offset = 0;
  }
  return remainder;
}

OrderedTerms make_monic(OrderedTerms t, const CoefficientField& field) {
  if (t.empty()) return t;
  const Scalar inv = field.inv(t.front().coeff);
  for (auto& term : t) term.coeff = field.mul(term.coeff, inv);
  return t;
}

Polynomial to_polynomial(const PolynomialRing& ring, OrderedTerms terms) {
  return Polynomial::from_terms(ring, std::move(terms));
}

void insert_reducer(std::vector<std::size_t>& reducers, std::size_t idx, const std::vector<Working>& basis,
                    const MonomialOrder& order) {
  auto pos = std::find_if(reducers.begin(), reducers.end(), [&](std::size_t other) {
    return order.greater(basis[idx].lead(), basis[other].lead());
  });
  reducers.insert(pos, idx);
}

std::vector<Polynomial> compute_basis(const IdealPresentation& ideal, const MonomialOrder& order,
                                      const EngineOptions& options) {
  const auto& ring = ideal.ring();
  const auto& field = ring.field();
  std::vector<Working> basis;
  std::vector<std::size_t> reducers;

  struct PairKey {
    std::uint64_t degree;
    Monomial lcm;
    std::size_t i, j;
  };
  const auto pair_less = [&order](const PairKey& a, const PairKey& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (auto c = order.compare(a.lcm, b.lcm); c != 0) return c < 0;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  };
  std::set<PairKey, decltype(pair_less)> queue(pair_less);
  std::set<std::pair<std::size_t, std::size_t>> pending;
  bool unit = false;

  const auto add_element = [&](OrderedTerms h) {
    h = make_monic(std::move(h), field);
    if (h.front().monomial.is_one()) {
      unit = true;
      return;
    }
    const std::size_t k = basis.size();
    basis.push_back({std::move(h)});
    for (std::size_t i = 0; i < k; ++i) {
      auto l = basis[i].lead().lcm(basis[k].lead());
      queue.insert({l.degree(), l, i, k});
      pending.insert({i, k});
    }
    insert_reducer(reducers, k, basis, order);
  };

  for (const auto& g : ideal.generators()) {
    if (g.is_zero()) continue;
    auto h = reduce_full(sorted_terms(g, order), basis, reducers, order, field);
    if (!h.empty()) add_element(std::move(h));
    if (unit) break;
  }

  std::size_t reductions = 0;
  while (!unit && !queue.empty()) {
    const PairKey pair = *queue.begin();
    queue.erase(queue.begin());
    pending.erase({pair.i, pair.j});
    const auto& li = basis[pair.i].lead();
    const auto& lj = basis[pair.j].lead();
    if (li.coprime(lj)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pair.i || k == pair.j) continue;
      if (!basis[k].lead().divides(pair.lcm)) continue;
      const auto key_ik = std::minmax(pair.i, k);
      const auto key_jk = std::minmax(pair.j, k);
      if (!pending.count({key_ik.first, key_ik.second}) && !pending.count({key_jk.first, key_jk.second})) {
        chain = true;
      }
    }
    if (chain) continue;
    if (++reductions > options.max_pair_reductions) {
      throw BudgetExhausted("budget exhausted: more than " + std::to_string(options.max_pair_reductions) +
                            " pair reductions for an ideal in " + ring.to_string());
    }
    const auto& fi = basis[pair.i].terms;
    const auto& fj = basis[pair.j].terms;
    // both monic: S = (lcm/li)*fi - (lcm/lj)*fj
    OrderedTerms left;
    left.reserve(fi.size());
    const auto mi = pair.lcm.quotient(li);
    for (std::size_t t = 1; t < fi.size(); ++t) left.push_back({fi[t].monomial * mi, fi[t].coeff});
    OrderedTerms tail_j(fj.begin() + 1, fj.end());
    auto s = sub_multiple(left, 0, field.one(), pair.lcm.quotient(lj), tail_j, order, field);
    auto h = reduce_full(std::move(s), basis, reducers, order, field);
    if (!h.empty()) add_element(std::move(h));
  }

  if (unit) return {Polynomial::constant(ring, field.one())};

  // minimalize: drop elements whose leading monomial is divisible by another's
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& li = basis[i].lead();
      const auto& lj = basis[j].lead();
      if (lj.divides(li) && (li != lj || j < i)) redundant = true;
    }
    if (!redundant) kept.push_back(i);
  }
  std::vector<std::size_t> kept_sorted;
  for (auto idx : kept) insert_reducer(kept_sorted, idx, basis, order);
  std::vector<Polynomial> result;
  for (auto idx : kept_sorted) {
    auto reduced = reduce_full(basis[idx].terms, basis, kept_sorted, order, field, idx);
    result.push_back(to_polynomial(ring, make_monic(std::move(reduced), field)));
  }
  return result;
}

}  // namespace

IdealPresentation::IdealPresentation(PolynomialRing ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), generators_(std::move(generators)), memo_(std::make_shared<Memo>()) {
  for (const auto& g : generators_) {
    if (g.ring() != ring_) {
      throw UsageError("generator " + g.to_string() + " does not live in " + ring_.to_string());
    }
  }
  if (generators_.empty()) generators_.push_back(Polynomial(ring_));
}

bool IdealPresentation::is_zero_ideal() const {
  return std::all_of(generators_.begin(), generators_.end(), [](const Polynomial& g) { return g.is_zero(); });
}

std::vector<Polynomial> IdealPresentation::groebner_basis(const MonomialOrder& order, const EngineOptions& options) const {
  const auto key = order.key();
  {
    std::lock_guard lock(memo_->mutex);
    auto it = memo_->bases.find(key);
    if (it != memo_->bases.end()) return *it->second;
  }
  auto computed = std::make_shared<const std::vector<Polynomial>>(compute_basis(*this, order, options));
  std::lock_guard lock(memo_->mutex);
  auto [it, inserted] = memo_->bases.emplace(key, computed);
  return *it->second;
}

std::string IdealPresentation::to_string() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) out << ", ";
    out << generators_[i].to_string();
  }
  out << ") in " << ring_.to_string();
  return out.str();
}

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis, const MonomialOrder& order) {
  std::vector<Working> work;
  for (const auto& g : basis) {
    if (g.ring() != f.ring()) throw UsageError("ring mismatch in normal_form");
    if (g.is_zero()) continue;
    work.push_back({sorted_terms(g, order)});
  }
  std::vector<std::size_t> reducers;
  for (std::size_t i = 0; i < work.size(); ++i) insert_reducer(reducers, i, work, order);
  return to_polynomial(f.ring(), reduce_full(sorted_terms(f, order), work, reducers, order, f.field()));
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  const auto [lf, cf] = f.leading_term(order);
  const auto [lg, cg] = g.leading_term(order);
  const auto l = lf.lcm(lg);
  const auto& field = f.field();
  return f.times_term(l.quotient(lf), field.inv(cf)) - g.times_term(l.quotient(lg), field.inv(cg));
}

std::vector<Polynomial> buchberger(const IdealPresentation& ideal, const MonomialOrder& order,
                                   const EngineOptions& options) {
  return ideal.groebner_basis(order, options);
}

bool ideal_membership(const Polynomial& f, const IdealPresentation& ideal, const EngineOptions& options) {
  if (f.ring() != ideal.ring()) throw UsageError("ring mismatch in membership test");
  if (f.is_zero()) return true;
  const auto order = MonomialOrder::grevlex();
  const auto basis = ideal.groebner_basis(order, options);
  return normal_form(f, basis, order).is_zero();
}

bool same_ideal(const IdealPresentation& a, const IdealPresentation& b, const EngineOptions& options) {
  if (a.ring() != b.ring()) throw UsageError("ring mismatch comparing ideals");
  for (const auto& g : a.generators()) {
    if (!ideal_membership(g, b, options)) return false;
  }
  for (const auto& g : b.generators()) {
    if (!ideal_membership(g, a, options)) return false;
  }
  return true;
}

bool contains_one(const IdealPresentation& ideal, const EngineOptions& options) {
  return ideal_membership(Polynomial::constant(ideal.ring(), ideal.ring().field().one()), ideal, options);
}

IdealPresentation eliminate(const IdealPresentation& ideal, const std::vector<std::size_t>& keep,
                            const EngineOptions& options) {
  const auto& ring = ideal.ring();
  std::uint64_t keep_mask = 0;
  for (auto k : keep) {
    if (k >= ring.variable_count()) throw UsageError("eliminate: variable index out of range");
    keep_mask |= std::uint64_t{1} << k;
  }
  std::vector<std::size_t> block;
  for (std::size_t i = 0; i < ring.variable_count(); ++i) {
    if (!((keep_mask >> i) & 1u)) block.push_back(i);
  }
  if (block.empty()) return ideal;
  const auto basis = ideal.groebner_basis(MonomialOrder::elimination(block), options);
  std::vector<Polynomial> kept;
  for (const auto& g : basis) {
    if ((g.support() & ~keep_mask) == 0) kept.push_back(g);
  }
  return IdealPresentation(ring, std::move(kept));
}

IdealPresentation eliminate(const IdealPresentation& ideal, const std::vector<std::string>& keep,
                            const EngineOptions& options) {
  std::vector<std::size_t> indices;
  for (const auto& name : keep) {
    auto idx = ideal.ring().index_of(name);
    if (!idx) throw UsageError("eliminate: unknown variable '" + name + "'");
    indices.push_back(*idx);
  }
  return eliminate(ideal, indices, options);
}

IdealPresentation extend_ideal(const IdealPresentation& ideal, const PolynomialRing& larger) {
  const auto& ring = ideal.ring();
  if (larger.variable_count() < ring.variable_count() || larger.field() != ring.field()) {
    throw UsageError("extend_ideal: target ring does not extend " + ring.to_string());
  }
  const auto extra = larger.variable_count() - ring.variable_count();
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) {
    std::vector<Term> terms;
    for (const auto& t : g.terms()) terms.push_back({t.monomial.extended(extra), t.coeff});
    gens.push_back(Polynomial::from_terms(larger, std::move(terms)));
  }
  return IdealPresentation(larger, std::move(gens));
}

Polynomial restrict_polynomial(const Polynomial& p, const PolynomialRing& smaller) {
  const auto n = smaller.variable_count();
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    const auto& e = t.monomial.exponents();
    for (std::size_t i = n; i < e.size(); ++i) {
      if (e[i] != 0) throw UsageError("restrict: polynomial involves a dropped variable");
    }
    terms.push_back({Monomial(Exponents(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n))), t.coeff});
  }
  return Polynomial::from_terms(smaller, std::move(terms));
}

namespace {

IdealPresentation restrict_ideal(const IdealPresentation& ideal, const PolynomialRing& smaller) {
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(restrict_polynomial(g, smaller));
  return IdealPresentation(smaller, std::move(gens));
}

std::vector<std::size_t> first_indices(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

}  // namespace

IdealPresentation intersect(const IdealPresentation& a, const IdealPresentation& b, const EngineOptions& options) {
  const auto& ring = a.ring();
  if (b.ring() != ring) throw UsageError("ring mismatch in intersect");
  if (a.is_zero_ideal() || b.is_zero_ideal()) return IdealPresentation(ring, {});
  const auto tag_name = ring.fresh_name("_tag");
  const auto larger = ring.extended({tag_name});
  const auto tag = Polynomial::variable(larger, ring.variable_count());
  const auto one = Polynomial::constant(larger, larger.field().one());
  std::vector<Polynomial> gens;
  const auto big_a = extend_ideal(a, larger);
  const auto big_b = extend_ideal(b, larger);
  for (const auto& g : big_a.generators()) gens.push_back(tag * g);
  for (const auto& g : big_b.generators()) gens.push_back((one - tag) * g);
  const auto eliminated = eliminate(IdealPresentation(larger, std::move(gens)), first_indices(ring.variable_count()), options);
  return restrict_ideal(eliminated, ring);
}

IdealPresentation ideal_quotient(const IdealPresentation& ideal, const Polynomial& f, const EngineOptions& options) {
  if (f.ring() != ideal.ring()) throw UsageError("ring mismatch in ideal_quotient");
  if (f.is_zero()) throw UsageError("ideal_quotient: divisor must be nonzero");
  const auto& ring = ideal.ring();
  if (ideal.is_zero_ideal()) return IdealPresentation(ring, {});
  const auto meet = intersect(ideal, IdealPresentation(ring, {f}), options);
  std::vector<Polynomial> gens;
  for (const auto& g : meet.generators()) gens.push_back(divide_exact(g, f));
  return IdealPresentation(ring, std::move(gens));
}

IdealPresentation saturate(const IdealPresentation& ideal, const Polynomial& f, const EngineOptions& options) {
  if (f.ring() != ideal.ring()) throw UsageError("ring mismatch in saturate");
  if (f.is_zero()) throw UsageError("saturate: element must be nonzero");
  const auto& ring = ideal.ring();
  if (ideal.is_zero_ideal()) return IdealPresentation(ring, {});
  const auto y_name = ring.fresh_name("_Y");
  const auto larger = ring.extended({y_name});
  const auto y = Polynomial::variable(larger, ring.variable_count());
  auto extended = extend_ideal(ideal, larger);
  auto gens = extended.generators();
  const auto f_big = extend_ideal(IdealPresentation(ring, {f}), larger).generators().front();
  gens.push_back(f_big * y - Polynomial::constant(larger, larger.field().one()));
  const auto eliminated = eliminate(IdealPresentation(larger, std::move(gens)), first_indices(ring.variable_count()), options);
  return restrict_ideal(eliminated, ring);
}

namespace {

ParamPoly param_lcm(const ParamPoly& a, const ParamPoly& b, std::uint64_t p) {
  return param::divide_exact(param::mul(a, b, p), param::gcd(a, b, p), p);
}

// Parameter polynomial as an element of the flat ring (parameters first).
Polynomial lift_param(const ParamPoly& a, const PolynomialRing& flat, std::size_t tail) {
  std::vector<Term> terms;
  for (const auto& t : a) {
    Exponents e = t.exponents;
    e.resize(e.size() + tail, 0);
    terms.push_back({Monomial(std::move(e)), flat.field().from_rational(t.coeff)});
  }
  return Polynomial::from_terms(flat, std::move(terms));
}

}  // namespace

PolynomialRing parameter_flattened_ring(const PolynomialRing& ring) {
  std::vector<std::string> names = ring.field().parameters();
  names.insert(names.end(), ring.variables().begin(), ring.variables().end());
  return PolynomialRing(ring.field().ground(), std::move(names));
}

Polynomial clear_parameter_denominators(const Polynomial& p, const PolynomialRing& flat) {
  const auto& field = p.field();
  const std::uint64_t ch = field.characteristic();
  const std::size_t m = field.parameter_count();
  const auto as_fraction = [&](const Scalar& s) -> RationalFunction {
    if (s.is_ground()) return {param::constant(s.ground(), m, ch), param::constant(1, m, ch)};
    return s.fraction();
  };
  ParamPoly denominator = param::constant(1, m, ch);
  for (const auto& t : p.terms()) denominator = param_lcm(denominator, as_fraction(t.coeff).den, ch);
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    const auto f = as_fraction(t.coeff);
    const auto coeff = param::mul(f.num, param::divide_exact(denominator, f.den, ch), ch);
    for (const auto& c : coeff) {
      Exponents e = c.exponents;
      e.insert(e.end(), t.monomial.exponents().begin(), t.monomial.exponents().end());
      terms.push_back({Monomial(std::move(e)), flat.field().from_rational(c.coeff)});
    }
  }
  return Polynomial::from_terms(flat, std::move(terms));
}

IdealPresentation contract_parameters(const IdealPresentation& ideal, const EngineOptions& options) {
  const auto& ring = ideal.ring();
  const auto& field = ring.field();
  if (!field.is_function_field()) return ideal;
  const auto flat = parameter_flattened_ring(ring);
  const auto basis = ideal.groebner_basis(MonomialOrder::grevlex(), options);
  if (basis.empty()) return IdealPresentation(flat, {});
  // With G a basis over K(u) cleared into K[u][x], the contraction is
  // (G) : h^inf where h is the product of the leading coefficients.
  std::vector<Polynomial> cleared;
  ParamPoly h = param::constant(1, field.parameter_count(), field.characteristic());
  for (const auto& g : basis) {
    const auto c = clear_parameter_denominators(g, flat);
    // g is monic, so the leading coefficient of c is the cleared denominator.
    const auto& lead = g.leading_term(MonomialOrder::grevlex()).first;
    ParamPoly lc;
    for (const auto& t : c.terms()) {
      if (std::equal(lead.exponents().begin(), lead.exponents().end(),
                     t.monomial.exponents().begin() + static_cast<std::ptrdiff_t>(field.parameter_count()))) {
        Exponents e(t.monomial.exponents().begin(),
                    t.monomial.exponents().begin() + static_cast<std::ptrdiff_t>(field.parameter_count()));
        lc.push_back({std::move(e), t.coeff.ground()});
      }
    }
    std::sort(lc.begin(), lc.end(), [](const ParamTerm& a, const ParamTerm& b) { return a.exponents > b.exponents; });
    h = param::mul(h, lc, field.characteristic());
    cleared.push_back(c);
  }
  IdealPresentation cleared_ideal(flat, std::move(cleared));
  const auto hp = lift_param(h, flat, ring.variable_count());
  if (hp.is_constant()) return cleared_ideal;
  return saturate(cleared_ideal, hp, options);
}

}  // namespace krull
