#include "krull/field.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "krull/error.hpp"

namespace krull {

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  if (a.is_ground()) return a.ground() == b.ground();
  return a.fraction() == b.fraction();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace param {
namespace {

using Greater = std::greater<Exponents>;

std::uint64_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

bool grevlex_greater(const Exponents& a, const Exponents& b) {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

mpq_class ground_add(const mpq_class& a, const mpq_class& b, std::uint64_t p) {
  mpq_class r = a + b;
  if (p != 0) {
    mpz_class n = r.get_num() % mpz_class(static_cast<unsigned long>(p));
    r = mpq_class(n);
  }
  return r;
}

mpq_class ground_mul(const mpq_class& a, const mpq_class& b, std::uint64_t p) {
  mpq_class r = a * b;
  if (p != 0) {
    mpz_class n = r.get_num() % mpz_class(static_cast<unsigned long>(p));
    r = mpq_class(n);
  }
  return r;
}

mpq_class ground_inv(const mpq_class& a, std::uint64_t p) {
  if (a == 0) throw UsageError("division by zero");
  if (p == 0) return 1 / a;
  mpz_class inv;
  mpz_class mod(static_cast<unsigned long>(p));
  mpz_class v = a.get_num();
  mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
  return mpq_class(inv);
}

ParamPoly from_map(const std::map<Exponents, mpq_class, Greater>& acc) {
  ParamPoly out;
  out.reserve(acc.size());
  for (const auto& [e, c] : acc) {
    if (c != 0) out.push_back({e, c});
  }
  return out;
}

std::uint32_t degree_in(const ParamPoly& a, std::size_t k) {
  std::uint32_t d = 0;
  for (const auto& t : a) d = std::max(d, t.exponents[k]);
  return d;
}

ParamPoly coeff_in(const ParamPoly& a, std::size_t k, std::uint32_t d) {
  ParamPoly out;
  for (const auto& t : a) {
    if (t.exponents[k] == d) {
      ParamTerm copy = t;
      copy.exponents[k] = 0;
      out.push_back(std::move(copy));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ParamTerm& x, const ParamTerm& y) { return x.exponents > y.exponents; });
  return out;
}

ParamPoly shift(const ParamPoly& a, std::size_t k, std::uint32_t d) {
  ParamPoly out = a;
  for (auto& t : out) t.exponents[k] += d;
  return out;
}

bool is_constant(const ParamPoly& a) {
  return a.size() == 1 &&
         std::all_of(a[0].exponents.begin(), a[0].exponents.end(), [](auto e) { return e == 0; });
}

std::size_t arity_of(const ParamPoly& a) { return a.empty() ? 0 : a.front().exponents.size(); }

ParamPoly pseudo_remainder(ParamPoly a, const ParamPoly& b, std::size_t k, std::uint64_t p) {
  const auto db = degree_in(b, k);
  const auto lb = coeff_in(b, k, db);
  while (!a.empty() && degree_in(a, k) >= db) {
    const auto da = degree_in(a, k);
    const auto la = coeff_in(a, k, da);
    a = sub(mul(lb, a, p), mul(shift(la, k, da - db), b, p), p);
  }
  return a;
}

ParamPoly gcd_rec(const ParamPoly& a, const ParamPoly& b, std::size_t k, std::size_t m,
                  std::uint64_t p);

ParamPoly content(const ParamPoly& a, std::size_t k, std::size_t m, std::uint64_t p) {
  std::set<std::uint32_t> degrees;
  for (const auto& t : a) degrees.insert(t.exponents[k]);
  ParamPoly c;
  for (auto d : degrees) {
    auto coeff = coeff_in(a, k, d);
    c = c.empty() ? coeff : gcd_rec(c, coeff, k + 1, m, p);
    if (is_constant(c)) return constant(1, m, p);
  }
  return c;
}

ParamPoly gcd_rec(const ParamPoly& a, const ParamPoly& b, std::size_t k, std::size_t m,
                  std::uint64_t p) {
  if (k == m || is_constant(a) || is_constant(b)) return constant(1, m, p);
  const auto ca = content(a, k, m, p);
  const auto cb = content(b, k, m, p);
  const auto g = gcd_rec(ca, cb, k + 1, m, p);
  auto pa = divide_exact(a, ca, p);
  auto pb = divide_exact(b, cb, p);
  if (degree_in(pa, k) < degree_in(pb, k)) std::swap(pa, pb);
  ParamPoly h;
  while (true) {
    if (pb.empty()) {
      h = pa;
      break;
    }
    if (degree_in(pb, k) == 0) {
      h = constant(1, m, p);
      break;
    }
    auto r = pseudo_remainder(pa, pb, k, p);
    pa = std::move(pb);
    pb = r.empty() ? ParamPoly{} : divide_exact(r, content(r, k, m, p), p);
  }
  return mul(g, h, p);
}

}  // namespace

mpq_class reduce(const mpq_class& value, std::uint64_t p) {
  if (p == 0) return value;
  mpz_class mod(static_cast<unsigned long>(p));
  mpz_class den = value.get_den() % mod;
  if (den == 0) throw UsageError("denominator vanishes in characteristic " + std::to_string(p));
  mpz_class num = value.get_num() % mod;
  if (num < 0) num += mod;
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  mpz_class r = (num * inv) % mod;
  return mpq_class(r);
}

ParamPoly constant(const mpq_class& value, std::size_t arity, std::uint64_t p) {
  mpq_class v = reduce(value, p);
  if (v == 0) return {};
  return {ParamTerm{Exponents(arity, 0), v}};
}

ParamPoly add(const ParamPoly& a, const ParamPoly& b, std::uint64_t p) {
  ParamPoly out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].exponents > b[j].exponents)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].exponents > a[i].exponents) {
      out.push_back(b[j++]);
    } else {
      mpq_class c = ground_add(a[i].coeff, b[j].coeff, p);
      if (c != 0) out.push_back({a[i].exponents, c});
      ++i;
      ++j;
    }
  }
  return out;
}

ParamPoly neg(const ParamPoly& a, std::uint64_t p) {
  ParamPoly out = a;
  for (auto& t : out) {
    t.coeff = -t.coeff;
    if (p != 0) t.coeff = reduce(t.coeff, p);
  }
  return out;
}

ParamPoly sub(const ParamPoly& a, const ParamPoly& b, std::uint64_t p) { return add(a, neg(b, p), p); }

ParamPoly mul(const ParamPoly& a, const ParamPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  std::map<Exponents, mpq_class, Greater> acc;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Exponents e = x.exponents;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += y.exponents[i];
      auto [it, inserted] = acc.try_emplace(std::move(e), 0);
      it->second = ground_add(it->second, ground_mul(x.coeff, y.coeff, p), p);
    }
  }
  return from_map(acc);
}

ParamPoly scale(const ParamPoly& a, const mpq_class& c, std::uint64_t p) {
  if (reduce(c, p) == 0) return {};
  ParamPoly out = a;
  for (auto& t : out) t.coeff = ground_mul(t.coeff, reduce(c, p), p);
  return out;
}

ParamPoly divide_exact(const ParamPoly& a, const ParamPoly& b, std::uint64_t p) {
  if (b.empty()) throw UsageError("division by zero polynomial");
  ParamPoly quotient;
  ParamPoly rest = a;
  const auto& lead = b.front();
  const mpq_class lead_inv = ground_inv(lead.coeff, p);
  while (!rest.empty()) {
    const auto& top = rest.front();
    Exponents e(top.exponents.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (top.exponents[i] < lead.exponents[i]) throw Error("inexact polynomial division");
      e[i] = top.exponents[i] - lead.exponents[i];
    }
    ParamPoly t{ParamTerm{e, ground_mul(top.coeff, lead_inv, p)}};
    quotient = add(quotient, t, p);
    rest = sub(rest, mul(t, b, p), p);
  }
  return quotient;
}

const mpq_class& leading_coeff_grevlex(const ParamPoly& a) {
  const ParamTerm* best = &a.front();
  for (const auto& t : a) {
    if (grevlex_greater(t.exponents, best->exponents)) best = &t;
  }
  return best->coeff;
}

ParamPoly gcd(const ParamPoly& a, const ParamPoly& b, std::uint64_t p) {
  if (a.empty() && b.empty()) return {};
  ParamPoly g;
  if (a.empty()) {
    g = b;
  } else if (b.empty()) {
    g = a;
  } else {
    g = gcd_rec(a, b, 0, arity_of(a), p);
  }
  return scale(g, ground_inv(leading_coeff_grevlex(g), p), p);
}

RationalFunction normalize(ParamPoly num, ParamPoly den, std::uint64_t p) {
  if (den.empty()) throw UsageError("zero denominator");
  const std::size_t m = arity_of(den);
  if (num.empty()) return {{}, constant(1, m, p)};
  const auto g = gcd(num, den, p);
  if (!is_constant(g)) {
    num = divide_exact(num, g, p);
    den = divide_exact(den, g, p);
  }
  const mpq_class c = ground_inv(leading_coeff_grevlex(den), p);
  return {scale(num, c, p), scale(den, c, p)};
}

}  // namespace param

namespace {

std::string format_param_poly(const ParamPoly& a, const std::vector<std::string>& names) {
  if (a.empty()) return "0";
  // print in grevlex-descending order, matching polynomial output
  std::vector<const ParamTerm*> order;
  for (const auto& t : a) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const ParamTerm* x, const ParamTerm* y) {
    const auto dx = std::accumulate(x->exponents.begin(), x->exponents.end(), 0ull);
    const auto dy = std::accumulate(y->exponents.begin(), y->exponents.end(), 0ull);
    if (dx != dy) return dx > dy;
    for (std::size_t i = x->exponents.size(); i-- > 0;) {
      if (x->exponents[i] != y->exponents[i]) return x->exponents[i] < y->exponents[i];
    }
    return false;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto* t : order) {
    mpq_class c = t->coeff;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool has_monomial = false;
    std::ostringstream mono;
    for (std::size_t i = 0; i < t->exponents.size(); ++i) {
      if (t->exponents[i] == 0) continue;
      if (has_monomial) mono << "*";
      mono << names[i];
      if (t->exponents[i] > 1) mono << "^" << t->exponents[i];
      has_monomial = true;
    }
    if (!has_monomial) {
      out << c.get_str();
    } else if (c == 1) {
      out << mono.str();
    } else {
      out << c.get_str() << "*" << mono.str();
    }
  }
  return out.str();
}

}  // namespace

CoefficientField CoefficientField::rationals() {
  static const auto data = std::make_shared<const Data>(Data{FieldKind::Rationals, 0, {}});
  return CoefficientField(data);
}

CoefficientField CoefficientField::prime_field(std::uint64_t p) {
  if (!is_prime(p)) throw UsageError("characteristic " + std::to_string(p) + " is not prime");
  return CoefficientField(std::make_shared<const Data>(Data{FieldKind::PrimeField, p, {}}));
}

CoefficientField CoefficientField::rational_functions(const CoefficientField& base,
                                                      std::vector<std::string> parameters) {
  if (base.is_function_field()) {
    throw UsageError("tower depth exceeded: function field over " + base.to_string());
  }
  if (parameters.empty()) return base;
  std::set<std::string> seen;
  for (const auto& name : parameters) {
    if (!seen.insert(name).second) throw UsageError("repeated function-field parameter '" + name + "'");
  }
  return CoefficientField(std::make_shared<const Data>(
      Data{FieldKind::RationalFunctions, base.characteristic(), std::move(parameters)}));
}

CoefficientField CoefficientField::ground() const {
  if (data_->p == 0) return rationals();
  return prime_field(data_->p);
}

bool CoefficientField::operator==(const CoefficientField& other) const {
  if (data_ == other.data_) return true;
  return data_->kind == other.data_->kind && data_->p == other.data_->p &&
         data_->parameters == other.data_->parameters;
}

std::string CoefficientField::to_string() const {
  const std::string base = data_->p == 0 ? "Q" : "Fp(" + std::to_string(data_->p) + ")";
  if (!is_function_field()) return base;
  std::string out = "FunField(" + base + "; ";
  for (std::size_t i = 0; i < data_->parameters.size(); ++i) {
    if (i) out += ",";
    out += data_->parameters[i];
  }
  return out + ")";
}

Scalar CoefficientField::zero() const { return from_integer(0); }
Scalar CoefficientField::one() const { return from_integer(1); }
Scalar CoefficientField::from_integer(long value) const { return from_rational(mpq_class(value)); }

Scalar CoefficientField::from_rational(const mpq_class& value) const {
  const mpq_class v = param::reduce(value, data_->p);
  if (!is_function_field()) return Scalar(v);
  const auto m = parameter_count();
  return Scalar(RationalFunction{param::constant(v, m, data_->p), param::constant(1, m, data_->p)});
}

Scalar CoefficientField::parameter(std::size_t index) const {
  if (index >= parameter_count()) throw UsageError("parameter index out of range");
  Exponents e(parameter_count(), 0);
  e[index] = 1;
  return Scalar(RationalFunction{{ParamTerm{e, 1}}, param::constant(1, parameter_count(), data_->p)});
}

Scalar CoefficientField::fraction(ParamPoly num, ParamPoly den) const {
  if (!is_function_field()) throw UsageError("fraction() requires a function field");
  return Scalar(param::normalize(std::move(num), std::move(den), data_->p));
}

Scalar CoefficientField::embed_ground(const Scalar& ground_value) const {
  if (!ground_value.is_ground()) {
    if (is_function_field()) return ground_value;
    throw UsageError("cannot embed a rational function into " + to_string());
  }
  return from_rational(ground_value.ground());
}

Scalar CoefficientField::add(const Scalar& a, const Scalar& b) const {
  const auto p = data_->p;
  if (!is_function_field()) {
    mpq_class r = a.ground() + b.ground();
    return Scalar(p == 0 ? r : param::reduce(r, p));
  }
  const auto& x = a.fraction();
  const auto& y = b.fraction();
  if (x.den == y.den) return Scalar(param::normalize(param::add(x.num, y.num, p), x.den, p));
  auto num = param::add(param::mul(x.num, y.den, p), param::mul(y.num, x.den, p), p);
  return Scalar(param::normalize(std::move(num), param::mul(x.den, y.den, p), p));
}

Scalar CoefficientField::neg(const Scalar& a) const {
  const auto p = data_->p;
  if (!is_function_field()) return Scalar(param::reduce(-a.ground(), p));
  return Scalar(RationalFunction{param::neg(a.fraction().num, p), a.fraction().den});
}

Scalar CoefficientField::sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

Scalar CoefficientField::mul(const Scalar& a, const Scalar& b) const {
  const auto p = data_->p;
  if (!is_function_field()) {
    mpq_class r = a.ground() * b.ground();
    return Scalar(p == 0 ? r : param::reduce(r, p));
  }
  const auto& x = a.fraction();
  const auto& y = b.fraction();
  return Scalar(param::normalize(param::mul(x.num, y.num, p), param::mul(x.den, y.den, p), p));
}

Scalar CoefficientField::inv(const Scalar& a) const {
  if (is_zero(a)) throw UsageError("division by zero");
  const auto p = data_->p;
  if (!is_function_field()) return Scalar(param::reduce(1 / a.ground(), p));
  return Scalar(param::normalize(a.fraction().den, a.fraction().num, p));
}

bool CoefficientField::is_zero(const Scalar& a) const {
  if (a.is_ground()) return a.ground() == 0;
  return a.fraction().num.empty();
}

bool CoefficientField::is_one(const Scalar& a) const { return a == one(); }

bool CoefficientField::is_ground_constant(const Scalar& a) const {
  if (a.is_ground()) return true;
  const auto& f = a.fraction();
  const auto constant = [](const ParamPoly& q) {
    return q.empty() || (q.size() == 1 && std::all_of(q[0].exponents.begin(), q[0].exponents.end(),
                                                      [](auto e) { return e == 0; }));
  };
  return constant(f.num) && constant(f.den);
}

std::size_t CoefficientField::summand_count(const Scalar& a) const {
  if (a.is_ground()) return 1;
  const auto& f = a.fraction();
  const bool unit_den = f.den.size() == 1 && f.den[0].coeff == 1 &&
                        std::all_of(f.den[0].exponents.begin(), f.den[0].exponents.end(),
                                    [](auto e) { return e == 0; });
  if (!unit_den) return 2;
  return std::max<std::size_t>(1, f.num.size());
}

bool CoefficientField::is_negative_literal(const Scalar& a) const {
  if (a.is_ground()) return data_->p == 0 && a.ground() < 0;
  const auto& f = a.fraction();
  return summand_count(a) == 1 && f.num.size() == 1 && f.num[0].coeff < 0;
}

std::string CoefficientField::format(const Scalar& a) const {
  if (a.is_ground()) return a.ground().get_str();
  const auto& f = a.fraction();
  const auto num = format_param_poly(f.num, data_->parameters);
  const bool unit_den = f.den.size() == 1 && f.den[0].coeff == 1 &&
                        std::all_of(f.den[0].exponents.begin(), f.den[0].exponents.end(),
                                    [](auto e) { return e == 0; });
  if (unit_den) return num;
  const auto den = format_param_poly(f.den, data_->parameters);
  const auto wrap = [](const std::string& s, bool multi) { return multi ? "(" + s + ")" : s; };
  return wrap(num, f.num.size() > 1 || f.num[0].coeff < 0) + "/" + wrap(den, f.den.size() > 1 || den.find('*') != std::string::npos);
}

}  // namespace krull
