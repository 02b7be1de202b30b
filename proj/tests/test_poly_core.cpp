#include <tuple>

#include "doctest.h"
#include "test_support.hpp"

using namespace krull;
using krull::testing::P;
using krull::testing::ring_q;

namespace {

std::vector<Monomial> all_monomials(std::size_t nvars, unsigned max_degree) {
  std::vector<Monomial> out;
  Exponents e(nvars, 0);
  // odometer over [0, max_degree]^nvars, filtered by total degree
  while (true) {
    unsigned total = 0;
    for (auto x : e) total += x;
    if (total <= max_degree) out.emplace_back(e);
    std::size_t i = 0;
    while (i < nvars && e[i] == max_degree) e[i++] = 0;
    if (i == nvars) break;
    ++e[i];
  }
  return out;
}

// Grevlex as a lexicographic comparison of (degree, -e_n, ..., -e_1).
int grevlex_oracle(const Monomial& u, const Monomial& v) {
  std::vector<long> ku{static_cast<long>(u.degree())}, kv{static_cast<long>(v.degree())};
  for (std::size_t i = u.arity(); i-- > 0;) {
    ku.push_back(-static_cast<long>(u[i]));
    kv.push_back(-static_cast<long>(v[i]));
  }
  if (ku < kv) return -1;
  if (kv < ku) return 1;
  return 0;
}

int sign(std::strong_ordering o) { return o < 0 ? -1 : (o > 0 ? 1 : 0); }

}  // namespace

TEST_CASE("add cancels and respects characteristic") {
  auto R = ring_q({"x", "y"});
  CHECK(P(R, "x + y") + P(R, "x - y") == P(R, "2*x"));
  CHECK(P(R, "x^2 + 3") + Polynomial(R) == P(R, "x^2 + 3"));
  PolynomialRing F2(CoefficientField::prime_field(2), {"x"});
  CHECK((P(F2, "x") + P(F2, "x")).is_zero());
}

TEST_CASE("mul") {
  auto R = ring_q({"x", "y"});
  CHECK(P(R, "x + y") * P(R, "x - y") == P(R, "x^2 - y^2"));
  CHECK(P(R, "3/2*x*y + 1") * P(R, "1") == P(R, "3/2*x*y + 1"));
  auto Qt = CoefficientField::rational_functions(CoefficientField::rationals(), {"t"});
  PolynomialRing S(Qt, {"x"});
  CHECK(P(S, "t*x") * P(S, "(1/t)*x") == P(S, "x^2"));
}

TEST_CASE("ring mismatch is an error") {
  auto R = ring_q({"x", "y"});
  auto S = ring_q({"x", "z"});
  CHECK_THROWS_AS(P(R, "x") + P(S, "x"), UsageError);
  CHECK_THROWS_AS(P(R, "x") * P(S, "x"), UsageError);
}

TEST_CASE("leading_term") {
  auto R = ring_q({"x", "y", "z"});
  auto [m1, c1] = P(R, "x^2 + x*y + y^2").leading_term(MonomialOrder::lex());
  CHECK(m1 == Monomial(Exponents{2, 0, 0}));
  CHECK(R.field().is_one(c1));
  auto [m2, c2] = P(R, "x + y + z").leading_term(MonomialOrder::grevlex());
  CHECK(m2 == Monomial(Exponents{1, 0, 0}));
  // x*y^2 + x^2 under lex: compare exponent vectors (1,2) vs (2,0) lexicographically
  auto [m3, c3] = P(R, "x*y^2 + x^2").leading_term(MonomialOrder::lex());
  CHECK(m3 == Monomial(Exponents{2, 0, 0}));
  CHECK(Exponents{2, 0, 0} > Exponents{1, 2, 0});
  CHECK_THROWS_AS(Polynomial(R).leading_term(MonomialOrder::lex()), UsageError);
}

TEST_CASE("compare examples") {
  const auto lex = MonomialOrder::lex();
  const auto grevlex = MonomialOrder::grevlex();
  CHECK(compare(Monomial(Exponents{1, 0}), Monomial(Exponents{0, 5}), lex) > 0);
  CHECK(compare(Monomial(Exponents{1, 1}), Monomial(Exponents{2, 0}), grevlex) < 0);
  CHECK(compare(Monomial(Exponents{3, 4}), Monomial(Exponents{3, 4}), grevlex) == 0);
  CHECK_THROWS_AS(compare(Monomial(Exponents{1}), Monomial(Exponents{1, 0}), lex), UsageError);
}

TEST_CASE("grevlex agrees with brute-force definition on degree-2 monomials in 2 variables") {
  const auto grevlex = MonomialOrder::grevlex();
  std::vector<Monomial> deg2;
  for (const auto& m : all_monomials(2, 2)) {
    if (m.degree() == 2) deg2.push_back(m);
  }
  REQUIRE(deg2.size() == 3);
  for (const auto& u : deg2) {
    for (const auto& v : deg2) CHECK(sign(grevlex.compare(u, v)) == grevlex_oracle(u, v));
  }
  // and exhaustively on everything up to degree 4 in 3 variables
  for (const auto& u : all_monomials(3, 4)) {
    for (const auto& v : all_monomials(3, 4)) CHECK(sign(grevlex.compare(u, v)) == grevlex_oracle(u, v));
  }
}

TEST_CASE("monomial order axioms by enumeration") {
  const std::vector<MonomialOrder> orders{MonomialOrder::lex(), MonomialOrder::grevlex(),
                                          MonomialOrder::elimination({0}), MonomialOrder::elimination({1, 2})};
  for (std::size_t nvars = 1; nvars <= 3; ++nvars) {
    const auto monos = all_monomials(nvars, 4);
    const Monomial one(nvars);
    for (const auto& order : orders) {
      if (order.kind() == MonomialOrder::Kind::BlockElimination && order.block().back() >= nvars) continue;
      CAPTURE(order.key());
      for (const auto& u : monos) {
        CHECK(order.compare(u, one) >= 0);
        for (const auto& v : monos) {
          const auto uv = order.compare(u, v);
          CHECK(sign(uv) == -sign(order.compare(v, u)));
          CHECK((uv == 0) == (u == v));
          if (uv < 0) {
            for (const auto& w : monos) {
              if ((u * w).degree() <= 4) CHECK(order.compare(u * w, v * w) < 0);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("elimination order ranks block monomials above block-free ones") {
  const auto order = MonomialOrder::elimination({1});
  for (const auto& u : all_monomials(3, 4)) {
    for (const auto& v : all_monomials(3, 4)) {
      if (u[1] > 0 && v[1] == 0) CHECK(order.compare(u, v) > 0);
    }
  }
}

TEST_CASE("rational_function_normalize") {
  auto R = ring_q({"t"});
  auto [n1, d1] = rational_function_normalize(P(R, "t^2 - 1"), P(R, "t - 1"));
  CHECK(n1 == P(R, "t + 1"));
  CHECK(d1 == P(R, "1"));
  auto [n2, d2] = rational_function_normalize(Polynomial(R), P(R, "t^3 + 2"));
  CHECK(n2.is_zero());
  CHECK(d2 == P(R, "1"));
  auto [n3, d3] = rational_function_normalize(P(R, "2*t"), P(R, "4"));
  CHECK(n3 == P(R, "1/2*t"));
  CHECK(d3 == P(R, "1"));
  auto again = rational_function_normalize(n3, d3);
  CHECK(again.first == n3);
  CHECK(again.second == d3);
  CHECK_THROWS_AS(rational_function_normalize(P(R, "t"), Polynomial(R)), UsageError);
}

TEST_CASE("rational_function_normalize is idempotent and value preserving") {
  std::mt19937_64 rng(11);
  for (auto field : {CoefficientField::rationals(), CoefficientField::prime_field(5)}) {
    PolynomialRing R(field, {"s", "t"});
    for (int trial = 0; trial < 60; ++trial) {
      auto common = testing::random_nonzero(R, rng, 2, 2);
      auto num = testing::random_polynomial(R, rng, 3, 2) * common;
      auto den = testing::random_nonzero(R, rng, 3, 2) * common;
      auto [n, d] = rational_function_normalize(num, den);
      CHECK(n * den == num * d);
      auto [n2, d2] = rational_function_normalize(n, d);
      CHECK(n2 == n);
      CHECK(d2 == d);
      if (!n.is_zero()) {
        // common factor removed: degrees cannot exceed the inputs
        CHECK(d.total_degree() <= den.total_degree());
      }
    }
  }
}

TEST_CASE("function field arithmetic reduces fractions") {
  auto K = CoefficientField::rational_functions(CoefficientField::rationals(), {"t", "u"});
  PolynomialRing R(K, {"x"});
  auto a = P(R, "(t^2 - u^2)/(t - u)");
  CHECK(a == P(R, "t + u"));
  auto b = P(R, "x/(t + 1) + x/(t - 1)");
  CHECK(b == P(R, "(2*t)/(t^2 - 1)*x"));
  CHECK(K.is_zero(K.sub(K.parameter(0), K.parameter(0))));
  PolynomialRing F(CoefficientField::rational_functions(CoefficientField::prime_field(3), {"t"}), {"x"});
  CHECK(P(F, "(t^3 - 1)/(t - 1)") == P(F, "t^2 + t + 1"));
  CHECK(P(F, "3*t*x").is_zero());
}

TEST_CASE("ring axioms on randomized triples") {
  std::mt19937_64 rng(7);
  const std::vector<CoefficientField> fields{
      CoefficientField::rationals(), CoefficientField::prime_field(5),
      CoefficientField::rational_functions(CoefficientField::rationals(), {"t"})};
  for (const auto& field : fields) {
    PolynomialRing R(field, {"x", "y", "z"});
    for (int trial = 0; trial < 25; ++trial) {
      auto a = testing::random_polynomial(R, rng, 4, 3);
      auto b = testing::random_polynomial(R, rng, 4, 3);
      auto c = testing::random_polynomial(R, rng, 4, 3);
      if (field.is_function_field()) {
        a = a * P(R, "t + 1/t");
        c = c.scaled(field.inv(field.add(field.parameter(0), field.one())));
      }
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a).is_zero());
    }
  }
}

TEST_CASE("printing round-trips through the parser") {
  std::mt19937_64 rng(3);
  const std::vector<CoefficientField> fields{
      CoefficientField::rationals(), CoefficientField::prime_field(7),
      CoefficientField::rational_functions(CoefficientField::rationals(), {"t", "u"})};
  for (const auto& field : fields) {
    PolynomialRing R(field, {"x", "y"});
    for (int trial = 0; trial < 40; ++trial) {
      auto p = testing::random_polynomial(R, rng, 5, 4);
      if (field.is_function_field()) p = p * P(R, "(t - 2*u)/(u^2 + 1)*x - 3/4");
      CAPTURE(p.to_string());
      CHECK(parse_polynomial(p.to_string(), R) == p);
    }
  }
  auto R = ring_q({"x", "y", "z"});
  CHECK(P(R, "3/2*x^2*y - z + 1").to_string() == "3/2*x^2*y - z + 1");
  CHECK(P(R, "2x y").to_string() == "2*x*y");
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(CoefficientField::prime_field(6), UsageError);
  auto Qt = CoefficientField::rational_functions(CoefficientField::rationals(), {"t"});
  CHECK_THROWS_AS(CoefficientField::rational_functions(Qt, {"s"}), UsageError);
  CHECK_THROWS_AS(CoefficientField::rational_functions(CoefficientField::rationals(), {"t", "t"}), UsageError);
  CHECK_THROWS_AS(PolynomialRing(Qt, {"x", "t"}), UsageError);
  CHECK_THROWS_AS(PolynomialRing(CoefficientField::rationals(), {"x", "x"}), UsageError);
  auto R = ring_q({"x"});
  CHECK_THROWS_AS(P(R, "x/0"), UsageError);
  CHECK_THROWS_AS(P(R, "1/x"), ParseError);
  CHECK_THROWS_AS(P(R, "x + w"), ParseError);
  PolynomialRing F5(CoefficientField::prime_field(5), {"x"});
  CHECK_THROWS_AS(P(F5, "x/5"), UsageError);
  CHECK(P(F5, "x/2") == P(F5, "3*x"));
}

TEST_CASE("parse errors carry positions") {
  auto R = ring_q({"x", "y"});
  try {
    parse_polynomial("x +\n  y $", R);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 5);
  }
}

TEST_CASE("exact division and substitution") {
  auto R = ring_q({"x", "y"});
  CHECK(divide_exact(P(R, "x^2 - y^2"), P(R, "x + y")) == P(R, "x - y"));
  CHECK_THROWS_AS(divide_exact(P(R, "x^2 + 1"), P(R, "x + y")), Error);
  CHECK(substitute(P(R, "x^2 + x*y"), 0, P(R, "y + 1")) == P(R, "2*y^2 + 3*y + 1"));
}
