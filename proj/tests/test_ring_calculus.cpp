#include <algorithm>
#include <random>

#include "doctest.h"
#include "krull/calculus.hpp"
#include "krull/dsl.hpp"
#include "krull/error.hpp"
#include "test_support.hpp"

using namespace krull;
using krull::testing::P;
using krull::testing::ring_q;

namespace {

const Count inf = Count::countable();
Count fin(std::uint64_t v) { return Count::finite(v); }

FieldExtensionDescriptor ext(Count t) { return {CoefficientField::rationals(), t, {}}; }

// Written from the statement, without sorting: two infinite factors give
// infinity; one infinite factor is the one dropped; otherwise drop the max.
DimensionValue thm24_oracle(const std::vector<Count>& t) {
  std::size_t infinite = 0;
  std::uint64_t sum = 0, largest = 0;
  for (const auto& c : t) {
    if (c.infinite) {
      ++infinite;
    } else {
      sum += c.value;
      largest = std::max(largest, c.value);
    }
  }
  if (infinite >= 2) return DimensionValue::infinite();
  if (infinite == 1) return DimensionValue::exact(sum);
  return DimensionValue::exact(sum - largest);
}

DimensionValue eval(const std::string& text) { return evaluate(parse_ring_expr(text)).value; }

bool cites(const DimensionResult& r, const std::string& rule) {
  return std::any_of(r.trace.begin(), r.trace.end(), [&](const TraceEntry& e) { return e.rule == rule; });
}

const TraceEntry* find_rule(const DimensionResult& r, const std::string& rule, const std::string& node) {
  for (const auto& e : r.trace) {
    if (e.rule == rule && e.node == node) return &e;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("trdeg_of") {
  CHECK(trdeg_of(ext(fin(2))) == fin(2));
  CHECK(trdeg_of(ext(fin(0))) == fin(0));
  const auto e = parse_ring_expr("Ext(Q; 1; a^2 - 2)");
  CHECK(trdeg_of(e.extension()) == fin(1));
  CHECK(trdeg_of(ext(inf)) == inf);
}

TEST_CASE("tensor-of-fields formula on every multiset with permutation symmetry") {
  const std::vector<Count> values{fin(0), fin(1), fin(2), fin(3), inf};
  std::size_t multisets = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    // nondecreasing index sequences enumerate multisets
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      ++multisets;
      std::vector<Count> t;
      for (auto i : idx) t.push_back(values[i]);
      const auto expected = thm24_oracle(t);
      auto perm = idx;
      do {
        std::vector<FieldExtensionDescriptor> factors;
        for (auto i : perm) factors.push_back(ext(values[i]));
        CAPTURE(n);
        CHECK(rule_thm24(factors).value == expected);
      } while (std::next_permutation(perm.begin(), perm.end()));

      std::size_t k = n;
      while (k > 0 && idx[k - 1] == values.size() - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < n; ++j) idx[j] = idx[k - 1];
    }
  }
  CHECK(multisets == 15 + 35 + 70);
}

TEST_CASE("tensor-of-fields spot values and degenerate cases") {
  CHECK(rule_thm24({ext(fin(1)), ext(fin(1))}).value == DimensionValue::exact(1));
  CHECK(rule_thm24({ext(fin(1)), ext(fin(2)), ext(fin(4))}).value == DimensionValue::exact(3));
  CHECK(rule_thm24({ext(fin(2)), ext(inf)}).value == DimensionValue::exact(2));
  CHECK(rule_thm24({ext(inf), ext(inf)}).value == DimensionValue::infinite());
  CHECK(rule_thm24({ext(fin(5))}).value == DimensionValue::exact(0));
  CHECK(rule_thm24({ext(inf)}).value == DimensionValue::exact(0));
  CHECK(rule_thm24({ext(fin(0)), ext(fin(0)), ext(fin(0))}).value == DimensionValue::exact(0));
  CHECK(rule_thm24({ext(fin(0)), ext(fin(3)), ext(fin(2))}).value == DimensionValue::exact(2));
  CHECK_THROWS_AS(rule_thm24({}), UsageError);
  const FieldExtensionDescriptor other{CoefficientField::prime_field(5), fin(1), {}};
  CHECK_THROWS_AS(rule_thm24({ext(fin(1)), other}), UsageError);
  CHECK(rule_thm24({ext(fin(1)), ext(fin(1))}).trace.front().rule == "THM24-FORMULA");
}

TEST_CASE("two-leg bounds") {
  // S^{-1}A = A for A = Q(u)[y]
  CHECK(rule_thm1_lower(1, DimensionValue::exact(1)).value == fin(2));
  CHECK(rule_thm1_lower(0, DimensionValue::exact(3)).value == fin(3));
  CHECK(rule_thm1_lower(2, DimensionValue::exact(0)).value == fin(2));
  CHECK(rule_thm1_lower(2, DimensionValue::exact(0)).effect == Effect::Lower);

  CHECK(rule_thm1_upper(1, DimensionValue::exact(1), true)->value == fin(2));
  CHECK(rule_thm1_upper(0, DimensionValue::exact(4), true)->value == fin(4));
  CHECK_FALSE(rule_thm1_upper(1, DimensionValue::exact(1), false));
  CHECK_FALSE(rule_thm1_upper(1, DimensionValue::interval(1, std::nullopt), true));

  CHECK(rule_thm1_infinite(inf, inf)->effect == Effect::Infinite);
  CHECK_FALSE(rule_thm1_infinite(fin(3), inf));
  CHECK_FALSE(rule_thm1_infinite(inf, fin(3)));

  CHECK(rule_faithflat_lb(inf, 2, fin(3))->value == fin(3));
  CHECK(rule_faithflat_lb(fin(3), 1, fin(1))->effect == Effect::Lower);
  CHECK_FALSE(rule_faithflat_lb(fin(2), 2, fin(2)));
}

TEST_CASE("equality for a base containing a large enough subfield") {
  auto r = rule_cor23(1, DimensionValue::exact(1), true, fin(1));
  CHECK(r.value == DimensionValue::exact(2));
  CHECK(cites(r, "COR23-EQ"));
  CHECK(rule_cor23(2, DimensionValue::exact(0), true, fin(3)).value == DimensionValue::exact(2));
  CHECK(rule_cor23(2, DimensionValue::exact(1), true, inf).value == DimensionValue::exact(3));

  // without the subfield only the bounds hold
  r = rule_cor23(1, DimensionValue::exact(1), true, fin(0));
  CHECK(r.value == DimensionValue::interval(1, 2));
  CHECK_FALSE(cites(r, "COR23-EQ"));
  CHECK(rule_cor23(2, DimensionValue::exact(1), true, fin(1)).value == DimensionValue::interval(2, 3));
  CHECK(rule_cor23(1, DimensionValue::exact(1), false, fin(1)).value == DimensionValue::interval(2, std::nullopt));

  // the interval is narrowed by the generic fiber: Q(X) ⊗ Q[y] has dimension 1
  const auto guarded = evaluate(parse_ring_expr("Tensor(Ext(Q; 1), Poly(Q; y))"));
  CHECK(guarded.value == DimensionValue::exact(1));
  CHECK(dim_generic_fiber(AffineAlgebra::polynomial_ring(ring_q({"y"})), 1) == DimensionValue::exact(1));
  CHECK_FALSE(cites(guarded, "COR23-EQ"));
  CHECK(cites(guarded, "KERNEL-GENERIC-FIBER"));

  const auto over_u = evaluate(parse_ring_expr("Tensor(Ext(Q; 1), Poly(FunField(Q; u); y))"));
  CHECK(over_u.value == DimensionValue::exact(2));
  CHECK(cites(over_u, "COR23-EQ"));
  CHECK(eval("Tensor(Ext(Q; 2), Ext(FunField(Q; u1,u2,u3); 0))") == DimensionValue::exact(2));
}

TEST_CASE("integral extensions") {
  const auto e = parse_ring_expr("Ext(Q; 1; a^2 - 2)");
  CHECK(rule_integral_eq(e.extension())->rule == "INTEGRAL-EQ");
  CHECK_FALSE(rule_integral_eq(ext(fin(1))));

  for (const auto* m : {"Poly(Q; x)", "Quot(Poly(Q; x,y); x*y)", "Ext(Q; 2)", "Poly(Q; x,y,z)"}) {
    CAPTURE(m);
    CHECK(eval(std::string("Tensor(Ext(Q; 1; a^2 - 2), ") + m + ")") == eval(std::string("Tensor(Ext(Q; 1), ") + m + ")"));
  }

  const auto q = parse_ring_expr("Quot(Poly(Q; x); x^2 - 2)");
  CHECK(rule_integral_eq(*q.flat())->value == fin(0));
  CHECK(eval("Quot(Poly(Q; x); x^2 - 2)") == DimensionValue::exact(0));
  CHECK_FALSE(rule_integral_eq(*parse_ring_expr("Quot(Poly(Q; x,y); x^2 - 2)").flat()));
}

TEST_CASE("localization and domain rules") {
  const auto r = evaluate(parse_ring_expr("Loc(Poly(Q; x,y); x*y)"));
  CHECK(r.value == DimensionValue::exact(2));
  CHECK(cites(r, "LEM26"));
  CHECK(cites(r, "KERNEL"));

  const auto t = evaluate(parse_ring_expr("Loc(Quot(Poly(Q; x,y); x*y); x + y)"));
  CHECK(t.value == DimensionValue::exact(1));
  CHECK(cites(t, "THM27"));

  const auto c = evaluate(parse_ring_expr("Quot(Poly(Q; x,y); y^2 - x^3)"));
  CHECK(c.value == DimensionValue::exact(1));
  CHECK(cites(c, "COR28"));
  CHECK(c.trdeg == 1u);

  // zero-divisor: no closed rule, the kernel still answers
  const auto z = evaluate(parse_ring_expr("Loc(Quot(Poly(Q; x,y); x*y); x)"));
  CHECK(z.value == DimensionValue::exact(1));
  CHECK_FALSE(std::any_of(z.trace.begin(), z.trace.end(),
                          [](const TraceEntry& e) { return e.rule == "THM27" && e.effect == Effect::Exact; }));
  CHECK(eval("Loc(Quot(Poly(Q; x); x^2); x)") == DimensionValue::empty_ring());
  CHECK(eval("Loc(Poly(Q; x); 0)") == DimensionValue::empty_ring());

  const auto ring = ring_q({"x", "y"});
  CHECK(rule_lem26(AffineAlgebra::polynomial_ring(ring), P(ring, "x^2 + y^2"))->value == fin(2));
  CHECK_FALSE(rule_lem26(AffineAlgebra::polynomial_ring(ring), Polynomial(ring)));
  CHECK(rule_thm27(ZeroDivisorStatus::NonZeroDivisor, DimensionValue::exact(3))->value == fin(3));
  CHECK_FALSE(rule_thm27(ZeroDivisorStatus::ZeroDivisor, DimensionValue::exact(3)));
}

TEST_CASE("domain certificates found syntactically") {
  const auto ring = ring_q({"x", "y", "z"});
  const auto check = [&](const std::string& gens, bool expected) {
    CAPTURE(gens);
    const IdealPresentation I(ring, parse_polynomial_list(gens, ring));
    const auto cert = detect_prime_certificate(I);
    CHECK(static_cast<bool>(cert) == expected);
    if (cert) CHECK(check_primality(I, *cert).valid);
  };
  check("", true);
  check("y^2 - x^3", true);
  check("x - y^2, z - y", true);
  check("x - y, y - z", true);
  check("x - y, y^2 - z^3", true);
  check("x*y", false);
  check("x*y, x", true);
  check("x^2*z + y - 1, x", true);
  check("x*y + z^2 + 1, y", true);
  check("x*y + z^2, y", false);
  check("x^2 + y^2, z", false);
}

TEST_CASE("subring localization") {
  CHECK(eval("LocSub(Poly(Q; x,y); x)") == DimensionValue::exact(1));
  CHECK(eval("LocSub(Poly(Q; x,y); x, y)") == DimensionValue::exact(0));
  CHECK(eval("LocSub(Quot(Poly(Q; x,y,z); x*y - z); z)") == DimensionValue::exact(1));
  CHECK_THROWS_AS(evaluate(parse_ring_expr("LocSub(Poly(Q; x,y); x, x^2)")), UsageError);
  CHECK_THROWS_AS(evaluate(parse_ring_expr("LocSub(Poly(FunField(Q; u); y); u)")), UsageError);
  CHECK_THROWS_AS(evaluate(parse_ring_expr("LocSub(Quot(Poly(Q; x); x^2 - 2); x)")), UsageError);
  CHECK(algebraically_independent(*parse_ring_expr("Poly(Q; x,y)").flat(), {P(ring_q({"x", "y"}), "x*y")}));
}

TEST_CASE("fraction fields") {
  const auto r = evaluate(parse_ring_expr("Frac(Poly(Q; x,y))"));
  CHECK(r.value == DimensionValue::exact(0));
  CHECK(r.trdeg == 2u);
  CHECK(eval("Tensor(Frac(Poly(Q; x)), Frac(Poly(Q; y,z)))") == DimensionValue::exact(1));
  CHECK(evaluate(parse_ring_expr("Frac(Quot(Poly(Q; x,y); y^2 - x^3))")).trdeg == 1u);
  CHECK_THROWS_AS(evaluate(parse_ring_expr("Frac(Quot(Poly(Q; x,y); x*y))")), UsageError);
  EvaluateOptions asserted;
  asserted.assert_domain = true;
  const auto a = evaluate(parse_ring_expr("Frac(Quot(Poly(Q; x,y); x*y))"), asserted);
  CHECK(a.asserted);
}

TEST_CASE("infinite transcendence degree") {
  auto r = evaluate(parse_ring_expr("Tensor(Ext(Q; inf), Ext(Q; inf))"));
  CHECK(r.value == DimensionValue::infinite());
  CHECK(cites(r, "THM24-FORMULA"));
  CHECK(cites(r, "THM1-INF"));

  r = evaluate(parse_ring_expr("Tensor(Ext(Q; inf), Poly(Ext(Q; inf); y))"));
  CHECK(r.value == DimensionValue::infinite());
  CHECK(cites(r, "THM1-INF"));

  r = evaluate(parse_ring_expr("Tensor(Ext(Q; inf), Ext(Q; inf), Ext(Q; 2))"));
  CHECK(r.value == DimensionValue::infinite());

  // one infinite leg: only the largest factor is dropped
  CHECK(eval("Tensor(Ext(Q; 2), Ext(Q; inf))") == DimensionValue::exact(2));
  r = evaluate(parse_ring_expr("Tensor(Ext(Q; inf), Poly(FunField(Q; u,v); y))"));
  CHECK(r.value == DimensionValue::interval(3, std::nullopt));
  CHECK(cites(r, "FAITHFLAT-LB"));
  CHECK(eval("Poly(Ext(Q; inf); x)") == DimensionValue::interval(1, std::nullopt));
}

TEST_CASE("spec examples through evaluate") {
  CHECK(eval("Tensor(Ext(Q; 1), Ext(Q; 1))") == DimensionValue::exact(1));
  const auto r = evaluate(parse_ring_expr("Tensor(Ext(Q; 1), Quot(Poly(Q; x,y); x*y))"));
  CHECK(r.value == DimensionValue::exact(1));
  const auto* ub = find_rule(r, "THM1-UB", "Tensor(Ext(Q; 1), Quot(Poly(Q; x,y); x*y))");
  REQUIRE(ub);
  CHECK(ub->value == fin(2));
  CHECK(cites(r, "KERNEL-GENERIC-FIBER"));
  const auto l = evaluate(parse_ring_expr("Loc(Poly(Q; x,y); x^2 + y^2)"));
  CHECK(l.value == DimensionValue::exact(2));
  CHECK(cites(l, "LEM26"));
  CHECK(eval("Tensor(Ext(Q; 1), Ext(Q; 2), Ext(Q; 4))") == DimensionValue::exact(3));
}

TEST_CASE("juxtaposition of affine algebras") {
  const auto x = AffineAlgebra::polynomial_ring(ring_q({"x"}));
  const auto y = AffineAlgebra::polynomial_ring(ring_q({"y"}));
  auto xy = tensor_flatten_affine(x, y);
  CHECK(xy.ring().variables() == std::vector<std::string>{"x", "y"});
  CHECK(dim_affine(xy) == DimensionValue::exact(2));

  const auto a = *parse_ring_expr("Quot(Poly(Q; a); a^2 - 2)").flat();
  const auto b = *parse_ring_expr("Quot(Poly(Q; b); b^2 - 2)").flat();
  const auto ab = tensor_flatten_affine(a, b);
  CHECK(ab.presentation().generators().size() == 2);
  CHECK(dim_affine(ab) == DimensionValue::exact(0));

  // clashing names are renamed, not merged
  const auto aa = tensor_flatten_affine(a, a);
  CHECK(aa.ring().variable_count() == 2);
  CHECK(dim_affine(aa) == DimensionValue::exact(0));
  CHECK(dim_affine(tensor_flatten_affine(x, x)) == DimensionValue::exact(2));

  const auto unit = AffineAlgebra::polynomial_ring(PolynomialRing(CoefficientField::rationals(), {}));
  const auto same = tensor_flatten_affine(a, unit);
  CHECK(same.ring() == a.ring());
  CHECK(same.presentation().generators() == a.presentation().generators());

  const auto f5 = AffineAlgebra::polynomial_ring(PolynomialRing(CoefficientField::prime_field(5), {"z"}));
  CHECK_THROWS_AS(tensor_flatten_affine(x, f5), UsageError);
}

TEST_CASE("tensor base field") {
  CHECK(parse_ring_expr("Tensor(Poly(FunField(Q; u); x), Poly(FunField(Q; u); y))").base() ==
        CoefficientField::rational_functions(CoefficientField::rationals(), {"u"}));
  CHECK(parse_ring_expr("Tensor(Poly(FunField(Q; u); x), Poly(Q; y))").base() == CoefficientField::rationals());
  CHECK(eval("Tensor(Poly(FunField(Q; u); x), Poly(FunField(Q; u); y))") == DimensionValue::exact(2));
  CHECK(eval("Tensor(Q, Poly(Q; x,y))") == DimensionValue::exact(2));
  CHECK(eval("Tensor(Poly(Q; x))") == DimensionValue::exact(1));
  CHECK_THROWS_AS(parse_ring_expr("Tensor(Poly(Q; x), Poly(Q; y); FunField(Q; u))"), UsageError);
}

TEST_CASE("bound consistency on random instances") {
  std::mt19937_64 rng(20240611);
  std::size_t with_kernel = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> nvars(1, 3), nlegs(0, 2), pick(0, 3);
    std::vector<std::string> names{"x", "y", "z"};
    names.resize(static_cast<std::size_t>(nvars(rng)));
    const auto ring = ring_q(names);
    std::string vars;
    for (std::size_t i = 0; i < names.size(); ++i) vars += (i ? "," : "") + names[i];
    std::string a = "Poly(Q; " + vars + ")";
    const auto g = krull::testing::random_nonzero(ring, rng, 3, 3);
    if (pick(rng) != 0) a = "Quot(" + a + "; " + g.to_string() + ")";
    std::string text;
    switch (pick(rng)) {
      case 0:
        text = "Tensor(Ext(Q; " + std::to_string(nlegs(rng)) + "), " + a + ")";
        break;
      case 1:
        text = "Loc(" + a + "; " + krull::testing::random_nonzero(ring, rng, 3, 2).to_string() + ")";
        break;
      case 2:
        text = "Poly(" + a + "; w)";
        break;
      default:
        text = "Tensor(" + a + ", Ext(Q; " + std::to_string(nlegs(rng)) + "; s^2 - 3))";
        break;
    }
    CAPTURE(text);
    const auto expr = parse_ring_expr(text);
    DimensionResult r;
    REQUIRE_NOTHROW(r = evaluate(expr));
    for (const auto& k : r.kernel_checks) {
      CHECK(k.consistent);
      ++with_kernel;
    }
    REQUIRE(!r.kernel_checks.empty());
    CHECK(r.kernel_checks.back().value == r.value);
  }
  CHECK(with_kernel > 60);
}

TEST_CASE("formula and kernel both recorded on a tensor of number fields") {
  const auto r = evaluate(parse_ring_expr("Tensor(Ext(Q; 0; a^2 - 2), Ext(Q; 0; b^2 - 3))"));
  CHECK(r.value == DimensionValue::exact(0));
  CHECK(cites(r, "THM24-FORMULA"));
  CHECK(cites(r, "KERNEL"));
}

TEST_CASE("evaluate is deterministic") {
  for (const auto* text : {"Tensor(Ext(Q; 1), Quot(Poly(Q; x,y); x*y))", "Loc(Quot(Poly(Q; x,y); x*y); x + y)",
                           "Tensor(Ext(Q; inf), Ext(Q; inf))", "Frac(Quot(Poly(Q; x,y); y^2 - x^3))"}) {
    const auto a = evaluate(parse_ring_expr(text));
    const auto b = evaluate(parse_ring_expr(text));
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      CHECK(a.trace[i].rule == b.trace[i].rule);
      CHECK(a.trace[i].node == b.trace[i].node);
      CHECK(a.trace[i].value == b.trace[i].value);
      CHECK(a.trace[i].premises == b.trace[i].premises);
    }
    CHECK(a.value == b.value);
  }
}

TEST_CASE("variable cap and budget") {
  EvaluateOptions tight;
  tight.engine.max_variables = 2;
  CHECK_THROWS_AS(evaluate(parse_ring_expr("Poly(Q; x,y,z)"), tight), UsageError);
  // a closed rule stands when the kernel is out of reach
  const auto r = evaluate(parse_ring_expr("Tensor(Ext(Q; 3), Ext(Q; 3))"), tight);
  CHECK(r.value == DimensionValue::exact(3));
}
