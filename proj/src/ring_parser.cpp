#include <algorithm>
#include <cctype>
#include <set>

#include "krull/dsl.hpp"
#include "scanner.hpp"

namespace krull {
namespace {

using detail::Scanner;

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : scan_(text) {}

  RingExpr whole_expr() {
    auto e = expr();
    if (!scan_.at_end()) scan_.fail("unexpected trailing input");
    return e;
  }

  CoefficientField whole_field() {
    scan_.skip_space();
    const auto start = scan_.position();
    const auto name = scan_.identifier();
    auto f = field_after(name, start);
    if (!scan_.at_end()) scan_.fail("unexpected trailing input");
    return f;
  }

 private:
  RingExpr expr() {
    scan_.skip_space();
    const auto start = scan_.position();
    if (!scan_.at_identifier()) scan_.fail("expected a ring expression");
    const auto name = scan_.identifier();
    if (name == "Q" || name == "Fp" || name == "FunField") return RingExpr::base_field(field_after(name, start));
    if (name == "Ext") return ext(start);
    if (name == "Poly") {
      scan_.expect('(');
      auto inner = expr();
      scan_.expect(';');
      auto vars = varlist();
      scan_.expect(')');
      return build(start, [&] { return RingExpr::poly(inner, vars); });
    }
    if (name == "Quot" || name == "LocSub" || name == "Loc") {
      scan_.expect('(');
      auto inner = expr();
      scan_.expect(';');
      const auto& ring = ring_of(inner, name, start);
      auto polys = polylist(ring);
      scan_.expect(')');
      if (name == "Quot") return build(start, [&] { return RingExpr::quotient(inner, polys); });
      if (name == "LocSub") return build(start, [&] { return RingExpr::loc_sub(inner, polys); });
      if (polys.size() != 1) scan_.fail_at("Loc takes exactly one element", start);
      return build(start, [&] { return RingExpr::loc(inner, polys.front()); });
    }
    if (name == "Tensor") {
      scan_.expect('(');
      std::vector<RingExpr> legs{expr()};
      while (scan_.accept(',')) legs.push_back(expr());
      std::optional<CoefficientField> over;
      if (scan_.accept(';')) over = field();
      scan_.expect(')');
      return build(start, [&] { return RingExpr::tensor(legs, over); });
    }
    if (name == "Frac") {
      scan_.expect('(');
      auto inner = expr();
      scan_.expect(')');
      return build(start, [&] { return RingExpr::frac(inner); });
    }
    scan_.fail_at("unknown constructor '" + name + "'", start);
  }

  CoefficientField field() {
    scan_.skip_space();
    const auto start = scan_.position();
    if (!scan_.at_identifier()) scan_.fail("expected a field");
    return field_after(scan_.identifier(), start);
  }

  CoefficientField field_after(const std::string& name, std::size_t start) {
    if (name == "Q") return CoefficientField::rationals();
    if (name == "Fp") {
      scan_.expect('(');
      const auto digits_at = scan_.position();
      const auto digits = scan_.digits();
      scan_.expect(')');
      if (digits.size() > 18) scan_.fail_at("characteristic too large", digits_at);
      return build(digits_at, [&] { return CoefficientField::prime_field(std::stoull(digits)); });
    }
    if (name == "FunField") {
      scan_.expect('(');
      auto base = field();
      scan_.expect(';');
      auto vars = varlist();
      scan_.expect(')');
      return build(start, [&] { return CoefficientField::rational_functions(base, vars); });
    }
    scan_.fail_at("unknown field '" + name + "'", start);
  }

  RingExpr ext(std::size_t start) {
    scan_.expect('(');
    FieldExtensionDescriptor desc{field(), Count::finite(0), {}};
    scan_.expect(';');
    scan_.skip_space();
    if (scan_.at_identifier()) {
      const auto at = scan_.position();
      if (scan_.identifier() != "inf") scan_.fail_at("expected an integer or 'inf'", at);
      desc.trdeg = Count::countable();
    } else {
      const auto at = scan_.position();
      const auto digits = scan_.digits();
      if (digits.size() > 9) scan_.fail_at("transcendence degree too large", at);
      desc.trdeg = Count::finite(std::stoull(digits));
    }
    if (scan_.accept(';')) {
      const auto symbols = new_symbols(desc.base);
      const PolynomialRing ring = build(start, [&] { return PolynomialRing(desc.base, symbols); });
      auto polys = polylist(ring);
      for (std::size_t i = 0; i < polys.size(); ++i) desc.algebraic_part.push_back({symbols[i], polys[i]});
    }
    scan_.expect(')');
    return build(start, [&] { return RingExpr::field_ext(desc); });
  }

  // Each minimal polynomial introduces exactly one symbol beyond the base
  // parameters and the earlier symbols. Leaves the scanner where it was.
  std::vector<std::string> new_symbols(const CoefficientField& base) {
    const auto text = scan_.text();
    const auto begin = scan_.position();
    std::set<std::string> known(base.parameters().begin(), base.parameters().end());
    std::vector<std::string> symbols;
    std::vector<std::string> fresh_here;
    const auto skip_space = [&](std::size_t pos) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      return pos;
    };
    std::size_t poly_start = skip_space(begin);
    int depth = 0;
    const auto close_poly = [&](std::size_t pos) {
      if (fresh_here.size() != 1) {
        scan_.fail_at(fresh_here.empty() ? "minimal polynomial introduces no new symbol"
                                         : "minimal polynomial introduces more than one new symbol",
                      poly_start);
      }
      symbols.push_back(fresh_here.front());
      known.insert(fresh_here.front());
      fresh_here.clear();
      poly_start = skip_space(pos + 1);
    };
    std::size_t pos = begin;
    for (; pos < text.size(); ++pos) {
      const char c = text[pos];
      if (c == '(') {
        ++depth;
      } else if (c == ')') {
        if (depth == 0) break;
        --depth;
      } else if (c == ',' && depth == 0) {
        close_poly(pos);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        auto end = pos;
        while (end < text.size() && (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_')) ++end;
        std::string id(text.substr(pos, end - pos));
        if (!known.count(id) && std::find(fresh_here.begin(), fresh_here.end(), id) == fresh_here.end()) {
          fresh_here.push_back(id);
        }
        pos = end - 1;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[pos + 1]))) ++pos;
      }
    }
    close_poly(pos);
    scan_.reset(begin);
    return symbols;
  }

  std::vector<std::string> varlist() {
    std::vector<std::string> vars{scan_.identifier()};
    while (scan_.accept(',')) vars.push_back(scan_.identifier());
    return vars;
  }

  std::vector<Polynomial> polylist(const PolynomialRing& ring) {
    std::vector<Polynomial> out{detail::parse_polynomial_at(scan_, ring)};
    while (scan_.accept(',')) out.push_back(detail::parse_polynomial_at(scan_, ring));
    return out;
  }

  const PolynomialRing& ring_of(const RingExpr& e, const std::string& what, std::size_t start) {
    if (!e.flat()) scan_.fail_at(what + " needs an affine presentation, but " + e.to_string() + " has none", start);
    return e.flat()->ring();
  }

  // Semantic errors from the constructors, reported at the construct.
  template <class F>
  auto build(std::size_t start, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const UsageError& e) {
      scan_.fail_at(e.what(), start);
    }
  }

  Scanner scan_;
};

}  // namespace

CoefficientField parse_field(std::string_view text) { return ExprParser(text).whole_field(); }

RingExpr parse_ring_expr(std::string_view text) { return ExprParser(text).whole_expr(); }

}  // namespace krull
