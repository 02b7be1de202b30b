#include <algorithm>

#include "krull/parse.hpp"
#include "scanner.hpp"

namespace krull {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : UsageError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                 message),
      line_(line),
      column_(column) {}

namespace {

class PolyParser {
 public:
  PolyParser(detail::Scanner& scan, const PolynomialRing& ring) : scan_(scan), ring_(ring) {}

  Polynomial sum() {
    Polynomial acc(ring_);
    bool negate = false;
    if (scan_.accept('-')) {
      negate = true;
    } else {
      scan_.accept('+');
    }
    Polynomial first = product();
    acc = negate ? -first : first;
    while (true) {
      if (scan_.accept('+')) {
        acc = acc + product();
      } else if (scan_.accept('-')) {
        acc = acc - product();
      } else {
        return acc;
      }
    }
  }

 private:
  Polynomial product() {
    Polynomial acc = factor();
    while (true) {
      if (scan_.accept('*')) {
        acc = acc * factor();
      } else if (scan_.peek() == '/') {
        const auto where = scan_.position();
        scan_.accept('/');
        Polynomial divisor = factor();
        if (!divisor.is_constant() || divisor.is_zero()) {
          scan_.fail_at("division is only allowed by a nonzero scalar", where);
        }
        acc = acc.scaled(ring_.field().inv(divisor.terms().front().coeff));
      } else if (scan_.at_digit() || scan_.at_identifier() || scan_.peek() == '(') {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  Polynomial factor() {
    if (scan_.accept('-')) return -factor();
    Polynomial base = atom();
    if (scan_.accept('^')) {
      const auto text = scan_.digits();
      if (text.size() > 6) scan_.fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(text)));
    }
    return base;
  }

  Polynomial atom() {
    if (scan_.accept('(')) {
      Polynomial inner = sum();
      scan_.expect(')');
      return inner;
    }
    if (scan_.at_digit()) {
      const auto text = scan_.digits();
      return Polynomial::constant(ring_, ring_.field().from_rational(mpq_class(mpz_class(text))));
    }
    if (scan_.at_identifier()) {
      const auto where = scan_.position();
      const auto name = scan_.identifier();
      if (auto idx = ring_.index_of(name)) return Polynomial::variable(ring_, *idx);
      const auto& params = ring_.field().parameters();
      auto it = std::find(params.begin(), params.end(), name);
      if (it != params.end()) {
        return Polynomial::constant(ring_, ring_.field().parameter(static_cast<std::size_t>(it - params.begin())));
      }
      scan_.fail_at("unknown identifier '" + name + "' in " + ring_.to_string(), where);
    }
    if (scan_.at_end()) scan_.fail("unexpected end of polynomial");
    scan_.fail(std::string("unexpected character '") + scan_.peek() + "'");
  }

  detail::Scanner& scan_;
  const PolynomialRing& ring_;
};

}  // namespace

namespace detail {

Polynomial parse_polynomial_at(Scanner& scan, const PolynomialRing& ring) { return PolyParser(scan, ring).sum(); }

}  // namespace detail

Polynomial parse_polynomial(std::string_view text, const PolynomialRing& ring) {
  detail::Scanner scan(text);
  auto p = detail::parse_polynomial_at(scan, ring);
  if (!scan.at_end()) scan.fail(std::string("unexpected '") + scan.peek() + "' after polynomial");
  return p;
}

std::vector<Polynomial> parse_polynomial_list(std::string_view text, const PolynomialRing& ring) {
  detail::Scanner scan(text);
  std::vector<Polynomial> out;
  if (scan.at_end()) return out;
  out.push_back(detail::parse_polynomial_at(scan, ring));
  while (scan.accept(',')) out.push_back(detail::parse_polynomial_at(scan, ring));
  if (!scan.at_end()) scan.fail(std::string("unexpected '") + scan.peek() + "' in polynomial list");
  return out;
}

}  // namespace krull
