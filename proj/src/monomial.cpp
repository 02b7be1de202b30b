#include "krull/monomial.hpp"

#include <algorithm>
#include <numeric>

#include "krull/error.hpp"

namespace krull {

std::uint64_t Monomial::degree() const {
  return std::accumulate(exponents_.begin(), exponents_.end(), std::uint64_t{0});
}

bool Monomial::is_one() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] > other.exponents_[i]) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] != 0 && other.exponents_[i] != 0) return false;
  }
  return true;
}

std::uint64_t Monomial::support() const {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < exponents_.size() && i < 64; ++i) {
    if (exponents_[i] != 0) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Exponents e = exponents_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exponents_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::lcm(const Monomial& other) const {
  Exponents e = exponents_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(e[i], other.exponents_[i]);
  return Monomial(std::move(e));
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Exponents e = exponents_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= divisor.exponents_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::extended(std::size_t extra) const {
  Exponents e = exponents_;
  e.resize(e.size() + extra, 0);
  return Monomial(std::move(e));
}

MonomialOrder::MonomialOrder(Kind kind, std::vector<std::size_t> block)
    : kind_(kind), block_(std::move(block)) {
  for (auto b : block_) {
    if (b >= 64) throw UsageError("elimination block index out of range");
    block_mask_ |= std::uint64_t{1} << b;
  }
}

MonomialOrder MonomialOrder::elimination(std::vector<std::size_t> block) {
  std::sort(block.begin(), block.end());
  block.erase(std::unique(block.begin(), block.end()), block.end());
  return MonomialOrder(Kind::BlockElimination, std::move(block));
}

namespace {

bool in_block(std::uint64_t mask, std::size_t i) { return i < 64 && ((mask >> i) & 1u); }

std::strong_ordering grevlex_on(const Monomial& u, const Monomial& v, std::uint64_t mask,
                                bool selected) {
  std::uint64_t du = 0, dv = 0;
  for (std::size_t i = 0; i < u.arity(); ++i) {
    if (in_block(mask, i) != selected) continue;
    du += u[i];
    dv += v[i];
  }
  if (du != dv) return du <=> dv;
  for (std::size_t i = u.arity(); i-- > 0;) {
    if (in_block(mask, i) != selected) continue;
    if (u[i] != v[i]) return v[i] <=> u[i];
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering MonomialOrder::compare(const Monomial& u, const Monomial& v) const {
  if (u.arity() != v.arity()) throw UsageError("monomial arity mismatch");
  switch (kind_) {
    case Kind::Lex:
      for (std::size_t i = 0; i < u.arity(); ++i) {
        if (u[i] != v[i]) return u[i] <=> v[i];
      }
      return std::strong_ordering::equal;
    case Kind::GrevLex: {
      const auto du = u.degree();
      const auto dv = v.degree();
      if (du != dv) return du <=> dv;
      for (std::size_t i = u.arity(); i-- > 0;) {
        if (u[i] != v[i]) return v[i] <=> u[i];
      }
      return std::strong_ordering::equal;
    }
    case Kind::BlockElimination: {
      if (auto c = grevlex_on(u, v, block_mask_, true); c != 0) return c;
      return grevlex_on(u, v, block_mask_, false);
    }
  }
  return std::strong_ordering::equal;
}

std::string MonomialOrder::key() const {
  switch (kind_) {
    case Kind::Lex:
      return "lex";
    case Kind::GrevLex:
      return "grevlex";
    case Kind::BlockElimination: {
      std::string k = "elim(";
      for (std::size_t i = 0; i < block_.size(); ++i) {
        if (i) k += ",";
        k += std::to_string(block_[i]);
      }
      return k + ")";
    }
  }
  return "";
}

std::strong_ordering compare(const Monomial& u, const Monomial& v, const MonomialOrder& order) {
  return order.compare(u, v);
}

MonomialOrder parse_order(const std::string& name) {
  if (name == "lex") return MonomialOrder::lex();
  if (name == "grevlex") return MonomialOrder::grevlex();
  throw UsageError("unknown monomial order '" + name + "' (expected lex or grevlex)");
}

}  // namespace krull
