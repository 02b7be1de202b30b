#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krull/dimension.hpp"

namespace krull {

/// A cardinal that is either a natural number or countably infinite.
struct Count {
  bool infinite = false;
  std::uint64_t value = 0;

  static Count finite(std::uint64_t v) { return {false, v}; }
  static Count countable() { return {true, 0}; }

  std::string to_string() const { return infinite ? "inf" : std::to_string(value); }
  friend bool operator==(const Count&, const Count&) = default;
  friend bool operator<(const Count& a, const Count& b) {
    if (a.infinite || b.infinite) return !a.infinite && b.infinite;
    return a.value < b.value;
  }
  friend Count operator+(const Count& a, const Count& b) {
    if (a.infinite || b.infinite) return countable();
    return finite(a.value + b.value);
  }
};

inline Count min(const Count& a, const Count& b) { return b < a ? b : a; }
inline Count max(const Count& a, const Count& b) { return a < b ? b : a; }

struct AlgebraicGenerator {
  std::string symbol;
  /// Monic in `symbol`; lives in base[earlier symbols..., symbol].
  Polynomial minimal_polynomial;
};

/// L = base(T_1..T_t)(a_1..a_r): a declared transcendence degree and
/// optional algebraic generators given by monic relations over the base.
struct FieldExtensionDescriptor {
  CoefficientField base;
  Count trdeg;
  std::vector<AlgebraicGenerator> algebraic_part;

  /// Validates the invariants; throws UsageError.
  void validate() const;
  friend bool operator==(const FieldExtensionDescriptor& a, const FieldExtensionDescriptor& b);
};

/// trdeg over the base; the algebraic part contributes 0.
Count trdeg_of(const FieldExtensionDescriptor& desc);

/// Ring construction syntax tree. Immutable, cheap to copy. Every node that
/// is an affine algebra over some field carries that presentation
/// (flat()); polynomials inside Quot/Loc/LocSub live in the child's
/// presentation ring.
class RingExpr {
 public:
  enum class Kind { BaseField, FieldExt, PolyExt, Quotient, LocElement, LocSubringComplement, Tensor, FracField };

  static RingExpr base_field(CoefficientField field);
  static RingExpr field_ext(FieldExtensionDescriptor desc);
  static RingExpr poly(RingExpr inner, std::vector<std::string> variables);
  static RingExpr quotient(RingExpr inner, std::vector<Polynomial> generators);
  static RingExpr loc(RingExpr inner, Polynomial element);
  static RingExpr loc_sub(RingExpr inner, std::vector<Polynomial> generators);
  /// `over` defaults to the legs' common base field (or its ground field).
  static RingExpr tensor(std::vector<RingExpr> legs, std::optional<CoefficientField> over = std::nullopt);
  static RingExpr frac(RingExpr inner);

  Kind kind() const { return node_->kind; }
  /// The field this ring is an algebra over.
  const CoefficientField& base() const { return node_->base; }
  const std::vector<RingExpr>& children() const { return node_->children; }
  const RingExpr& child() const { return node_->children.front(); }
  const CoefficientField& field() const { return node_->field; }
  const FieldExtensionDescriptor& extension() const { return *node_->extension; }
  const std::vector<std::string>& variables() const { return node_->variables; }
  const std::vector<Polynomial>& polynomials() const { return node_->polynomials; }
  /// Affine presentation over some field, when the construction has one.
  const std::optional<AffineAlgebra>& flat() const { return node_->flat; }
  /// The presentation ring, or UsageError naming `what` needs it.
  const PolynomialRing& ring_for(const std::string& what) const;
  /// Tensor with one purely transcendental leg K(X_1..X_n) over K: the
  /// juxtaposition B of the remaining data over K, and n. Then flat() is
  /// B read over K(X_1..X_n).
  const std::optional<std::pair<AffineAlgebra, std::size_t>>& generic_fiber() const { return node_->generic_fiber; }

  /// Canonical text in the expression grammar.
  std::string to_string() const;
  friend bool operator==(const RingExpr& a, const RingExpr& b);
  friend bool operator!=(const RingExpr& a, const RingExpr& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind = Kind::BaseField;
    CoefficientField base = CoefficientField::rationals();
    CoefficientField field = CoefficientField::rationals();
    std::optional<FieldExtensionDescriptor> extension;
    std::vector<RingExpr> children;
    std::vector<std::string> variables;
    std::vector<Polynomial> polynomials;
    std::optional<AffineAlgebra> flat;
    std::optional<std::pair<AffineAlgebra, std::size_t>> generic_fiber;
    bool explicit_base = false;
  };
  explicit RingExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// K[vars(a) ⊎ vars(b)] / (I_a ∪ I_b); clashing names of b are renamed
/// with fresh names. Throws UsageError when the base fields differ.
AffineAlgebra tensor_flatten_affine(const AffineAlgebra& a, const AffineAlgebra& b);

/// `field` as a ground field or function field whose parameters are
/// `field`'s own followed by `extra`.
CoefficientField adjoin_parameters(const CoefficientField& field, const std::vector<std::string>& extra);

/// A's generators read over a field with extra parameters (the ring keeps
/// A's variables). Valid for base change along a purely transcendental
/// extension of A's coefficient field.
AffineAlgebra read_over(const AffineAlgebra& algebra, const CoefficientField& larger);

}  // namespace krull
