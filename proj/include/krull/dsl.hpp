#pragma once

#include <string_view>

#include "krull/parse.hpp"
#include "krull/ring_expr.hpp"

namespace krull {

/// field := `Q` | `Fp(` prime `)` | `FunField(` field `;` varlist `)`
CoefficientField parse_field(std::string_view text);

/// expr := field | `Ext(` field `;` trdeg [`;` minpolys] `)` | `Poly(` expr `;` varlist `)`
///       | `Quot(` expr `;` polylist `)` | `Loc(` expr `;` poly `)` | `LocSub(` expr `;` polylist `)`
///       | `Tensor(` expr {`,` expr} [`;` field] `)` | `Frac(` expr `)`
/// trdeg := integer | `inf`. Polynomials are read in the presentation ring
/// of the enclosed expression. Throws ParseError with line and column.
RingExpr parse_ring_expr(std::string_view text);

}  // namespace krull
