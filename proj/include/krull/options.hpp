#pragma once

#include <cstddef>

namespace krull {

struct EngineOptions {
  /// Maximum number of S-pair reductions per Groebner basis.
  std::size_t max_pair_reductions = 50000;
  /// Soft cap on user-visible variables (ring variables plus function-field
  /// parameters). Auxiliary variables introduced internally are not counted.
  std::size_t max_variables = 12;
};

}  // namespace krull
