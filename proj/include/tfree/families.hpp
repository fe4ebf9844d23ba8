#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "tfree/arrangement.hpp"

namespace tfree {

/// Coordinate hyperplanes x_1, ..., x_dim.
Arrangement boolean_arrangement(std::size_t dim);

/// x_i - x_j for 1 <= i < j <= dim, in lexicographic order of (i, j).
Arrangement braid_arrangement(std::size_t dim);

/// n hyperplanes in dimension dim with seeded random integer normals; a
/// candidate is rejected while some pair or triple of normals has rank below
/// min(2, dim) or min(3, dim). Throws std::invalid_argument when impossible.
Arrangement generic_arrangement(std::size_t n, std::size_t dim, std::uint64_t seed);

/// Family expressions:
///   boolean L | braid L | generic N L [SEED] | product (F) (F) ...
/// Parentheses may also wrap a whole expression. A generic family without an
/// explicit seed uses default_seed, and fails if there is none.
Arrangement generate_family(std::string_view expr, std::optional<std::uint64_t> default_seed);

}  // namespace tfree
