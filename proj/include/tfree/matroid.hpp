#pragma once

#include <cstddef>
#include <vector>

#include "tfree/arrangement.hpp"
#include "tfree/matrix.hpp"

namespace tfree {

/// One irreducible factor, written in its own essential coordinates, with the
/// indices of the original hyperplanes it carries.
struct Factor {
  Arrangement arrangement;
  std::vector<std::size_t> indices;

  std::size_t rank() const { return arrangement.dim(); }
};

/// A = A_1 x ... x A_s x (empty arrangement on trivial_directions coordinates).
///
/// change_of_basis is an invertible dim x dim matrix Phi with new coordinates
/// z = Phi x: rows of factor 1 first, then factor 2, ..., then the trivial
/// directions. Original hyperplane i has normal (padded factor normal) * Phi,
/// up to a positive scalar.
struct Decomposition {
  std::size_t dim = 0;
  std::vector<Factor> factors;
  std::size_t trivial_directions = 0;
  Matrix change_of_basis;

  /// Rebuilds the arrangement in the original coordinates, hyperplanes in the
  /// original order.
  Arrangement recompose() const;
};

/// Connected components of the linear matroid of the normals: the finest
/// partition on which rank is additive. Blocks sorted, ordered by smallest
/// member. Empty input gives an empty partition.
std::vector<std::vector<std::size_t>> connected_components(const Arrangement& a);

/// Essential, nonempty and a single component. A lone hyperplane in
/// dimension 1 is irreducible; anything with trivial directions is not.
bool is_irreducible(const Arrangement& a);

Decomposition decompose(const Arrangement& a);

}  // namespace tfree
