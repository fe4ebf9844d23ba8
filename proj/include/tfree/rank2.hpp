#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tfree/arrangement.hpp"
#include "tfree/hompoly.hpp"

namespace tfree {

/// Exponents of a 2-dimensional multiarrangement, d1 <= d2, d1 + d2 = |m|.
struct ExponentPair {
  unsigned long d1 = 0;
  unsigned long d2 = 0;
  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

/// Sorted ascending.
using ExponentMultiset = std::vector<unsigned long>;

/// Basis of the degree-d part of D(A, m) as a Q-vector space. Coefficient
/// vectors are laid out component by component, each over monomials(dim, d);
/// the basis is the kernel basis of the divisibility conditions.
std::vector<Derivation> homogeneous_derivations(const MultiArrangement& ma, unsigned degree);

/// Smaller exponent = least degree with a nonzero member, searched over
/// 0 .. floor(|m| / 2) by bisection. Throws std::invalid_argument unless dim == 2 and the
/// arrangement is nonempty.
ExponentPair rank2_exponents(const MultiArrangement& ma);

/// Same pair from dimension counting: dim D_d = d - d1 + 1 on [d1, d2) and
/// 2d - |m| + 2 from d2 on. Used to cross-check the search.
ExponentPair rank2_exponents_by_dimension(const MultiArrangement& ma);

/// theta1 is the first kernel vector at degree d1; theta2 the first kernel
/// vector at degree d2 independent of theta1. Needs at least two lines.
std::pair<Derivation, Derivation> rank2_basis(const MultiArrangement& ma);

struct SaitoReport {
  /// membership[i][h]: derivation i satisfies the condition at hyperplane h.
  std::vector<std::vector<bool>> membership;
  HomPoly determinant;
  HomPoly expected;  // prod alpha_H^m(H)
  /// c with determinant == c * expected, if such a nonzero c exists.
  std::optional<Rational> constant;

  bool all_members() const;
  bool verified() const { return all_members() && constant.has_value(); }
};

/// Throws std::invalid_argument unless there are exactly dim derivations of
/// the right dimension.
SaitoReport saito_check(const Arrangement& a, const Multiplicity& m,
                        std::span<const Derivation> thetas);

bool saito_verify(const Arrangement& a, const Multiplicity& m, std::span<const Derivation> thetas);

/// Concatenated factor exponents (rank 1: m(H); rank 2: the pair; trivial
/// directions: 0), sorted. Throws NotTotallyFree if a factor has rank >= 3.
ExponentMultiset exponents_totally_free(const Arrangement& a, const Multiplicity& m);

}  // namespace tfree
