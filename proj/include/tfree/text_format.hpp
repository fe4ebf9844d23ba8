#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tfree/arrangement.hpp"

namespace tfree {

/// Arrangement file:
///
///   # comment
///   dim 4
///   hyperplane 1 -1 0 0 mult 2
///   hyperplane 0 0 1 -1
///
/// Coefficients are integers or p/q; `mult k` defaults to 1; line order is
/// index order. Throws ParseError (with line number) on malformed input,
/// including a hyperplane that repeats an earlier one.
MultiArrangement parse_arrangement(std::string_view text);

/// Inverse of parse_arrangement; `mult` is written only when it is not 1.
std::string format_arrangement(const Arrangement& a, const Multiplicity* m = nullptr);

/// "1,2,3" with exactly n positive entries. Throws std::invalid_argument.
Multiplicity parse_multiplicity_list(std::string_view text, std::size_t n);

/// Polynomial in x1..x<num_vars>: integer or p/q coefficients, '+', '-', '*',
/// '^' with a nonnegative integer exponent, and parentheses. Must be
/// homogeneous. Throws std::invalid_argument.
HomPoly parse_polynomial(std::string_view text, std::size_t num_vars);

/// Basis file: one derivation per block, blocks separated by blank lines or a
/// `derivation` line; inside a block, lines `component i: <polynomial>` with
/// 1 <= i <= dim. Unlisted components are zero. '#' starts a comment.
std::vector<Derivation> parse_basis(std::string_view text, std::size_t dim);

}  // namespace tfree
