#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tfree/matrix.hpp"
#include "tfree/rational.hpp"

namespace tfree {

/// Sparse homogeneous polynomial in x1..xn over Q.
///
/// Every stored exponent vector sums to degree(); zero coefficients are never
/// stored. The zero polynomial has no terms and degree() == -1. Sums of two
/// nonzero polynomials of different degrees are rejected.
class HomPoly {
 public:
  using Exponent = std::vector<unsigned>;
  /// Descending lexicographic, so x1^2 prints before x1*x2.
  using Terms = std::map<Exponent, Rational, std::greater<>>;

  HomPoly() = default;
  explicit HomPoly(std::size_t num_vars) : num_vars_(num_vars) {}

  static HomPoly constant(std::size_t num_vars, const Rational& c);
  static HomPoly variable(std::size_t num_vars, std::size_t index);
  static HomPoly monomial(Exponent e, const Rational& c);
  static HomPoly linear_form(std::span<const Rational> coeffs);
  static HomPoly linear_form(std::span<const Integer> coeffs);
  /// Throws std::invalid_argument if the terms are not homogeneous.
  static HomPoly from_terms(std::size_t num_vars, const Terms& terms);

  std::size_t num_vars() const { return num_vars_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  Rational coefficient(const Exponent& e) const;

  HomPoly& operator+=(const HomPoly& o);
  HomPoly& operator-=(const HomPoly& o);
  HomPoly& operator*=(const Rational& c);
  HomPoly operator-() const;
  friend HomPoly operator+(HomPoly a, const HomPoly& b) { return a += b; }
  friend HomPoly operator-(HomPoly a, const HomPoly& b) { return a -= b; }
  friend HomPoly operator*(HomPoly a, const Rational& c) { return a *= c; }
  friend HomPoly operator*(const Rational& c, HomPoly a) { return a *= c; }
  friend HomPoly operator*(const HomPoly& a, const HomPoly& b);
  friend bool operator==(const HomPoly& a, const HomPoly& b) = default;

  HomPoly pow(unsigned e) const;
  Rational evaluate(std::span<const Rational> point) const;

  /// f(T y): x_i is replaced by sum_j T(i, j) y_j. T has num_vars() rows.
  HomPoly substitute(const Matrix& t) const;

  /// Human readable, e.g. "x1^2*x2 - 1/2*x2^3". Variables named x1..xn.
  std::string to_string() const;

 private:
  void add_scaled(const HomPoly& o, const Rational& c);

  std::size_t num_vars_ = 0;
  int degree_ = -1;
  Terms terms_;
};

/// All exponent vectors of the given total degree, in the Terms order.
std::vector<HomPoly::Exponent> monomials(std::size_t num_vars, unsigned degree);

/// Invertible integer matrix T with alpha(T y) = c * y1 for a nonzero c.
/// Column 0 is the unit vector at the first nonzero coefficient p of alpha;
/// the remaining columns a_p e_j - a_j e_p span ker(alpha).
Matrix straightening_map(const HomPoly& alpha);

/// True iff alpha^m divides f. alpha must be a nonzero linear form.
bool divisible_by_power(const HomPoly& f, const HomPoly& alpha, unsigned m);

/// Linear conditions on the coefficients of a degree-d polynomial (indexed by
/// monomials(num_vars, d)) that hold exactly when alpha^m divides it.
Matrix divisibility_conditions(const HomPoly& alpha, unsigned m, unsigned degree);

/// Determinant of a square grid of homogeneous polynomials, by expansion over
/// column subsets. The result must itself be homogeneous (it is whenever the
/// rows, or the columns, each have a single degree).
HomPoly poly_det(const std::vector<std::vector<HomPoly>>& m);

}  // namespace tfree
