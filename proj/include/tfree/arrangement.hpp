#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tfree/hompoly.hpp"
#include "tfree/matrix.hpp"
#include "tfree/rational.hpp"

namespace tfree {

/// ker(alpha) for a primitive integer covector alpha whose first nonzero
/// entry is positive. Two hyperplanes are equal iff their normals are.
class Hyperplane {
 public:
  /// Clears denominators, divides by the gcd and fixes the sign.
  /// Throws std::invalid_argument for the zero vector.
  static Hyperplane from_coefficients(std::span<const Rational> coeffs);
  static Hyperplane from_coefficients(std::span<const Integer> coeffs);

  std::size_t dim() const { return normal_.size(); }
  const std::vector<Integer>& normal() const { return normal_; }
  Vector normal_q() const { return Vector(normal_.begin(), normal_.end()); }
  HomPoly form() const { return HomPoly::linear_form(normal_); }

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
  friend auto operator<=>(const Hyperplane& a, const Hyperplane& b) {
    return a.normal_ <=> b.normal_;
  }

 private:
  std::vector<Integer> normal_;
};

Hyperplane normalize_hyperplane(std::span<const Rational> coeffs);

/// Central arrangement: ambient dimension plus an ordered list of distinct
/// hyperplanes. Empty arrangements and dimension 0 are allowed.
class Arrangement {
 public:
  explicit Arrangement(std::size_t dim = 0) : dim_(dim) {}
  /// Throws std::invalid_argument on a length mismatch or a repeated hyperplane.
  Arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return hyperplanes_.size(); }
  bool empty() const { return hyperplanes_.empty(); }
  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
  const Hyperplane& operator[](std::size_t i) const { return hyperplanes_.at(i); }

  /// size() x dim() matrix of normals.
  Matrix normal_matrix() const;
  /// normal_matrix() restricted to the listed rows.
  Matrix normal_matrix(std::span<const std::size_t> indices) const;
  std::size_t rank() const;
  std::size_t rank_of(std::span<const std::size_t> indices) const;

  friend bool operator==(const Arrangement&, const Arrangement&) = default;

 private:
  std::size_t dim_;
  std::vector<Hyperplane> hyperplanes_;
};

/// Positive integer per hyperplane, aligned with the arrangement order.
class Multiplicity {
 public:
  Multiplicity() = default;
  /// Throws std::invalid_argument if any value is 0.
  explicit Multiplicity(std::vector<unsigned> values);
  static Multiplicity ones(std::size_t n) { return Multiplicity(std::vector<unsigned>(n, 1)); }

  std::size_t size() const { return values_.size(); }
  unsigned operator[](std::size_t i) const { return values_.at(i); }
  const std::vector<unsigned>& values() const { return values_; }
  unsigned long total() const;
  Multiplicity restrict_to(std::span<const std::size_t> indices) const;

  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;

 private:
  std::vector<unsigned> values_;
};

struct MultiArrangement {
  Arrangement arrangement;
  Multiplicity multiplicity;

  MultiArrangement(Arrangement a, Multiplicity m);
};

/// theta = sum_i components[i] * d/dx_i, all components of one degree.
struct Derivation {
  std::vector<HomPoly> components;

  static Derivation euler(std::size_t dim);
  static Derivation zero(std::size_t dim);
  std::size_t dim() const { return components.size(); }
  /// Common degree of the nonzero components; -1 for the zero derivation.
  /// Throws std::invalid_argument if components disagree.
  int degree() const;
  bool is_zero() const;
  /// theta(alpha) for the linear form with the given coefficients.
  HomPoly apply(std::span<const Integer> alpha) const;
};

/// Closed rank-2 flat: every hyperplane whose normal lies in the span of the
/// two basis normals.
struct Flat2 {
  std::vector<std::size_t> members;
  std::array<Vector, 2> span_basis;
};

struct Essentialization {
  Arrangement arrangement;   // dimension r = rank
  Matrix embedding;          // dim x r; maps new coordinates into the old space
  std::vector<std::size_t> kept_coordinates;
  std::size_t trivial_directions = 0;
};

/// Projects the normals onto the pivot coordinates of their row space; that
/// projection is injective on the span, so hyperplanes stay distinct. An
/// essential input comes back unchanged with the identity embedding.
Essentialization essentialize(const Arrangement& a);

/// Throws std::out_of_range.
Arrangement deletion(const Arrangement& a, std::size_t h);

struct Restriction {
  Arrangement arrangement;   // dimension dim - 1
  Matrix basis;              // dim x (dim - 1), integer basis of H0
  std::vector<std::optional<std::size_t>> index_map;  // nullopt at H0
};

/// Restricts every other hyperplane to H0 and keeps distinct images in order
/// of first appearance. Throws std::out_of_range.
Restriction restriction(const Arrangement& a, std::size_t h0);

std::vector<Flat2> rank2_flats(const Arrangement& a);

/// The flat's members as lines in the 2-dimensional quotient, written in the
/// coordinates of span_basis. Throws std::invalid_argument for a malformed flat.
MultiArrangement localization(const Arrangement& a, const Multiplicity& m, const Flat2& x);

Arrangement product(const Arrangement& a1, const Arrangement& a2);

/// theta(alpha_H) divisible by alpha_H^m(H) for every H.
/// Throws std::invalid_argument on a dimension or length mismatch.
bool is_member(const Derivation& theta, const Arrangement& a, const Multiplicity& m);

/// Applies an invertible change of coordinates x = T y: the hyperplane with
/// normal n becomes the one with normal n T.
Arrangement change_coordinates(const Arrangement& a, const Matrix& t);

}  // namespace tfree
