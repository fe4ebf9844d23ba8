#include "tfree/arrangement.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace tfree {

Hyperplane Hyperplane::from_coefficients(std::span<const Rational> coeffs) {
  Integer lcm_den = 1;
  bool nonzero = false;
  for (const auto& c : coeffs) {
    if (c == 0) continue;
    nonzero = true;
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  }
  if (!nonzero) throw std::invalid_argument("zero normal vector");

  Hyperplane h;
  h.normal_.reserve(coeffs.size());
  Integer g = 0;
  for (const auto& c : coeffs) {
    Integer v = c.get_num() * (lcm_den / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    h.normal_.push_back(std::move(v));
  }
  const auto first = std::find_if(h.normal_.begin(), h.normal_.end(),
                                  [](const Integer& v) { return v != 0; });
  if (*first < 0) g = -g;
  for (auto& v : h.normal_) v /= g;
  return h;
}

Hyperplane Hyperplane::from_coefficients(std::span<const Integer> coeffs) {
  std::vector<Rational> q(coeffs.begin(), coeffs.end());
  return from_coefficients(q);
}

Hyperplane normalize_hyperplane(std::span<const Rational> coeffs) {
  return Hyperplane::from_coefficients(coeffs);
}

// ---------------------------------------------------------------------------

Arrangement::Arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes)
    : dim_(dim), hyperplanes_(std::move(hyperplanes)) {
  std::set<Hyperplane> seen;
  for (std::size_t i = 0; i < hyperplanes_.size(); ++i) {
    if (hyperplanes_[i].dim() != dim_)
      throw std::invalid_argument("hyperplane " + std::to_string(i) + " has wrong length");
    if (!seen.insert(hyperplanes_[i]).second)
      throw std::invalid_argument("hyperplane " + std::to_string(i) + " is repeated");
  }
}

Matrix Arrangement::normal_matrix() const {
  Matrix m(size(), dim_);
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = hyperplanes_[i].normal()[j];
  return m;
}

Matrix Arrangement::normal_matrix(std::span<const std::size_t> indices) const {
  Matrix m(indices.size(), dim_);
  for (std::size_t r = 0; r < indices.size(); ++r)
    for (std::size_t j = 0; j < dim_; ++j) m(r, j) = hyperplanes_.at(indices[r]).normal()[j];
  return m;
}

std::size_t Arrangement::rank() const { return tfree::rank(normal_matrix()); }

std::size_t Arrangement::rank_of(std::span<const std::size_t> indices) const {
  return tfree::rank(normal_matrix(indices));
}

// ---------------------------------------------------------------------------

Multiplicity::Multiplicity(std::vector<unsigned> values) : values_(std::move(values)) {
  for (auto v : values_)
    if (v == 0) throw std::invalid_argument("multiplicities must be positive");
}

unsigned long Multiplicity::total() const {
  return std::accumulate(values_.begin(), values_.end(), 0ul);
}

Multiplicity Multiplicity::restrict_to(std::span<const std::size_t> indices) const {
  std::vector<unsigned> v;
  v.reserve(indices.size());
  for (auto i : indices) v.push_back(values_.at(i));
  return Multiplicity(std::move(v));
}

MultiArrangement::MultiArrangement(Arrangement a, Multiplicity m)
    : arrangement(std::move(a)), multiplicity(std::move(m)) {
  if (arrangement.size() != multiplicity.size())
    throw std::invalid_argument("multiplicity length " + std::to_string(multiplicity.size()) +
                                " does not match " + std::to_string(arrangement.size()) +
                                " hyperplanes");
}

// ---------------------------------------------------------------------------

Derivation Derivation::euler(std::size_t dim) {
  Derivation d;
  for (std::size_t i = 0; i < dim; ++i) d.components.push_back(HomPoly::variable(dim, i));
  return d;
}

Derivation Derivation::zero(std::size_t dim) {
  return Derivation{std::vector<HomPoly>(dim, HomPoly(dim))};
}

int Derivation::degree() const {
  int deg = -1;
  for (const auto& c : components) {
    if (c.is_zero()) continue;
    if (deg >= 0 && c.degree() != deg)
      throw std::invalid_argument("derivation components have different degrees");
    deg = c.degree();
  }
  return deg;
}

bool Derivation::is_zero() const {
  return std::all_of(components.begin(), components.end(),
                     [](const HomPoly& c) { return c.is_zero(); });
}

HomPoly Derivation::apply(std::span<const Integer> alpha) const {
  if (alpha.size() != components.size())
    throw std::invalid_argument("derivation and linear form dimensions differ");
  HomPoly out(components.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] != 0) out += components[i] * Rational(alpha[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

Essentialization essentialize(const Arrangement& a) {
  const std::size_t dim = a.dim();
  const Echelon e = rref(a.normal_matrix());
  const std::size_t r = e.pivots.size();

  Essentialization out;
  out.kept_coordinates = e.pivots;
  out.trivial_directions = dim - r;
  out.embedding = Matrix(dim, r);
  for (std::size_t k = 0; k < r; ++k) out.embedding(e.pivots[k], k) = 1;

  std::vector<Hyperplane> hs;
  hs.reserve(a.size());
  for (const auto& h : a.hyperplanes()) {
    std::vector<Integer> projected;
    projected.reserve(r);
    for (auto p : e.pivots) projected.push_back(h.normal()[p]);
    hs.push_back(Hyperplane::from_coefficients(std::span<const Integer>(projected)));
  }
  out.arrangement = Arrangement(r, std::move(hs));
  return out;
}

Arrangement deletion(const Arrangement& a, std::size_t h) {
  if (h >= a.size()) throw std::out_of_range("deletion index out of range");
  std::vector<Hyperplane> hs = a.hyperplanes();
  hs.erase(hs.begin() + static_cast<std::ptrdiff_t>(h));
  return Arrangement(a.dim(), std::move(hs));
}

namespace {

/// Integer basis of ker(alpha): a_p e_j - a_j e_p for j != p, made primitive.
Matrix kernel_lattice_basis(const std::vector<Integer>& alpha) {
  const std::size_t n = alpha.size();
  std::size_t p = 0;
  while (alpha[p] == 0) ++p;
  Matrix basis(n, n - 1);
  std::size_t col = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == p) continue;
    Integer g;
    mpz_gcd(g.get_mpz_t(), alpha[p].get_mpz_t(), alpha[j].get_mpz_t());
    basis(j, col) = Rational(alpha[p] / g);
    basis(p, col) = Rational(-alpha[j] / g);
    ++col;
  }
  return basis;
}

}  // namespace

Restriction restriction(const Arrangement& a, std::size_t h0) {
  if (h0 >= a.size()) throw std::out_of_range("restriction index out of range");
  const std::size_t dim = a.dim();
  Restriction out;
  out.basis = kernel_lattice_basis(a[h0].normal());
  out.index_map.assign(a.size(), std::nullopt);

  std::vector<Hyperplane> images;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == h0) continue;
    std::vector<Rational> restricted(dim - 1);
    for (std::size_t c = 0; c + 1 < dim; ++c)
      for (std::size_t j = 0; j < dim; ++j)
        restricted[c] += Rational(a[i].normal()[j]) * out.basis(j, c);
    Hyperplane image = Hyperplane::from_coefficients(std::span<const Rational>(restricted));
    auto it = std::find(images.begin(), images.end(), image);
    if (it == images.end()) {
      out.index_map[i] = images.size();
      images.push_back(std::move(image));
    } else {
      out.index_map[i] = static_cast<std::size_t>(it - images.begin());
    }
  }
  out.arrangement = Arrangement(dim - 1, std::move(images));
  return out;
}

std::vector<Flat2> rank2_flats(const Arrangement& a) {
  const std::size_t n = a.size();
  std::vector<Flat2> flats;
  std::vector<std::vector<bool>> covered(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (covered[i][j]) continue;
      const std::array<std::size_t, 2> pair{i, j};
      if (a.rank_of(pair) < 2) continue;  // only possible in dimension < 2
      Flat2 flat;
      for (std::size_t k = 0; k < n; ++k) {
        const std::array<std::size_t, 3> triple{i, j, k};
        if (k == i || k == j || a.rank_of(triple) == 2) flat.members.push_back(k);
      }
      for (auto p : flat.members)
        for (auto q : flat.members) covered[p][q] = true;
      flat.span_basis = {a[i].normal_q(), a[j].normal_q()};
      flats.push_back(std::move(flat));
    }
  }
  return flats;
}

MultiArrangement localization(const Arrangement& a, const Multiplicity& m, const Flat2& x) {
  if (m.size() != a.size()) throw std::invalid_argument("multiplicity length mismatch");
  if (x.members.size() < 2) throw std::invalid_argument("flat needs at least two members");
  Vector u = x.span_basis[0];
  Vector v = x.span_basis[1];
  if (u.size() != a.dim() || v.size() != a.dim())
    throw std::invalid_argument("flat basis has wrong length");
  if (a.dim() == 2 && u[0] * v[1] != u[1] * v[0]) {
    // The flat is the origin; keep the ambient coordinates.
    u = {1, 0};
    v = {0, 1};
  }

  // Solve n = s u + t v through a 2 x 2 minor that is nonzero.
  std::size_t p = 0, q = 0;
  Rational det = 0;
  for (std::size_t i = 0; i < a.dim() && det == 0; ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) {
      det = u[i] * v[j] - u[j] * v[i];
      if (det != 0) {
        p = i;
        q = j;
        break;
      }
    }
  if (det == 0) throw std::invalid_argument("flat basis is not independent");

  std::vector<Hyperplane> lines;
  std::vector<unsigned> mult;
  for (auto idx : x.members) {
    const Vector n = a[idx].normal_q();
    const Rational s = (n[p] * v[q] - n[q] * v[p]) / det;
    const Rational t = (u[p] * n[q] - u[q] * n[p]) / det;
    for (std::size_t k = 0; k < a.dim(); ++k) {
      if (s * u[k] + t * v[k] != n[k])
        throw std::invalid_argument("hyperplane " + std::to_string(idx) +
                                    " is not in the flat's span");
    }
    const std::array<Rational, 2> coords{s, t};
    lines.push_back(Hyperplane::from_coefficients(std::span<const Rational>(coords)));
    mult.push_back(m[idx]);
  }
  return MultiArrangement(Arrangement(2, std::move(lines)), Multiplicity(std::move(mult)));
}

Arrangement product(const Arrangement& a1, const Arrangement& a2) {
  const std::size_t dim = a1.dim() + a2.dim();
  std::vector<Hyperplane> hs;
  hs.reserve(a1.size() + a2.size());
  for (const auto& h : a1.hyperplanes()) {
    std::vector<Integer> n = h.normal();
    n.resize(dim, 0);
    hs.push_back(Hyperplane::from_coefficients(std::span<const Integer>(n)));
  }
  for (const auto& h : a2.hyperplanes()) {
    std::vector<Integer> n(a1.dim(), 0);
    n.insert(n.end(), h.normal().begin(), h.normal().end());
    hs.push_back(Hyperplane::from_coefficients(std::span<const Integer>(n)));
  }
  return Arrangement(dim, std::move(hs));
}

bool is_member(const Derivation& theta, const Arrangement& a, const Multiplicity& m) {
  if (theta.dim() != a.dim()) throw std::invalid_argument("derivation dimension mismatch");
  if (m.size() != a.size()) throw std::invalid_argument("multiplicity length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!divisible_by_power(theta.apply(a[i].normal()), a[i].form(), m[i])) return false;
  }
  return true;
}

Arrangement change_coordinates(const Arrangement& a, const Matrix& t) {
  if (t.rows() != a.dim() || t.cols() != a.dim())
    throw std::invalid_argument("coordinate change has wrong shape");
  const Matrix moved = a.normal_matrix() * t;
  std::vector<Hyperplane> hs;
  hs.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Vector row = moved.row(i);
    hs.push_back(Hyperplane::from_coefficients(std::span<const Rational>(row)));
  }
  return Arrangement(a.dim(), std::move(hs));
}

}  // namespace tfree
