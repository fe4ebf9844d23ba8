#include "tfree/rank2.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "tfree/error.hpp"
#include "tfree/matroid.hpp"

namespace tfree {

namespace {

void require_rank2_input(const MultiArrangement& ma) {
  if (ma.arrangement.dim() != 2)
    throw std::invalid_argument("rank-2 exponents need ambient dimension 2, got " +
                                std::to_string(ma.arrangement.dim()));
  if (ma.arrangement.empty()) throw std::invalid_argument("rank-2 exponents need a line");
}

Matrix derivation_conditions(const MultiArrangement& ma, unsigned degree) {
  const Arrangement& a = ma.arrangement;
  const std::size_t dim = a.dim();
  const std::size_t mons = monomials(dim, degree).size();

  std::vector<Vector> rows;
  for (std::size_t h = 0; h < a.size(); ++h) {
    const Matrix cond = divisibility_conditions(a[h].form(), ma.multiplicity[h], degree);
    // theta(alpha) has coefficient vector sum_i alpha_i * (component i).
    for (std::size_t r = 0; r < cond.rows(); ++r) {
      Vector row(dim * mons);
      for (std::size_t i = 0; i < dim; ++i) {
        const Integer& ai = a[h].normal()[i];
        if (ai == 0) continue;
        for (std::size_t c = 0; c < mons; ++c) row[i * mons + c] = ai * cond(r, c);
      }
      rows.push_back(std::move(row));
    }
  }
  return Matrix::from_rows(rows, dim * mons);
}

Derivation derivation_from_vector(const Vector& v, std::size_t dim, unsigned degree) {
  const auto mons = monomials(dim, degree);
  Derivation d;
  for (std::size_t i = 0; i < dim; ++i) {
    HomPoly::Terms terms;
    for (std::size_t c = 0; c < mons.size(); ++c) {
      const Rational& coeff = v[i * mons.size() + c];
      if (coeff != 0) terms.emplace(mons[c], coeff);
    }
    d.components.push_back(HomPoly::from_terms(dim, terms));
  }
  return d;
}

std::size_t derivation_space_dim(const MultiArrangement& ma, unsigned degree) {
  const Matrix cond = derivation_conditions(ma, degree);
  return cond.cols() - rank(cond);
}

}  // namespace

std::vector<Derivation> homogeneous_derivations(const MultiArrangement& ma, unsigned degree) {
  const std::size_t dim = ma.arrangement.dim();
  std::vector<Derivation> out;
  for (const auto& v : kernel_basis(derivation_conditions(ma, degree)))
    out.push_back(derivation_from_vector(v, dim, degree));
  return out;
}

ExponentPair rank2_exponents(const MultiArrangement& ma) {
  require_rank2_input(ma);
  const unsigned long total = ma.multiplicity.total();
  if (ma.arrangement.size() == 1) return {0, total};
  // dim D_d never drops as d grows (multiplying by x1 is injective), so the
  // least degree with a nonzero member can be bisected on [0, |m|/2].
  unsigned long lo = 0, hi = total / 2;
  if (derivation_space_dim(ma, static_cast<unsigned>(hi)) == 0)
    throw InternalInvariant("no derivation found up to degree |m|/2 for a rank-2 multiarrangement");
  while (lo < hi) {
    const unsigned long mid = lo + (hi - lo) / 2;
    if (derivation_space_dim(ma, static_cast<unsigned>(mid)) > 0)
      hi = mid;
    else
      lo = mid + 1;
  }
  return {lo, total - lo};
}

ExponentPair rank2_exponents_by_dimension(const MultiArrangement& ma) {
  require_rank2_input(ma);
  const unsigned long total = ma.multiplicity.total();
  const unsigned long half = total / 2;
  const std::size_t dim_half = derivation_space_dim(ma, static_cast<unsigned>(half));
  if (dim_half == 0 || dim_half > half + 1)
    throw InternalInvariant("derivation space dimension out of range");
  unsigned long d1 = half + 1 - dim_half;
  if (total % 2 == 0 && dim_half == 2) {
    // Either d1 = d2 = half (dimension 2 at half, 0 below) or d1 = half - 1.
    d1 = derivation_space_dim(ma, static_cast<unsigned>(half - 1)) == 0 ? half : half - 1;
  }
  return {d1, total - d1};
}

std::pair<Derivation, Derivation> rank2_basis(const MultiArrangement& ma) {
  require_rank2_input(ma);
  if (ma.arrangement.size() < 2) throw std::invalid_argument("rank-2 basis needs two lines");
  const ExponentPair e = rank2_exponents(ma);
  const auto low = homogeneous_derivations(ma, static_cast<unsigned>(e.d1));
  Derivation theta1 = low.front();
  for (const auto& candidate : homogeneous_derivations(ma, static_cast<unsigned>(e.d2))) {
    const std::vector<std::vector<HomPoly>> grid{theta1.components, candidate.components};
    if (!poly_det(grid).is_zero()) return {std::move(theta1), candidate};
  }
  throw InternalInvariant("no second basis derivation independent of the first");
}

bool SaitoReport::all_members() const {
  return std::all_of(membership.begin(), membership.end(), [](const std::vector<bool>& row) {
    return std::all_of(row.begin(), row.end(), [](bool b) { return b; });
  });
}

SaitoReport saito_check(const Arrangement& a, const Multiplicity& m,
                        std::span<const Derivation> thetas) {
  const std::size_t dim = a.dim();
  if (thetas.size() != dim)
    throw std::invalid_argument("Saito check needs " + std::to_string(dim) + " derivations, got " +
                                std::to_string(thetas.size()));
  if (m.size() != a.size()) throw std::invalid_argument("multiplicity length mismatch");

  SaitoReport report;
  std::vector<std::vector<HomPoly>> grid;
  for (const auto& theta : thetas) {
    if (theta.dim() != dim) throw std::invalid_argument("derivation dimension mismatch");
    std::vector<bool> row;
    for (std::size_t h = 0; h < a.size(); ++h)
      row.push_back(divisible_by_power(theta.apply(a[h].normal()), a[h].form(), m[h]));
    report.membership.push_back(std::move(row));
    grid.push_back(theta.components);
  }
  report.determinant = dim == 0 ? HomPoly::constant(0, 1) : poly_det(grid);
  report.expected = HomPoly::constant(dim, 1);
  for (std::size_t h = 0; h < a.size(); ++h) report.expected = report.expected * a[h].form().pow(m[h]);

  const HomPoly& det = report.determinant;
  if (!det.is_zero() && det.degree() == report.expected.degree()) {
    const auto& [lead_exp, lead_coeff] = *report.expected.terms().begin();
    const Rational c = det.coefficient(lead_exp) / lead_coeff;
    if (c != 0 && det == report.expected * c) report.constant = c;
  }
  return report;
}

bool saito_verify(const Arrangement& a, const Multiplicity& m, std::span<const Derivation> thetas) {
  return saito_check(a, m, thetas).verified();
}

ExponentMultiset exponents_totally_free(const Arrangement& a, const Multiplicity& m) {
  if (m.size() != a.size()) throw std::invalid_argument("multiplicity length mismatch");
  const Decomposition d = decompose(a);
  ExponentMultiset exps(d.trivial_directions, 0);
  for (const auto& f : d.factors) {
    if (f.rank() >= 3)
      throw NotTotallyFree("arrangement has an irreducible factor of rank " +
                           std::to_string(f.rank()));
    const Multiplicity local = m.restrict_to(f.indices);
    if (f.rank() == 1) {
      exps.push_back(local[0]);
    } else {
      const ExponentPair e = rank2_exponents(MultiArrangement(f.arrangement, local));
      exps.push_back(e.d1);
      exps.push_back(e.d2);
    }
  }
  std::sort(exps.begin(), exps.end());
  return exps;
}

}  // namespace tfree
