#include "tfree/matroid.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace tfree {

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

}  // namespace

std::vector<std::vector<std::size_t>> connected_components(const Arrangement& a) {
  const std::size_t n = a.size();
  if (n == 0) return {};

  // Greedy basis in index order; every other element is joined to the basis
  // elements of its fundamental circuit. Components of the resulting graph
  // are the matroid components.
  std::vector<std::size_t> basis;
  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> cols = basis;
    cols.push_back(i);
    const Matrix m = a.normal_matrix(cols).transpose();  // dim x (|basis| + 1)
    const auto kernel = kernel_basis(m);
    if (kernel.empty()) {
      basis.push_back(i);
      continue;
    }
    const Vector& dep = kernel.front();
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (dep[k] != 0) sets.unite(basis[k], i);
    }
  }

  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> block_of(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.find(i);
    if (block_of[root] == n) {
      block_of[root] = blocks.size();
      blocks.emplace_back();
    }
    blocks[block_of[root]].push_back(i);
  }
  return blocks;
}

bool is_irreducible(const Arrangement& a) {
  if (a.empty() || a.rank() != a.dim()) return false;
  return connected_components(a).size() == 1;
}

Decomposition decompose(const Arrangement& a) {
  Decomposition d;
  d.dim = a.dim();
  std::vector<Vector> phi_rows;

  for (auto& block : connected_components(a)) {
    const Echelon e = rref(a.normal_matrix(block));
    const std::size_t r = e.pivots.size();
    for (std::size_t k = 0; k < r; ++k) phi_rows.push_back(e.reduced.row(k));

    // Against the reduced rows, a normal's coordinates are its pivot entries.
    std::vector<Hyperplane> hs;
    for (auto i : block) {
      std::vector<Integer> local;
      for (auto p : e.pivots) local.push_back(a[i].normal()[p]);
      hs.push_back(Hyperplane::from_coefficients(std::span<const Integer>(local)));
    }
    d.factors.push_back(Factor{Arrangement(r, std::move(hs)), std::move(block)});
  }

  // Complete with unit rows; these span the trivial directions.
  const std::size_t factor_rank = phi_rows.size();
  for (std::size_t j = 0; j < a.dim() && phi_rows.size() < a.dim(); ++j) {
    Vector unit(a.dim());
    unit[j] = 1;
    phi_rows.push_back(unit);
    if (rank_of(phi_rows, a.dim()) < phi_rows.size()) phi_rows.pop_back();
  }
  d.trivial_directions = a.dim() - factor_rank;
  d.change_of_basis = Matrix::from_rows(phi_rows, a.dim());
  return d;
}

Arrangement Decomposition::recompose() const {
  std::size_t n = 0;
  for (const auto& f : factors) n += f.indices.size();
  std::vector<std::optional<Hyperplane>> slots(n);

  std::size_t offset = 0;
  for (const auto& f : factors) {
    for (std::size_t k = 0; k < f.indices.size(); ++k) {
      Vector padded(dim);
      for (std::size_t j = 0; j < f.rank(); ++j) padded[offset + j] = f.arrangement[k].normal()[j];
      Vector original(dim);
      for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t r = 0; r < dim; ++r) original[c] += padded[r] * change_of_basis(r, c);
      slots.at(f.indices[k]) = Hyperplane::from_coefficients(std::span<const Rational>(original));
    }
    offset += f.rank();
  }
  std::vector<Hyperplane> hs;
  for (auto& s : slots) {
    if (!s) throw std::logic_error("decomposition does not cover every hyperplane");
    hs.push_back(std::move(*s));
  }
  return Arrangement(dim, std::move(hs));
}

}  // namespace tfree
