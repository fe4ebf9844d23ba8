#include "tfree/certificates.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tfree/error.hpp"

namespace tfree {

// ---- mixed products -------------------------------------------------------

Lmp2Breakdown lmp2_breakdown(const Arrangement& a, const Multiplicity& m) {
  if (m.size() != a.size()) throw std::invalid_argument("multiplicity length mismatch");
  Lmp2Breakdown out;
  out.total = 0;
  for (auto& flat : rank2_flats(a)) {
    const ExponentPair e = rank2_exponents(localization(a, m, flat));
    out.total += Integer(e.d1) * Integer(e.d2);
    out.flats.push_back({std::move(flat), e});
  }
  return out;
}

Integer lmp2(const Arrangement& a, const Multiplicity& m) { return lmp2_breakdown(a, m).total; }

Integer gmp2_from_exponents(std::span<const unsigned long> exponents) {
  Integer sum = 0, e2 = 0;
  for (auto d : exponents) {
    e2 += sum * d;
    sum += d;
  }
  return e2;
}

Integer gmp2_max(std::size_t rank, const Integer& total) {
  if (rank == 0) return 0;
  const Integer r(static_cast<unsigned long>(rank));
  const Integer q = total / r;
  const Integer s = total % r;
  const Integer squares = s * (q + 1) * (q + 1) + (r - s) * q * q;
  return (total * total - squares) / 2;
}

Rational gmp2_real_bound(std::size_t rank, const Integer& total) {
  if (rank == 0) return 0;
  const Rational per = make_rational(total, Integer(static_cast<unsigned long>(rank)));
  return Rational(binomial(rank, 2)) * per * per;
}

// ---- generic circuits -----------------------------------------------------

bool is_generic_circuit(const Arrangement& a, std::span<const std::size_t> indices) {
  if (indices.size() != a.rank() + 1) return false;
  std::vector<std::size_t> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (!sorted.empty() && sorted.back() >= a.size()) return false;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j)
      for (std::size_t k = j + 1; k < sorted.size(); ++k) {
        const std::array<std::size_t, 3> t{sorted[i], sorted[j], sorted[k]};
        if (a.rank_of(t) != 3) return false;
      }
  return true;
}

namespace {

void require_irreducible_rank3(const Arrangement& a) {
  if (!is_irreducible(a))
    throw ReducibleInput("arrangement is not essential and irreducible");
  if (a.dim() < 3)
    throw ReducibleInput("irreducible arrangement has rank " + std::to_string(a.dim()) +
                         " < 3");
}

std::vector<std::size_t> checked(const Arrangement& a, std::vector<std::size_t> idx,
                                 const char* where) {
  std::sort(idx.begin(), idx.end());
  if (!is_generic_circuit(a, idx))
    throw InternalInvariant(std::string("generic circuit condition fails at ") + where);
  return idx;
}

std::vector<std::size_t> rank3_case_analysis(const Arrangement& a, const Restriction& res) {
  const std::size_t n = a.size();
  std::vector<std::vector<std::size_t>> preimages(res.arrangement.size());
  for (std::size_t i = 1; i < n; ++i) preimages[*res.index_map[i]].push_back(i);

  if (res.arrangement.size() == n - 1) {
    // Case 1: distinct images. Any three of H1..H_{n-1} meeting in the origin
    // complete H0 to a circuit.
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          const std::array<std::size_t, 3> t{i, j, k};
          if (a.rank_of(t) == 3) return checked(a, {0, i, j, k}, "rank-3 case 1");
        }
    throw InternalInvariant("rank-3 case 1: deletion has rank < 3");
  }

  // Case 2: H3, H4 share an image; H1, H2 have images distinct from it and
  // from each other. H3 cap H4 lies in H0, so one of H1 H2 H3 / H1 H2 H4
  // meets in the origin.
  std::size_t i3 = n, i4 = n;
  for (std::size_t i = 1; i < n && i3 == n; ++i) {
    const auto& pre = preimages[*res.index_map[i]];
    if (pre.size() >= 2) {
      i3 = pre[0];
      i4 = pre[1];
    }
  }
  const std::size_t shared = *res.index_map[i3];
  std::vector<std::size_t> others;
  for (std::size_t img = 0; img < preimages.size() && others.size() < 2; ++img) {
    if (img != shared) others.push_back(preimages[img].front());
  }
  if (others.size() < 2) throw InternalInvariant("rank-3 case 2: restriction has < 3 lines");

  std::vector<std::vector<std::size_t>> candidates{{0, others[0], others[1], i3},
                                                   {0, others[0], others[1], i4}};
  for (auto& c : candidates) std::sort(c.begin(), c.end());
  std::sort(candidates.begin(), candidates.end());
  for (const auto& c : candidates) {
    if (is_generic_circuit(a, c)) return c;
  }
  throw InternalInvariant("rank-3 case 2: neither candidate quadruple is a circuit");
}

std::vector<std::size_t> proof_circuit(const Arrangement& a) {
  const std::size_t rank = a.dim();
  const std::size_t n = a.size();
  if (n < rank + 1) throw InternalInvariant("irreducible arrangement with too few hyperplanes");
  if (n == rank + 1) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    return checked(a, std::move(all), "base case");
  }

  const Arrangement del = deletion(a, 0);
  if (is_irreducible(del)) {
    auto sub = proof_circuit(del);
    for (auto& i : sub) ++i;
    return sub;
  }

  const Restriction res = restriction(a, 0);
  if (!is_irreducible(res.arrangement))
    throw InternalInvariant("neither deletion nor restriction is irreducible");
  if (rank == 3) return rank3_case_analysis(a, res);

  std::vector<std::size_t> smallest_preimage(res.arrangement.size(), n);
  for (std::size_t i = n; i-- > 1;) smallest_preimage[*res.index_map[i]] = i;
  std::vector<std::size_t> lifted{0};
  for (auto j : proof_circuit(res.arrangement)) lifted.push_back(smallest_preimage[j]);
  return checked(a, std::move(lifted), "lift from restriction");
}

}  // namespace

GenericCircuit find_generic_circuit(const Arrangement& a) {
  require_irreducible_rank3(a);
  return {proof_circuit(a)};
}

GenericCircuit find_generic_circuit_brute_force(const Arrangement& a) {
  require_irreducible_rank3(a);
  const std::size_t n = a.size();
  const std::size_t size = a.dim() + 1;

  std::vector<char> triple_ok(n * n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const std::array<std::size_t, 3> t{i, j, k};
        triple_ok[(i * n + j) * n + k] = a.rank_of(t) == 3;
      }
  auto subset_ok = [&](const std::vector<std::size_t>& s) {
    for (std::size_t x = 0; x < s.size(); ++x)
      for (std::size_t y = x + 1; y < s.size(); ++y)
        for (std::size_t z = y + 1; z < s.size(); ++z)
          if (!triple_ok[(s[x] * n + s[y]) * n + s[z]]) return false;
    return true;
  };

  std::vector<std::size_t> s(size);
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    if (subset_ok(s)) return {s};
    // Next combination in lexicographic order.
    std::size_t i = size;
    while (i > 0 && s[i - 1] == n - size + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < size; ++j) s[j] = s[j - 1] + 1;
  }
  throw InternalInvariant("no generic circuit in an irreducible arrangement");
}

CircuitGap circuit_is_nonfree_check(std::size_t rank) {
  if (rank < 3) throw std::invalid_argument("circuit check needs rank >= 3");
  CircuitGap g;
  g.lmp2 = binomial(rank + 1, 2);
  const Rational ratio = make_rational(Integer(static_cast<unsigned long>(rank + 1)),
                                       Integer(static_cast<unsigned long>(rank)));
  g.gmp2_bound = Rational(binomial(rank, 2)) * ratio * ratio;
  g.gap = Rational(g.lmp2) - g.gmp2_bound;
  return g;
}

// ---- certificates ---------------------------------------------------------

NonFreenessCertificate::NonFreenessCertificate(Integer lmp2_lower, bool lmp2_exact,
                                               Integer gmp2_upper, std::size_t rank,
                                               Multiplicity multiplicity,
                                               std::vector<std::size_t> scope)
    : lmp2_lower_(std::move(lmp2_lower)),
      lmp2_exact_(lmp2_exact),
      gmp2_upper_(std::move(gmp2_upper)),
      rank_(rank),
      multiplicity_(std::move(multiplicity)),
      scope_(std::move(scope)) {
  if (!(lmp2_lower_ > gmp2_upper_))
    throw InternalInvariant("certificate requires LMP2 " + lmp2_lower_.get_str() +
                            " > GMP2 bound " + gmp2_upper_.get_str());
  for (auto i : scope_)
    if (i >= multiplicity_.size()) throw std::invalid_argument("certificate scope out of range");
}

Integer NonFreenessCertificate::total_multiplicity() const {
  Integer t = 0;
  for (auto i : scope_) t += multiplicity_[i];
  return t;
}

std::optional<NonFreenessCertificate> nonfree_by_lmp_gmp(const Arrangement& a,
                                                          const Multiplicity& m) {
  const Integer local = lmp2(a, m);
  const Integer bound = gmp2_max(a.rank(), Integer(m.total()));
  if (!(local > bound)) return std::nullopt;
  std::vector<std::size_t> scope(a.size());
  std::iota(scope.begin(), scope.end(), 0);
  NonFreenessCertificate cert(local, true, bound, a.rank(), m, std::move(scope));
  if (!audit_certificate(a, cert)) throw InternalInvariant("certificate failed its audit");
  return cert;
}

bool audit_certificate(const Arrangement& a, const NonFreenessCertificate& cert) {
  if (cert.multiplicity().size() != a.size()) return false;
  std::vector<Hyperplane> hs;
  std::vector<unsigned> mult;
  for (auto i : cert.scope()) {
    if (i >= a.size()) return false;
    hs.push_back(a[i]);
    mult.push_back(cert.multiplicity()[i]);
  }
  const Arrangement sub(a.dim(), std::move(hs));
  const Multiplicity m(std::move(mult));

  const std::size_t rank = essentialize(sub).arrangement.dim();
  if (rank != cert.rank()) return false;

  // Balanced tuple, e2 summed pairwise.
  unsigned long total = 0;
  for (auto v : m.values()) total += v;
  Integer bound = 0;
  if (rank > 0) {
    std::vector<Integer> parts(rank, Integer(total / rank));
    for (std::size_t i = 0; i < total % rank; ++i) parts[i] += 1;
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = i + 1; j < rank; ++j) bound += parts[i] * parts[j];
  }
  if (bound != cert.gmp2_upper()) return false;

  // Rank-2 flats keyed by the reduced row echelon form of their span.
  std::map<std::vector<Rational>, std::vector<std::size_t>> flats;
  for (std::size_t i = 0; i < sub.size(); ++i)
    for (std::size_t j = i + 1; j < sub.size(); ++j) {
      const std::array<std::size_t, 2> pair{i, j};
      const Echelon e = rref(sub.normal_matrix(pair));
      if (e.pivots.size() != 2) continue;
      std::vector<Rational> key(e.reduced.row(0));
      const Vector second = e.reduced.row(1);
      key.insert(key.end(), second.begin(), second.end());
      auto& members = flats[key];
      for (auto k : pair)
        if (std::find(members.begin(), members.end(), k) == members.end()) members.push_back(k);
    }
  Integer local = 0;
  for (auto& [key, members] : flats) {
    std::sort(members.begin(), members.end());
    Flat2 flat;
    flat.members = members;
    flat.span_basis[0] = Vector(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(a.dim()));
    flat.span_basis[1] = Vector(key.begin() + static_cast<std::ptrdiff_t>(a.dim()), key.end());
    const ExponentPair e = rank2_exponents_by_dimension(localization(sub, m, flat));
    local += Integer(e.d1) * Integer(e.d2);
  }
  if (cert.lmp2_exact() ? local != cert.lmp2_lower() : local < cert.lmp2_lower()) return false;
  return local > bound;
}

// ---- non-free multiplicity family -----------------------------------------

Multiplicity circuit_multiplicity(std::size_t n, std::span<const std::size_t> circuit, unsigned k) {
  std::vector<unsigned> v(n, 1);
  for (auto i : circuit) v.at(i) = k;
  return Multiplicity(std::move(v));
}

bool circuit_bound_exceeds(std::size_t rank, std::size_t n, unsigned long k) {
  const Integer kk(k);
  const Integer lhs = binomial(rank + 1, 2) * kk * kk;
  const Integer total = (kk - 1) * Integer(static_cast<unsigned long>(rank + 1)) +
                        Integer(static_cast<unsigned long>(n));
  return lhs > gmp2_max(rank, total);
}

unsigned long threshold_k0(std::size_t rank, std::size_t n) {
  if (rank < 3) throw std::invalid_argument("threshold needs rank >= 3");
  for (unsigned long k = 1; k < 100'000'000ul; ++k) {
    if (circuit_bound_exceeds(rank, n, k)) return k;
  }
  throw InternalInvariant("no threshold found");
}

NonFreeFamily nonfree_multiplicity_family(const Arrangement& a) {
  require_irreducible_rank3(a);
  NonFreeFamily f;
  f.circuit = find_generic_circuit(a);
  f.k0 = threshold_k0(a.dim(), a.size());
  f.multiplicity = circuit_multiplicity(a.size(), f.circuit.indices, static_cast<unsigned>(f.k0));
  return f;
}

// ---- verdict --------------------------------------------------------------

Verdict decide_totally_free(const Arrangement& a) {
  Decomposition d = decompose(a);
  for (std::size_t pos = 0; pos < d.factors.size(); ++pos) {
    const Factor& factor = d.factors[pos];
    if (factor.rank() < 3) continue;

    const NonFreeFamily family = nonfree_multiplicity_family(factor.arrangement);
    std::vector<std::size_t> circuit;
    for (auto i : family.circuit.indices) circuit.push_back(factor.indices[i]);
    const Multiplicity full =
        circuit_multiplicity(a.size(), circuit, static_cast<unsigned>(family.k0));

    NonFreenessCertificate cert(lmp2(factor.arrangement, family.multiplicity), true,
                                gmp2_max(factor.rank(), Integer(family.multiplicity.total())),
                                factor.rank(), full, factor.indices);
    cert.circuit_indices = circuit;
    cert.k0 = family.k0;
    if (!audit_certificate(a, cert)) throw InternalInvariant("certificate failed its audit");

    NotTotallyFreeWitness w{std::move(d), pos, GenericCircuit{circuit}, family.circuit,
                            family.k0, std::move(cert)};
    return w;
  }
  return TotallyFree{std::move(d)};
}

}  // namespace tfree
