#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tfree/certificates.hpp"
#include "tfree/error.hpp"
#include "tfree/families.hpp"

using namespace tfree;
using tfree::test::arr;

namespace {

Integer gmp2(std::vector<unsigned long> e) { return gmp2_from_exponents(e); }

Arrangement braid_essential(std::size_t l) { return essentialize(braid_arrangement(l)).arrangement; }

// x1-x2, x3-x4, x1-x3, x2-x4 in the order braid_arrangement(4) lists them.
const std::vector<std::size_t> kBraid4Circuit{0, 5, 1, 4};

bool every_triple_rank3(const Arrangement& a, const std::vector<std::size_t>& idx) {
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      for (std::size_t k = j + 1; k < idx.size(); ++k) {
        const std::vector<std::size_t> t{idx[i], idx[j], idx[k]};
        if (rank(a.normal_matrix(t)) != 3) return false;
      }
  return true;
}

}  // namespace

TEST(Lmp2, Examples) {
  EXPECT_EQ(lmp2(braid_arrangement(4), Multiplicity::ones(6)), 11);
  EXPECT_EQ(lmp2(boolean_arrangement(3), Multiplicity({1, 2, 3})), 11);
  EXPECT_EQ(lmp2(test::a2_triple(), Multiplicity({2, 2, 2})), 9);
  EXPECT_EQ(lmp2(Arrangement(3), Multiplicity()), 0);
}

TEST(Gmp2, Examples) {
  EXPECT_EQ(gmp2({1, 2, 3}), 11);
  EXPECT_EQ(gmp2({5, 0, 0, 0}), 0);
  EXPECT_EQ(gmp2({3, 3}), 9);
  EXPECT_EQ(gmp2_max(3, 3), 3);
  EXPECT_EQ(gmp2_max(2, 5), 6);
  EXPECT_EQ(gmp2_max(3, 38), 481);
  EXPECT_EQ(gmp2_max(3, 38), oracle::gmp2_max_exhaustive(3, 38));
  EXPECT_EQ(gmp2_real_bound(3, 6), Rational(12));
  EXPECT_EQ(gmp2_real_bound(3, 38), make_rational(3 * 38 * 38, 9));
}

TEST(Gmp2Max, MatchesExhaustiveSearch) {
  for (std::size_t l = 1; l <= 5; ++l)
    for (long t = 0; t <= 25; ++t) {
      EXPECT_EQ(gmp2_max(l, t), oracle::gmp2_max_exhaustive(l, t)) << l << " " << t;
      EXPECT_LE(Rational(gmp2_max(l, t)), gmp2_real_bound(l, t));
    }
}

TEST(NonfreeByLmpGmp, Examples) {
  const Arrangement b4 = braid_arrangement(4);
  EXPECT_FALSE(nonfree_by_lmp_gmp(b4, Multiplicity::ones(6)).has_value());
  EXPECT_FALSE(nonfree_by_lmp_gmp(test::a2_triple(), Multiplicity({2, 5, 1})).has_value());

  const Multiplicity m = circuit_multiplicity(6, kBraid4Circuit, 9);
  EXPECT_EQ(m.total(), 38u);
  const auto cert = nonfree_by_lmp_gmp(b4, m);
  ASSERT_TRUE(cert.has_value());
  EXPECT_GE(cert->lmp2_lower(), 486);
  EXPECT_EQ(cert->gmp2_upper(), 481);
  EXPECT_TRUE(cert->lmp2_exact());
  EXPECT_EQ(cert->total_multiplicity(), 38);
  EXPECT_TRUE(audit_certificate(b4, *cert));
}

TEST(NonfreeByLmpGmp, NeverFiresOnRankTwo) {
  std::mt19937 rng(3);
  const Arrangement a = arr(2, {{1, 0}, {0, 1}, {1, -1}, {1, 1}, {1, 2}});
  for (int t = 0; t < 40; ++t) {
    std::vector<unsigned> m(5);
    for (auto& v : m) v = 1 + rng() % 6;
    EXPECT_FALSE(nonfree_by_lmp_gmp(a, Multiplicity(m)).has_value());
  }
}

TEST(Certificate, RefusesToExistWhenInequalityFails) {
  EXPECT_THROW(NonFreenessCertificate(11, true, 12, 3, Multiplicity::ones(6), {0, 1, 2, 3, 4, 5}),
               InternalInvariant);
}

TEST(GenericCircuit, Braid4Example) {
  EXPECT_TRUE(every_triple_rank3(braid_arrangement(4), kBraid4Circuit));
  EXPECT_TRUE(is_generic_circuit(braid_essential(4), kBraid4Circuit));
}

TEST(GenericCircuit, BothAlgorithmsOnBraid) {
  for (std::size_t l = 4; l <= 6; ++l) {
    const Arrangement a = braid_essential(l);
    const std::size_t r = l - 1;
    for (const GenericCircuit& c : {find_generic_circuit(a), find_generic_circuit_brute_force(a)}) {
      EXPECT_EQ(c.indices.size(), r + 1);
      EXPECT_TRUE(every_triple_rank3(a, c.indices));
      EXPECT_TRUE(is_generic_circuit(a, c.indices));
    }
  }
}

TEST(GenericCircuit, BothAlgorithmsOnGenericAndMixed) {
  std::vector<Arrangement> inputs{generic_arrangement(6, 3, 1), generic_arrangement(7, 4, 2),
                                  generic_arrangement(4, 3, 3),
                                  arr(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 1, 1}}),
                                  arr(3, {{1, 0, 0}, {0, 1, 0}, {1, -1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 0, 1}})};
  for (const auto& a : inputs) {
    ASSERT_TRUE(is_irreducible(a));
    for (const GenericCircuit& c : {find_generic_circuit(a), find_generic_circuit_brute_force(a)}) {
      EXPECT_EQ(c.indices.size(), a.rank() + 1);
      EXPECT_TRUE(every_triple_rank3(a, c.indices));
    }
  }
}

TEST(GenericCircuit, RejectsReducibleOrLowRank) {
  EXPECT_THROW(find_generic_circuit(boolean_arrangement(3)), ReducibleInput);
  EXPECT_THROW(find_generic_circuit_brute_force(boolean_arrangement(3)), ReducibleInput);
  EXPECT_THROW(find_generic_circuit(test::a2_triple()), ReducibleInput);
}

TEST(CircuitIsNonfreeCheck, ClosedForms) {
  const CircuitGap g3 = circuit_is_nonfree_check(3);
  EXPECT_EQ(g3.lmp2, 6);
  EXPECT_EQ(g3.gmp2_bound, make_rational(16, 3));
  EXPECT_EQ(g3.gap, make_rational(2, 3));
  const CircuitGap g4 = circuit_is_nonfree_check(4);
  EXPECT_EQ(g4.lmp2, 10);
  EXPECT_EQ(g4.gmp2_bound, make_rational(75, 8));
  EXPECT_EQ(g4.gap, make_rational(5, 8));
  const CircuitGap g5 = circuit_is_nonfree_check(5);
  EXPECT_EQ(g5.lmp2, 15);
  EXPECT_EQ(g5.gmp2_bound, make_rational(72, 5));
  EXPECT_EQ(g5.gap, make_rational(3, 5));
  for (unsigned l = 3; l <= 12; ++l) {
    const CircuitGap g = circuit_is_nonfree_check(l);
    EXPECT_EQ(g.gap, make_rational(l + 1, 2 * l));
    EXPECT_EQ(Rational(g.lmp2) - g.gmp2_bound, g.gap);
  }
  EXPECT_THROW(circuit_is_nonfree_check(2), std::invalid_argument);
}

TEST(Threshold, BothSidesAroundK0) {
  // braid-S4: rank 3, 6 hyperplanes
  EXPECT_EQ(threshold_k0(3, 6), 9u);
  EXPECT_EQ(gmp2_max(3, 38), 481);
  EXPECT_EQ(gmp2_max(3, 34), 385);
  EXPECT_TRUE(circuit_bound_exceeds(3, 6, 9));
  EXPECT_FALSE(circuit_bound_exceeds(3, 6, 8));
  // braid-S5: rank 4, 10 hyperplanes
  EXPECT_EQ(threshold_k0(4, 10), 31u);
  EXPECT_EQ(gmp2_max(4, 160), 9600);
  EXPECT_EQ(gmp2_max(4, 155), 9009);
  EXPECT_TRUE(circuit_bound_exceeds(4, 10, 31));
  EXPECT_FALSE(circuit_bound_exceeds(4, 10, 30));
  EXPECT_THROW(threshold_k0(2, 3), std::invalid_argument);
}

TEST(Threshold, TailHoldsWellPastK0) {
  for (std::size_t l = 3; l <= 6; ++l)
    for (std::size_t n = l + 1; n <= 20; ++n) {
      const unsigned long k0 = threshold_k0(l, n);
      for (unsigned long k = k0; k <= k0 + 200; ++k) EXPECT_TRUE(circuit_bound_exceeds(l, n, k));
    }
}

TEST(NonfreeFamily, Braid4) {
  const Arrangement a = braid_essential(4);
  const NonFreeFamily f = nonfree_multiplicity_family(a);
  EXPECT_EQ(f.k0, 9u);
  EXPECT_TRUE(is_generic_circuit(a, f.circuit.indices));
  EXPECT_EQ(f.multiplicity.total(), 38u);
  for (unsigned long k : {f.k0, f.k0 + 1, f.k0 + 5}) {
    const Multiplicity m = circuit_multiplicity(a.size(), f.circuit.indices, static_cast<unsigned>(k));
    const auto cert = nonfree_by_lmp_gmp(a, m);
    ASSERT_TRUE(cert.has_value()) << k;
    EXPECT_GE(cert->lmp2_lower(), Integer(6 * k * k));
    EXPECT_TRUE(audit_certificate(a, *cert));
  }
  EXPECT_THROW(nonfree_multiplicity_family(test::a2_triple()), ReducibleInput);
}

TEST(DecideTotallyFree, Examples) {
  const Arrangement p = product(product(test::a2_triple(), arr(1, {{1}})), arr(1, {{1}}));
  const Verdict v = decide_totally_free(p);
  ASSERT_TRUE(is_totally_free(v));
  const auto& d = std::get<TotallyFree>(v).decomposition;
  ASSERT_EQ(d.factors.size(), 3u);
  EXPECT_EQ(d.factors[0].rank(), 2u);
  EXPECT_EQ(d.factors[1].rank(), 1u);
  EXPECT_EQ(d.factors[2].rank(), 1u);

  const Verdict b = decide_totally_free(braid_arrangement(4));
  ASSERT_FALSE(is_totally_free(b));
  const auto& w = std::get<NotTotallyFreeWitness>(b);
  EXPECT_EQ(w.k0, 9u);
  EXPECT_EQ(w.certificate.k0, 9u);
  EXPECT_EQ(w.certificate.gmp2_upper(), 481);
  EXPECT_GT(w.certificate.lmp2_lower(), w.certificate.gmp2_upper());
  EXPECT_TRUE(every_triple_rank3(braid_arrangement(4), w.circuit.indices));
  EXPECT_TRUE(audit_certificate(braid_arrangement(4), w.certificate));

  for (std::size_t l : {0u, 1u, 3u}) {
    const Verdict e = decide_totally_free(Arrangement(l));
    ASSERT_TRUE(is_totally_free(e));
    EXPECT_TRUE(std::get<TotallyFree>(e).decomposition.factors.empty());
  }
}

TEST(DecideTotallyFree, Braid5Witness) {
  const Verdict v = decide_totally_free(braid_arrangement(5));
  ASSERT_FALSE(is_totally_free(v));
  const auto& w = std::get<NotTotallyFreeWitness>(v);
  EXPECT_EQ(w.k0, 31u);
  EXPECT_EQ(w.certificate.gmp2_upper(), 9600);
  EXPECT_GE(w.certificate.lmp2_lower(), 9610);
  EXPECT_EQ(w.circuit.indices.size(), 5u);
  EXPECT_TRUE(audit_certificate(braid_arrangement(5), w.certificate));
}

TEST(DecideTotallyFree, FactorScopedCertificateInsideProduct) {
  // braid-S4 times a line: the witness lives on the rank-3 factor.
  const Arrangement a = product(braid_arrangement(4), test::a2_triple());
  const Verdict v = decide_totally_free(a);
  ASSERT_FALSE(is_totally_free(v));
  const auto& w = std::get<NotTotallyFreeWitness>(v);
  EXPECT_EQ(w.factor().rank(), 3u);
  EXPECT_EQ(w.certificate.multiplicity().size(), a.size());
  EXPECT_TRUE(every_triple_rank3(a, w.circuit.indices));
  EXPECT_TRUE(audit_certificate(a, w.certificate));
}
