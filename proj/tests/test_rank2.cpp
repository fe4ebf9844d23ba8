#include <gtest/gtest.h>

#include <array>
#include <iostream>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tfree/error.hpp"
#include "tfree/families.hpp"
#include "tfree/rank2.hpp"

using namespace tfree;
using tfree::test::arr;

namespace {

const std::vector<std::array<long, 2>> kLines{{1, 0}, {0, 1}, {1, -1}, {1, 1}, {1, -2}, {2, 3}};

Arrangement lines(std::size_t n) {
  std::vector<Hyperplane> hs;
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<Integer> v{kLines[i][0], kLines[i][1]};
    hs.push_back(Hyperplane::from_coefficients(std::span<const Integer>(v)));
  }
  return Arrangement(2, hs);
}

std::vector<std::array<long, 2>> line_coeffs(std::size_t n) {
  return {kLines.begin(), kLines.begin() + static_cast<long>(n)};
}

MultiArrangement ma(const Arrangement& a, std::vector<unsigned> m) { return {a, Multiplicity(std::move(m))}; }

// Every multiplicity vector with entries 1..max for n <= 4; a seeded sample beyond.
std::vector<std::vector<unsigned>> sweep(std::size_t n, unsigned max, std::mt19937& rng) {
  std::vector<std::vector<unsigned>> out;
  if (n <= 4) {
    std::vector<unsigned> m(n, 1);
    while (true) {
      out.push_back(m);
      std::size_t i = 0;
      while (i < n && m[i] == max) m[i++] = 1;
      if (i == n) break;
      ++m[i];
    }
  } else {
    std::uniform_int_distribution<unsigned> d(1, max);
    for (int t = 0; t < 60; ++t) {
      std::vector<unsigned> m(n);
      for (auto& v : m) v = d(rng);
      out.push_back(m);
    }
  }
  return out;
}

}  // namespace

TEST(Rank2Exponents, Examples) {
  EXPECT_EQ(rank2_exponents(ma(lines(2), {3, 5})), (ExponentPair{3, 5}));
  EXPECT_EQ(rank2_exponents(ma(lines(3), {1, 1, 1})), (ExponentPair{1, 2}));
  EXPECT_EQ(rank2_exponents(ma(lines(3), {2, 2, 2})), (ExponentPair{3, 3}));
  EXPECT_EQ(rank2_exponents(ma(lines(1), {4})), (ExponentPair{0, 4}));
  EXPECT_THROW(rank2_exponents(ma(boolean_arrangement(3), {1, 1, 1})), std::invalid_argument);
}

TEST(Rank2Exponents, ExamplesAgainstExhaustiveDegreeScan) {
  EXPECT_EQ(oracle::rank2_d1_exhaustive(line_coeffs(3), {1, 1, 1}), 1u);
  EXPECT_EQ(oracle::rank2_d1_exhaustive(line_coeffs(3), {2, 2, 2}), 3u);
  EXPECT_EQ(oracle::rank2_d1_exhaustive(line_coeffs(2), {3, 5}), 3u);
}

TEST(Rank2Basis, Examples) {
  const HomPoly x = HomPoly::variable(2, 0), y = HomPoly::variable(2, 1);
  {
    const auto [t1, t2] = rank2_basis(ma(lines(2), {1, 1}));
    EXPECT_EQ(t1.degree(), 1);
    EXPECT_EQ(t2.degree(), 1);
    const std::vector<Derivation> b{t1, t2};
    EXPECT_TRUE(saito_verify(lines(2), Multiplicity::ones(2), b));
  }
  {
    const auto [t1, t2] = rank2_basis(ma(lines(3), {1, 1, 1}));
    EXPECT_EQ(t1.degree(), 1);
    EXPECT_EQ(t2.degree(), 2);
    const std::vector<Derivation> b{t1, t2};
    const SaitoReport s = saito_check(lines(3), Multiplicity::ones(3), b);
    ASSERT_TRUE(s.verified());
    EXPECT_EQ(s.expected, x * y * (x - y));
  }
  {
    const Multiplicity m({2, 2, 2});
    const auto [t1, t2] = rank2_basis({lines(3), m});
    EXPECT_EQ(t1.degree(), 3);
    EXPECT_EQ(t2.degree(), 3);
    const std::vector<Derivation> b{t1, t2};
    const SaitoReport s = saito_check(lines(3), m, b);
    ASSERT_TRUE(s.verified());
    EXPECT_EQ(s.determinant, *s.constant * (x * y * (x - y)).pow(2));
  }
}

TEST(SaitoVerify, Examples) {
  const HomPoly x = HomPoly::variable(2, 0), y = HomPoly::variable(2, 1), z = HomPoly(2);
  const Arrangement xy = lines(2);
  const std::vector<Derivation> good{{{x, z}}, {{z, y}}};
  EXPECT_TRUE(saito_verify(xy, Multiplicity::ones(2), good));
  const std::vector<Derivation> twice{{{x, z}}, {{x, z}}};
  const SaitoReport s = saito_check(xy, Multiplicity::ones(2), twice);
  EXPECT_FALSE(s.verified());
  EXPECT_TRUE(s.determinant.is_zero());

  const std::vector<Derivation> euler_pair{Derivation::euler(2), {{x * x, y * y}}};
  const SaitoReport t = saito_check(lines(3), Multiplicity::ones(3), euler_pair);
  EXPECT_TRUE(t.verified());
  EXPECT_EQ(t.determinant, -(x * y * (x - y)));

  // Members with the right determinant degree but one condition broken.
  const std::vector<Derivation> nonmember{{{x, z}}, {{z, y}}};
  EXPECT_FALSE(saito_verify(xy, Multiplicity({2, 1}), nonmember));
  EXPECT_THROW(saito_verify(xy, Multiplicity::ones(2), std::vector<Derivation>{good[0]}), std::invalid_argument);
}

TEST(Rank2, SweepBasisSaitoAndDegreeSum) {
  std::mt19937 rng(99);
  for (std::size_t n = 2; n <= 6; ++n) {
    const Arrangement a = lines(n);
    for (const auto& mv : sweep(n, 4, rng)) {
      const Multiplicity m(mv);
      const MultiArrangement x(a, m);
      const ExponentPair e = rank2_exponents(x);
      EXPECT_LE(e.d1, e.d2);
      EXPECT_EQ(e.d1 + e.d2, m.total());
      EXPECT_EQ(rank2_exponents_by_dimension(x), e);
      const auto [t1, t2] = rank2_basis(x);
      EXPECT_TRUE(is_member(t1, a, m));
      EXPECT_TRUE(is_member(t2, a, m));
      EXPECT_EQ(static_cast<unsigned long>(t1.degree()), e.d1);
      EXPECT_EQ(static_cast<unsigned long>(t2.degree()), e.d2);
      const std::vector<Derivation> b{t1, t2};
      EXPECT_TRUE(saito_verify(a, m, b));
    }
  }
}

TEST(Rank2, SmallerExponentMatchesIndependentExpansion) {
  std::mt19937 rng(5);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& mv : sweep(n, 3, rng)) {
      if (n <= 4 && rng() % 3) continue;  // thin out the exhaustive part
      EXPECT_EQ(rank2_exponents(ma(lines(n), mv)).d1, oracle::rank2_d1_exhaustive(line_coeffs(n), mv));
    }
  }
}

TEST(Rank2, MonotonicityObservation) {
  // Plausibility check only: a violation is logged, not failed.
  std::mt19937 rng(17);
  std::size_t checked = 0, violations = 0;
  for (std::size_t n = 2; n <= 5; ++n) {
    const Arrangement a = lines(n);
    for (const auto& mv : sweep(n, 3, rng)) {
      const ExponentPair before = rank2_exponents({a, Multiplicity(mv)});
      for (std::size_t i = 0; i < n; ++i) {
        auto up = mv;
        ++up[i];
        const ExponentPair after = rank2_exponents({a, Multiplicity(up)});
        EXPECT_EQ(after.d1 + after.d2, before.d1 + before.d2 + 1);
        ++checked;
        if (after.d1 < before.d1 || after.d1 > before.d1 + 1) ++violations;
      }
    }
  }
  if (violations) std::cout << "monotonicity: " << violations << " of " << checked << " steps violate\n";
  RecordProperty("monotonicity_violations", static_cast<int>(violations));
}

TEST(ExponentsTotallyFree, Examples) {
  EXPECT_EQ(exponents_totally_free(boolean_arrangement(3), Multiplicity({4, 1, 2})),
            (ExponentMultiset{1, 2, 4}));
  const Arrangement p = product(test::a2_triple(), arr(1, {{1}}));
  EXPECT_EQ(exponents_totally_free(p, Multiplicity::ones(4)), (ExponentMultiset{1, 1, 2}));
  EXPECT_THROW(exponents_totally_free(braid_arrangement(4), Multiplicity::ones(6)), NotTotallyFree);
  EXPECT_EQ(exponents_totally_free(Arrangement(2), Multiplicity()), (ExponentMultiset{0, 0}));
}

TEST(ExponentsTotallyFree, UnitMultiplicitySumsToSize) {
  const std::vector<Arrangement> tf{boolean_arrangement(4), braid_arrangement(3),
                                    product(test::a2_triple(), test::a2_triple()),
                                    product(lines(5), product(Arrangement(1), boolean_arrangement(2)))};
  for (const auto& a : tf) {
    const auto e = exponents_totally_free(a, Multiplicity::ones(a.size()));
    ASSERT_EQ(e.size(), a.dim());
    unsigned long sum = 0;
    for (auto d : e) sum += d;
    EXPECT_EQ(sum, a.size());
    EXPECT_TRUE(std::is_sorted(e.begin(), e.end()));
    EXPECT_EQ(std::count(e.begin(), e.end(), 0ul), static_cast<long>(a.dim() - a.rank()));
  }
}
