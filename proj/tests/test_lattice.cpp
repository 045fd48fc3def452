#include <gtest/gtest.h>

#include <random>

#include "jumpkit/lattice.hpp"
#include "support/oracles.hpp"

using namespace jumpkit;

namespace {

/// Every factorization of orders up to 16 into cyclic factors >= 2, in nondecreasing order.
std::vector<FiniteAbelianGroup> groups_up_to(std::int64_t max_order) {
  std::vector<FiniteAbelianGroup> out{FiniteAbelianGroup()};
  std::vector<std::vector<std::int64_t>> frontier{{}};
  while (!frontier.empty()) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& f : frontier) {
      std::int64_t order = 1;
      for (auto m : f) order *= m;
      for (std::int64_t m = f.empty() ? 2 : f.back(); order * m <= max_order; ++m) {
        auto g = f;
        g.push_back(m);
        out.emplace_back(g);
        next.push_back(g);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

GLattice random_lattice(const FiniteAbelianGroup& g, std::size_t rank, std::mt19937_64& rng) {
  // direct sum of sign characters (only meaningful on even factors) and regular pieces
  std::vector<GLattice> parts;
  std::size_t have = 0;
  while (have < rank) {
    const auto order = static_cast<std::size_t>(g.order());
    if (order <= rank - have && rng() % 3 == 0) {
      parts.push_back(regular_representation(g));
      have += order;
      continue;
    }
    std::vector<std::int64_t> values;
    for (auto m : g.factors) values.push_back(m % 2 == 0 && rng() % 2 ? -1 : 1);
    parts.push_back(rank_one_lattice(g, values));
    ++have;
  }
  return direct_sum(parts);
}

}  // namespace

TEST(Validate, RegularRepresentationOfKleinFour) {
  const GLattice reg = regular_representation(FiniteAbelianGroup({2, 2}));
  EXPECT_EQ(reg.rank, 4u);
  EXPECT_TRUE(validate(reg));
}

TEST(Validate, SignCharacter) {
  const GLattice v_sigma = rank_one_lattice(FiniteAbelianGroup({2, 2}), {-1, 1});
  EXPECT_TRUE(validate(v_sigma));
}

TEST(Validate, NonCommutingGeneratorsRejected) {
  GLattice lat{FiniteAbelianGroup({2, 2}), 2, {IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{1, 0}, {0, -1}}}};
  EXPECT_FALSE(validate(lat));
}

TEST(Validate, WrongOrderOrSingularRejected) {
  EXPECT_FALSE(validate(GLattice{FiniteAbelianGroup({2}), 1, {IntMatrix{{2}}}}));
  EXPECT_FALSE(validate(GLattice{FiniteAbelianGroup({3}), 2, {IntMatrix{{0, 1}, {1, 0}}}}));
  EXPECT_FALSE(validate(GLattice{FiniteAbelianGroup({2}), 2, {IntMatrix{{1, 0}, {0, 0}}}}));
  EXPECT_FALSE(validate(GLattice{FiniteAbelianGroup({2}), 2, {}}));
}

TEST(Validate, RegularRepresentationsUpToOrderSixteen) {
  const auto groups = groups_up_to(16);
  EXPECT_GT(groups.size(), 20u);
  for (const auto& g : groups) EXPECT_TRUE(validate(regular_representation(g))) << g.order();
}

TEST(Determinant, SmallCases) {
  EXPECT_EQ(determinant(IntMatrix{{2, 1}, {7, 4}}), 1);
  EXPECT_EQ(determinant(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(determinant(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}), 0);
  EXPECT_EQ(determinant(IntMatrix{{0, 0, 2}, {0, 3, 0}, {5, 0, 0}}), -30);
}

TEST(IntegerSmithForm, MatchesDeterminantalDivisors) {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    IntMatrix m(rows, cols, 0);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<int>(rng() % 13) - 6;
    EXPECT_EQ(integer_smith_form(m), oracle::integer_invariant_factors(m));
  }
}

TEST(IsIsogeny, KleinFourMap) {
  const LatticeMap f = klein_four_isogeny();
  EXPECT_TRUE(is_equivariant(f));
  EXPECT_TRUE(validate(f.source));
  EXPECT_TRUE(validate(f.target));
  EXPECT_EQ(is_isogeny(f), (IsogenyResult{true, 16}));
  EXPECT_EQ(integer_smith_form(f.matrix), (std::vector<Integer>{1, 2, 2, 4}));
}

TEST(IsIsogeny, KleinFourImagesAreTheDisplayedSums) {
  // (1,0,0,0) -> e + s + t + st, (0,1,0,0) -> e - s + t - st, ...
  const LatticeMap f = klein_four_isogeny();
  const std::vector<std::vector<int>> images{{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t r = 0; r < 4; ++r) EXPECT_EQ(f.matrix(r, c), images[c][r]);
}

TEST(IsIsogeny, IdentityAndZero) {
  const GLattice reg = regular_representation(FiniteAbelianGroup({3}));
  EXPECT_EQ(is_isogeny(LatticeMap{reg, reg, int_identity(3)}), (IsogenyResult{true, 1}));
  EXPECT_EQ(is_isogeny(LatticeMap{reg, reg, IntMatrix(3, 3, 0)}), (IsogenyResult{false, 0}));
}

TEST(IsIsogeny, NonEquivariantRejected) {
  const GLattice reg = regular_representation(FiniteAbelianGroup({2, 2}));
  IntMatrix m = int_identity(4);
  m(0, 1) = 1;
  try {
    (void)is_isogeny(LatticeMap{reg, reg, m});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotEquivariant);
  }
}

TEST(IsIsogeny, RandomEquivariantMapsUpToRankSix) {
  std::mt19937_64 rng(161803);
  const std::vector<FiniteAbelianGroup> groups{FiniteAbelianGroup({2}), FiniteAbelianGroup({2, 2}),
                                               FiniteAbelianGroup({3}), FiniteAbelianGroup({4}),
                                               FiniteAbelianGroup({2, 3})};
  int isogenies = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto& g = groups[rng() % groups.size()];
    const std::size_t rank = 1 + rng() % 6;
    const GLattice source = random_lattice(g, rank, rng), target = random_lattice(g, rank, rng);
    ASSERT_TRUE(validate(source));
    ASSERT_TRUE(validate(target));
    IntMatrix m(rank, rank, 0);
    for (std::size_t r = 0; r < rank; ++r)
      for (std::size_t c = 0; c < rank; ++c) m(r, c) = static_cast<int>(rng() % 7) - 3;
    const LatticeMap f{source, target, oracle::reynolds(source, target, m)};
    ASSERT_TRUE(is_equivariant(f));
    const IsogenyResult result = is_isogeny(f);
    const Integer det = boost::multiprecision::abs(determinant(f.matrix));
    EXPECT_EQ(result.isogeny, det != 0);
    EXPECT_EQ(result.cokernel_order, det);
    if (det != 0) {
      Integer product = 1;
      for (const auto& d : oracle::integer_invariant_factors(f.matrix)) product *= d;
      EXPECT_EQ(product, det);
      ++isogenies;
    }
  }
  EXPECT_GT(isogenies, 20);
}

TEST(NonInvariance, KleinFourMultisets) {
  const NonInvarianceReport r = jumps_non_invariance_demo();
  const Rational h = make_rational(1, 2);
  EXPECT_EQ(r.left, (JumpMultiset{0, make_rational(1, 4), h, make_rational(3, 4)}));
  EXPECT_EQ(r.right, (JumpMultiset{0, h, h, h}));
  EXPECT_TRUE(r.differ);
  EXPECT_EQ(r.connecting, (IsogenyResult{true, 16}));
}

TEST(NonInvariance, ConductorsCoincide) {
  const NonInvarianceReport r = jumps_non_invariance_demo();
  EXPECT_EQ(tame_conductor(r.left), make_rational(3, 2));
  EXPECT_EQ(tame_conductor(r.right), make_rational(3, 2));
}

TEST(NonInvariance, EqualSpecsDoNotDiffer) {
  const NonInvarianceReport r =
      compare_jumps_across_isogeny(TorusSpec::res(4), TorusSpec::res(4), klein_four_isogeny());
  EXPECT_FALSE(r.differ);
}
