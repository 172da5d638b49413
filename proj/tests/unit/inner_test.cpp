#include "treelab/errors.hpp"
#include "treelab/liftings.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace treelab;

namespace {

Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

RationalMatrix scalar(const Rational& c) { return RationalMatrix{{c}}; }

// Integer matrix with integer inverse: a product of unit triangular factors.
RationalMatrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-2, 2);
  RationalMatrix lo = RationalMatrix::identity(n), up = RationalMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      lo(i, j) = c(rng);
      up(j, i) = c(rng);
    }
  return lo * up;
}

RationalMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-5, 5);
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = frac(c(rng), static_cast<long>(1 + (i + j) % 2));
  return m;
}

} // namespace

TEST(Cocycle, EmptyWordIsIdentity) {
  const DerivationTable t({scalar(-1)}, {scalar(3)});
  const auto v = cocycle_extend(t, {});
  EXPECT_EQ(v.lambda, scalar(1));
  EXPECT_EQ(v.d, scalar(0));
}

TEST(Cocycle, SquareOfAnInvolution) {
  const DerivationTable t({scalar(-1)}, {scalar(3)});
  const auto v = cocycle_extend(t, {{0, false}, {0, false}});
  EXPECT_EQ(v.lambda, scalar(1));
  EXPECT_EQ(v.d, scalar(-6));
}

TEST(Cocycle, InverseLetters) {
  std::mt19937_64 rng(1);
  const auto l = random_unimodular(2, rng);
  const DerivationTable t({l}, {random_matrix(2, rng)});
  const auto v = cocycle_extend(t, {{0, false}, {0, true}});
  EXPECT_EQ(v.lambda, RationalMatrix::identity(2));
  EXPECT_TRUE(v.d.is_zero());
}

TEST(Cocycle, BracketingIndependence) {
  std::mt19937_64 rng(2);
  const DerivationTable t({random_unimodular(2, rng), random_unimodular(2, rng)},
                          {random_matrix(2, rng), random_matrix(2, rng)});
  std::uniform_int_distribution<int> len(0, 6), bit(0, 1);
  for (int k = 0; k < 100; ++k) {
    GroupWord w;
    const int n = len(rng);
    for (int i = 0; i < n; ++i)
      w.push_back({static_cast<std::size_t>(bit(rng)), bit(rng) == 1});
    // Right fold versus the library's left fold.
    CocycleValue right = t.identity();
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      right = cocycle_combine(t.letter(*it), right);
    const auto left = cocycle_extend(t, w);
    EXPECT_EQ(left.lambda, right.lambda) << word_to_string(w);
    EXPECT_EQ(left.d, right.d) << word_to_string(w);
  }
}

TEST(Cocycle, InconsistencyNamesBothWords) {
  // lambda(a) = 1 with d(a) = 1 assigns different d to a and to the empty
  // word although both have lambda = 1.
  const DerivationTable t({scalar(1)}, {scalar(1)});
  const auto bad = cocycle_consistency(t, {{}, {{0, false}}});
  ASSERT_TRUE(bad);
  EXPECT_TRUE(bad->first.empty());
  EXPECT_EQ(bad->second.size(), 1u);
  const DerivationTable ok({RationalMatrix{{0, 1}, {1, 0}}}, {RationalMatrix{{0, -1}, {1, 0}}});
  EXPECT_FALSE(cocycle_consistency(ok, {{}, {{0, false}, {0, false}}, {{0, true}, {0, false}, {0, true}}, {{0, false}}}));
}

TEST(InnerSolve, ScalarObstruction) {
  const auto r = inner_derivation_solve(DerivationTable({scalar(-1)}, {scalar(2)}));
  EXPECT_FALSE(r.feasible);
  ASSERT_TRUE(r.certificate);
  EXPECT_NE(r.certificate->rhs_value, 0);
}

TEST(InnerSolve, SwapExample) {
  const RationalMatrix l{{0, 1}, {1, 0}}, d{{0, -1}, {1, 0}};
  const auto r = inner_derivation_solve(DerivationTable({l}, {d}));
  ASSERT_TRUE(r.feasible);
  const RationalMatrix a{{1, 0}, {0, 0}};
  EXPECT_EQ(l * a - a * l, d);
  EXPECT_EQ(l * r.particular - r.particular * l, d);
  for (const auto& b : r.basis)
    EXPECT_EQ(l * b, b * l);
  EXPECT_EQ(r.basis.size(), 2u);
}

TEST(InnerSolve, ZeroDerivationGivesCommutant) {
  const RationalMatrix l{{0, 1}, {1, 0}};
  const auto r = inner_derivation_solve(DerivationTable({l}, {RationalMatrix::zero(2, 2)}));
  ASSERT_TRUE(r.feasible);
  EXPECT_TRUE(r.particular.is_zero());
  EXPECT_EQ(r.basis.size(), 2u);  // span of Id and the swap
}

TEST(Complement, ZeroOperator) {
  const BlockElement el{RationalMatrix{{2}}, RationalMatrix{{0}}, RationalMatrix{{3}}};
  const auto c = invariant_complement_from_A(RationalMatrix::zero(1, 1), {el});
  EXPECT_TRUE(c.invariant);
  EXPECT_TRUE(c.block_diagonal);
}

TEST(Complement, SwapExampleBlockDiagonalizes) {
  const RationalMatrix l{{0, 1}, {1, 0}}, d{{0, -1}, {1, 0}}, a{{1, 0}, {0, 0}};
  const auto c = invariant_complement_from_A(a, {twisted({l, d})});
  EXPECT_TRUE(c.invariant);
  EXPECT_TRUE(c.block_diagonal);
  const auto bad = invariant_complement_from_A(RationalMatrix::zero(2, 2), {twisted({l, d})});
  EXPECT_FALSE(bad.invariant);
  EXPECT_EQ(bad.failing_element, std::optional<std::size_t>(0));
}

TEST(Complement, RandomInnerDerivations) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 30; ++k) {
    const auto a = random_matrix(3, rng);
    std::vector<CocycleValue> els;
    for (int g = 0; g < 2; ++g) {
      const auto l = random_unimodular(3, rng);
      els.push_back({l, l * a - a * l});
    }
    const auto sol = inner_derivation_solve(els);
    ASSERT_TRUE(sol.feasible);
    std::vector<BlockElement> blocks{twisted(els[0]), twisted(els[1])};
    const auto c = invariant_complement_from_A(sol.particular, blocks);
    EXPECT_TRUE(c.invariant);
    EXPECT_TRUE(c.block_diagonal);
  }
  EXPECT_THROW(inner_derivation_solve(std::vector<CocycleValue>{}), InvalidInput);
}
