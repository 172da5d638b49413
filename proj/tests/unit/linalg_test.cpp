#include "treelab/errors.hpp"
#include "treelab/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace treelab;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(to_string(Rational(-3, 2)), "-3/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
}

TEST(RationalMatrix, ArithmeticAndInverse) {
  const RationalMatrix a{{2, 1}, {1, 1}};
  const auto inv = a.inverse();
  ASSERT_TRUE(inv);
  EXPECT_EQ(a * *inv, RationalMatrix::identity(2));
  EXPECT_FALSE((RationalMatrix{{1, 2}, {2, 4}}).inverse());
  EXPECT_EQ((RationalMatrix{{1, 2}, {2, 4}}).rank(), 1u);
  EXPECT_EQ(RationalMatrix::parse(a.to_string()), a);
}

TEST(RationalMatrix, PositiveDefinite) {
  EXPECT_TRUE(is_positive_definite(RationalMatrix{{2, -1}, {-1, 2}}));
  EXPECT_FALSE(is_positive_definite(RationalMatrix{{1, 2}, {2, 1}}));
  EXPECT_FALSE(is_positive_definite(RationalMatrix{{1, 1}, {0, 1}}));
  EXPECT_FALSE(is_positive_definite(RationalMatrix{{0, 0}, {0, 1}}));
}

TEST(Eliminator, NullSpaceSatisfiesRows) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t cols = 7;
    ExactEliminator elim(cols);
    std::vector<SparseVec> rows;
    for (int r = 0; r < 4; ++r) {
      std::vector<Rational> dense(cols);
      for (auto& x : dense)
        x = coef(rng);
      rows.push_back(sparse_from_dense(dense));
      elim.add_row(rows.back());
    }
    const auto basis = elim.null_space_basis();
    EXPECT_EQ(basis.size() + elim.rank(), cols);
    for (const auto& b : basis)
      for (const auto& r : rows)
        EXPECT_EQ(sparse_dot(r, dense_from_sparse(b, cols)), 0);
  }
}

TEST(Eliminator, InconsistentSystemYieldsCertificate) {
  ExactEliminator elim(2, true);
  elim.add_row({{0, 1}, {1, 1}}, 1);
  elim.add_row({{0, 2}, {1, 2}}, 3);
  ASSERT_FALSE(elim.consistent());
  const auto& cert = *elim.certificate();
  // The combination cancels the left-hand sides and leaves a nonzero constant.
  Rational lhs0 = 0, lhs1 = 0, rhs = 0;
  const Rational rhs_of[] = {1, 3};
  const Rational coef_of[] = {1, 2};
  for (const auto& [i, c] : cert.combination) {
    lhs0 += c * coef_of[i];
    lhs1 += c * coef_of[i];
    rhs += c * rhs_of[i];
  }
  EXPECT_EQ(lhs0, 0);
  EXPECT_EQ(lhs1, 0);
  EXPECT_NE(rhs, 0);
  EXPECT_EQ(rhs, cert.rhs_value);
}

TEST(Eliminator, ParticularSolution) {
  ExactEliminator elim(3);
  elim.add_row({{0, 1}, {1, 1}}, 2);
  elim.add_row({{1, 1}, {2, -1}}, 5);
  ASSERT_TRUE(elim.consistent());
  const auto x = dense_from_sparse(elim.particular_solution(), 3);
  EXPECT_EQ(x[0] + x[1], 2);
  EXPECT_EQ(x[1] - x[2], 5);
}

TEST(Eliminator, SparseRank) {
  EXPECT_EQ(sparse_rank({{{0, 1}}, {{1, 1}}, {{0, 2}, {1, 2}}}, 2), 2u);
  EXPECT_EQ(sparse_rank({}, 4), 0u);
}
