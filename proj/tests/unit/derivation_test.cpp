#include "oracles.hpp"

#include "treelab/derivation.hpp"
#include "treelab/errors.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace treelab;

namespace {
FinSuppVector e(const Vertex& v, const Rational& c = 1) { return FinSuppVector::dirac(v, c); }
const Vertex root = Vertex::root();
const TreeAutomorphism t1 = TreeAutomorphism::translation(Vertex{1});
} // namespace

TEST(Derivation, DefinitionalExamples) {
  EXPECT_EQ(d_apply(t1, e(root), 3), e(root, -1));
  EXPECT_TRUE(d_apply(t1, e(Vertex{2}), 3).is_zero());
  const auto p = TreeAutomorphism::parse("P(2,(2 3 1)[(1 2),(2 1),(1 2)])");
  std::mt19937_64 rng(0);
  for (int k = 0; k < 10; ++k)
    EXPECT_TRUE(d_apply(p, random_vector(3, 4, 6, rng), 3).is_zero());
}

TEST(Derivation, ViaParentMapExamples) {
  EXPECT_EQ(d_apply_via_L(t1, e(root)), e(root, -1));
  EXPECT_EQ(d_apply_via_L(t1, e(Vertex{1})), e(Vertex{1}));
}

TEST(Derivation, MatchesDefiningFormula) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 50; ++k) {
    const auto g = random_automorphism(4, AutKind::composition, 2, rng);
    const auto x = random_vector(4, 3, 5, rng);
    EXPECT_EQ(d_apply(g, x, 4), oracle::d_definition(g, x, 4));
  }
}

TEST(Derivation, ClosedFormExamples) {
  const auto a = d_closed_form(t1, Vertex{1});
  EXPECT_EQ(a.value, e(Vertex{1}));
  EXPECT_EQ(a.which, ClosedFormCase::image_is_root);
  const auto b = d_closed_form(t1, root);
  EXPECT_EQ(b.value, e(root, -1));
  EXPECT_EQ(b.which, ClosedFormCase::moves_root);
  const auto p = TreeAutomorphism::parse("P(1,(3 1 2))");
  for (const auto& s : ball_vertices(3, 3))
    EXPECT_TRUE(d_closed_form(p, s).value.is_zero());
  EXPECT_EQ(d_closed_form(p, root).which, ClosedFormCase::fixes_root);
}

TEST(Derivation, ClosedFormAgreesWithDefinitionOnEveryVertex) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    const auto g = random_automorphism(3, AutKind::composition, 2, rng);
    for (const auto& s : ball_vertices(3, 3))
      EXPECT_EQ(d_closed_form(g, s).value, oracle::d_definition(g, e(s), 3)) << g.to_string() << " " << s.to_string();
  }
}

TEST(Derivation, CocycleExamples) {
  EXPECT_TRUE(cocycle_check(t1, t1, e(root), 3));
  std::mt19937_64 rng(2);
  for (int k = 0; k < 10; ++k)
    EXPECT_TRUE(cocycle_check(random_automorphism(3, AutKind::composition, 2, rng), TreeAutomorphism::identity(),
                              random_vector(3, 3, 4, rng), 3));
}

TEST(Derivation, TwistedRepresentationExamples) {
  const BlockVector v{FinSuppVector(), e(root)};
  EXPECT_EQ(lambda_d_apply(TreeAutomorphism::identity(), v, 3), v);
  const BlockVector expected{e(root, -1), e(Vertex{1})};
  EXPECT_EQ(lambda_d_apply(t1, v, 3), expected);
}

TEST(Derivation, NormCertificates) {
  const auto id = d_norm_certificates(TreeAutomorphism::identity(), 3, 4);
  EXPECT_EQ(id.col_max_nonzeros, 0u);
  EXPECT_EQ(id.ell1_section_norm, 0);
  const auto t = d_norm_certificates(t1, 3, 4);
  EXPECT_LE(t.col_max_nonzeros, 2u);
  EXPECT_LE(t.row_max_nonzeros, 2u);
  EXPECT_EQ(t.entry_bound, 1);
  EXPECT_TRUE(t.within_bounds());
}

TEST(Psi, SingletonExamples) {
  const auto a = psi_propagate_singleton(Vertex{1}, t1, 3);
  SymbolicVector expected;
  expected.add(root, LinearForm{1, 0, 0});
  expected.add(Vertex{1}, LinearForm{0, 1, 0});
  EXPECT_EQ(a, expected);

  SymbolicVector ansatz;
  ansatz.add(root, LinearForm{0, 1, 0});
  EXPECT_EQ(psi_propagate_singleton(root, TreeAutomorphism::identity(), 3), ansatz);

  const auto w1 = TreeAutomorphism::translation(Vertex{1, 2});
  const auto w2 = aut_compose(w1, TreeAutomorphism::parse("P(1,(2 3 1))"));
  EXPECT_EQ(psi_propagate_singleton(Vertex{1, 2}, w1, 3), psi_propagate_singleton(Vertex{1, 2}, w2, 3));
  EXPECT_THROW(psi_propagate_singleton(Vertex{2}, t1, 3), WrongWitness);
}

TEST(Psi, EdgeExamples) {
  SymbolicVector expected;
  expected.add(Vertex{1, 2}, LinearForm{0, 1, 0});
  expected.add(Vertex{1}, LinearForm{1, 0, 1});
  expected.add(root, LinearForm{1, 0, 0});
  EXPECT_EQ(psi_propagate_edge(Vertex{1, 2}, t1, 3), expected);
  const auto other = aut_compose(t1, TreeAutomorphism::parse("P(1,(2 1 3))"));
  EXPECT_EQ(psi_propagate_edge(Vertex{1, 2}, other, 3), expected);
  EXPECT_THROW(psi_propagate_edge(Vertex{1}, t1, 3), WrongWitness);
  EXPECT_THROW(psi_propagate_edge(Vertex{2, 1}, t1, 3), WrongWitness);
}

TEST(ThetaConjugation, Examples) {
  const RationalMatrix id = RationalMatrix::identity(2);
  const RationalMatrix u{{1, 2}, {0, 3}}, v{{0, 1}, {1, 0}}, w{{5, 0}, {1, 1}};
  auto unchanged = conjugate_by_theta(0, u, v, w);
  EXPECT_EQ(unchanged.u, u);
  EXPECT_EQ(unchanged.w, w);
  EXPECT_EQ(unchanged.v, v);
  auto same = conjugate_by_theta(7, u, u, w);
  EXPECT_EQ(same.w, w);
  // The literal block product gives w - theta (u - v).
  auto r = conjugate_by_theta(1, 2 * id, id, RationalMatrix::zero(2, 2));
  EXPECT_EQ(r.u, 2 * id);
  EXPECT_EQ(r.w, -id);
  EXPECT_EQ(r.v, id);
  EXPECT_THROW(conjugate_by_theta(1, id, RationalMatrix::identity(3), id), DimensionMismatch);
}
