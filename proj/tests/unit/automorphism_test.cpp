#include "treelab/automorphism.hpp"
#include "treelab/errors.hpp"

#include <gtest/gtest.h>

using namespace treelab;

TEST(Automorphism, TranslationAction) {
  const auto g = TreeAutomorphism::translation(Vertex{1});
  EXPECT_EQ(aut_apply(g, Vertex::root()), Vertex{1});
  EXPECT_EQ(aut_apply(g, Vertex{1}), Vertex::root());
  EXPECT_EQ(aut_apply(g, Vertex{2}), Vertex({1, 2}));
}

TEST(Automorphism, PortraitMustBeBijective) {
  EXPECT_THROW(TreeAutomorphism::portrait(3, 1, {{Vertex::root(), {0, 0, 1}}}), InvalidAutomorphism);
  EXPECT_THROW(TreeAutomorphism::parse("P(1,(1 1 2))"), Error);
}

TEST(Automorphism, ComposeAndInvert) {
  const auto t = TreeAutomorphism::translation(Vertex{1, 2});
  const auto p = TreeAutomorphism::parse("P(2,(2 3 1)[(1 2),(2 1),(1 2)])");
  const auto gp = aut_compose(t, p);
  for (const auto& v : ball_vertices(3, 4)) {
    EXPECT_EQ(gp.apply(v), t.apply(p.apply(v)));
    EXPECT_EQ(aut_invert(gp).apply(gp.apply(v)), v);
    EXPECT_EQ(gp.apply_inverse(gp.apply(v)), v);
  }
  EXPECT_TRUE(agree_on_ball(aut_compose(gp, aut_invert(gp)), TreeAutomorphism::identity(), 3, 5));
}

TEST(Automorphism, IsometryOnBall) {
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    for (auto kind : {AutKind::translation, AutKind::portrait, AutKind::composition})
      EXPECT_TRUE(is_isometry_on_ball(random_automorphism(3, kind, 2, seed), 3, 3));
}

TEST(Automorphism, TextRoundTrip) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = random_automorphism(4, AutKind::composition, 3, seed);
    const auto h = TreeAutomorphism::parse(g.to_string());
    EXPECT_EQ(h.to_string(), g.to_string());
    EXPECT_TRUE(agree_on_ball(g, h, 4, 4));
  }
  EXPECT_THROW(TreeAutomorphism::parse("Q(1)"), ParseError);
}

TEST(Automorphism, Reach) {
  EXPECT_EQ(aut_reach(TreeAutomorphism::parse("P(2,(2 3 1)[(1 2),(2 1),(1 2)])"), 3, 5), 0u);
  EXPECT_EQ(aut_reach(TreeAutomorphism::translation(Vertex{1}), 3, 4), 1u);
  EXPECT_EQ(aut_reach(TreeAutomorphism::identity(), 3, 6), 0u);
}

TEST(Automorphism, PortraitFixesDepths) {
  const auto p = random_automorphism(3, AutKind::portrait, 2, 7);
  for (const auto& v : ball_vertices(3, 4))
    EXPECT_EQ(p.apply(v).depth(), v.depth());
}

TEST(Automorphism, RandomIsDeterministic) {
  for (auto kind : {AutKind::translation, AutKind::portrait, AutKind::composition})
    EXPECT_EQ(random_automorphism(3, kind, 2, 11).to_string(), random_automorphism(3, kind, 2, 11).to_string());
  const auto t = random_automorphism(3, AutKind::translation, 1, 0);
  ASSERT_TRUE(std::holds_alternative<TreeAutomorphism::Translation>(t.form()));
  EXPECT_LE(std::get<TreeAutomorphism::Translation>(t.form()).word.depth(), 1u);
}
