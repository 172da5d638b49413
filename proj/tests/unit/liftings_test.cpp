#include "treelab/errors.hpp"
#include "treelab/liftings.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace treelab;

namespace {

Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

const RationalMatrix reflection{{1, 1}, {0, -1}};

LiftingProblem reflection_problem(NormSpec norm = NormSpec::quadratic()) {
  return LiftingProblem(1, 1, {RationalMatrix::identity(2), reflection}, norm);
}

LiftingProblem euclidean_plane() { return LiftingProblem(1, 1, {RationalMatrix::identity(2)}, NormSpec::quadratic()); }

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs)
    v(i++) = x;
  return v;
}

} // namespace

TEST(NormSpec, Validation) {
  EXPECT_THROW(NormSpec::pnorm(3), InvalidInput);
  EXPECT_THROW(NormSpec::pnorm(2), InvalidInput);
  EXPECT_THROW(NormSpec::pnorm(4, -1), InvalidInput);
  for (const auto& s : {NormSpec::quadratic(), NormSpec::pnorm(6, Rational(1, 3))})
    EXPECT_EQ(NormSpec::parse(s.to_string()).to_string(), s.to_string());
  EXPECT_THROW(NormSpec::parse("cubic"), ParseError);
}

TEST(Objective, Examples) {
  const AveragedObjective quad(NormSpec::quadratic(), {RationalMatrix::identity(2)});
  auto a = objective_and_gradient(quad, vec({0, 0}));
  EXPECT_EQ(a.value, 0.0);
  EXPECT_EQ(a.gradient.norm(), 0.0);
  auto b = objective_and_gradient(quad, vec({3, 4}));
  EXPECT_DOUBLE_EQ(b.value, 25.0);
  EXPECT_NEAR((b.gradient - vec({6, 8})).norm(), 0.0, 1e-12);
  const AveragedObjective p4(NormSpec::pnorm(4, 0), {RationalMatrix::identity(2)});
  auto c = objective_and_gradient(p4, vec({1, 1}));
  EXPECT_DOUBLE_EQ(c.value, 2.0);
  EXPECT_NEAR((c.gradient - vec({4, 4})).norm(), 0.0, 1e-12);
}

TEST(Objective, GradientAndHessianMatchFiniteDifferences) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  for (const auto& p : shipped_problems()) {
    const LiftingProblem prob = build_problem(p);
    const auto& f = prob.objective();
    for (int k = 0; k < 5; ++k) {
      Eigen::VectorXd x(static_cast<Eigen::Index>(prob.n()));
      for (auto& c : x)
        c = n01(rng);
      const Eigen::VectorXd g = f.gradient(x);
      EXPECT_LE((g - finite_difference_gradient(f, x)).norm(), 1e-6 * std::max(1.0, g.norm())) << p.name;
      const double h = 1e-5;
      Eigen::MatrixXd fd(x.size(), x.size());
      for (Eigen::Index j = 0; j < x.size(); ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(x.size());
        e(j) = h;
        fd.col(j) = (f.gradient(x + e) - f.gradient(x - e)) / (2 * h);
      }
      EXPECT_LE((f.hessian(x) - fd).norm(), 1e-5 * std::max(1.0, fd.norm())) << p.name;
    }
  }
}

TEST(NearestPoint, Examples) {
  EXPECT_NEAR((nearest_point(euclidean_plane(), vec({2, 0})).y - vec({2, 0})).norm(), 0.0, 1e-12);
  EXPECT_NEAR((nearest_point(euclidean_plane(), vec({2, 5})).y - vec({2, 0})).norm(), 0.0, 1e-10);
  // Averaged form y^2 + y z + (3/2) z^2 at z = 1: the nearest point of Y to
  // (0, 1) is (1/2, 0), so (0, 1) - y = (-1/2, 1).
  EXPECT_NEAR((nearest_point(reflection_problem(), vec({0, 1})).y - vec({0.5, 0})).norm(), 0.0, 1e-10);
}

TEST(NearestPoint, ReportsSolverFailure) {
  SolverOptions opts;
  opts.max_iterations = 1;
  opts.tolerance = 1e-14;
  const auto problems = shipped_problems();
  const auto it = std::find_if(problems.begin(), problems.end(), [](const auto& p) { return p.name == "rotation-p4"; });
  ASSERT_NE(it, problems.end());
  const LiftingProblem prob = build_problem(*it, opts);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(prob.n()));
  x.tail(static_cast<Eigen::Index>(prob.nz())) = vec({1.0, -2.0});
  try {
    nearest_point(prob, x);
    FAIL() << "expected a solver failure";
  } catch (const SolverFailure& e) {
    EXPECT_GE(e.iterations(), 1);
    EXPECT_GT(e.gradient_norm(), 0.0);
  }
}

TEST(Lifting, PhiAndPsiExamples) {
  const auto prob = reflection_problem();
  EXPECT_EQ(lifting_phi(prob, vec({0})).norm(), 0.0);
  EXPECT_NEAR((lifting_phi(prob, vec({1})) - vec({-0.5, 1})).norm(), 0.0, 1e-10);
  EXPECT_NEAR(psi_of(prob, vec({1}))(0), 0.5, 1e-10);
  EXPECT_EQ(exact_quadratic_psi(prob), (RationalMatrix{{Rational(1, 2)}}));
  EXPECT_NEAR((lifting_phi(euclidean_plane(), vec({3})) - vec({0, 3})).norm(), 0.0, 1e-10);
  EXPECT_NEAR(psi_of(euclidean_plane(), vec({3})).norm(), 0.0, 1e-10);
}

TEST(Lifting, DeltaIdentity) {
  const auto prob = reflection_problem();
  EXPECT_LE(delta_check(prob, prob.blocks()[0]), 1e-12);
  EXPECT_LE(delta_check(prob, prob.blocks()[1]), 1e-10);
  const LiftingProblem diag(1, 1, {RationalMatrix::identity(2), RationalMatrix{{-1, 0}, {0, 1}}},
                            NormSpec::quadratic());
  EXPECT_LE(delta_check(diag, diag.blocks()[1]), 1e-12);
  EXPECT_NEAR(psi_of(diag, vec({2})).norm(), 0.0, 1e-12);
}

TEST(Lifting, DeltaDefect) {
  const auto prob = reflection_problem();
  EXPECT_EQ(Delta_of(prob, vec({1}), vec({0})).norm(), 0.0);
  EXPECT_LE(Delta_of(prob, vec({1}), vec({-3})).norm(), 1e-10);
}

TEST(Lifting, ShippedProblemsSatisfyAllProperties) {
  bool nonzero_defect = false;
  for (const auto& p : shipped_problems()) {
    const LiftingProblem prob = build_problem(p);
    ASSERT_TRUE(prob.closed()) << p.name;
    EXPECT_TRUE(injectivity_check(prob).injective) << p.name;
    const auto r = lifting_properties(prob, 20, 1);
    EXPECT_LE(r.equivariance, 1e-8) << p.name;
    EXPECT_EQ(r.section, 0.0) << p.name;
    EXPECT_LE(r.homogeneity, 1e-8) << p.name;
    EXPECT_LE(r.minimality_slack, 1e-10) << p.name;
    EXPECT_LE(r.delta_identity, 1e-8) << p.name;
    EXPECT_LE(r.Delta_equivariance, 1e-8) << p.name;
    EXPECT_EQ(r.Delta_z_block, 0.0) << p.name;
    EXPECT_LE(r.gradient_error, 1e-6) << p.name;
    if (p.norm.family == NormSpec::Family::averaged_quadratic)
      EXPECT_LE(r.Delta_norm, 1e-10) << p.name;
    else
      nonzero_defect = nonzero_defect || r.Delta_norm > 1e-3;
  }
  // At least one non-Hilbertian problem has a genuinely nonlinear lifting.
  EXPECT_TRUE(nonzero_defect);
}

TEST(BlockElement, SplitRequiresUpperTriangularBlocks) {
  EXPECT_THROW(BlockElement::split(RationalMatrix{{1, 0}, {1, 1}}, 1), InvalidInput);
  const auto b = BlockElement::split(reflection, 1);
  EXPECT_EQ(b.u, (RationalMatrix{{1}}));
  EXPECT_EQ(b.w, (RationalMatrix{{1}}));
  EXPECT_EQ(b.v, (RationalMatrix{{-1}}));
  EXPECT_EQ(b.full(), reflection);
}

TEST(LiftingProblem, RejectsInvalidGroups) {
  EXPECT_THROW(LiftingProblem(1, 1, {RationalMatrix{{1, 0}, {1, 1}}}, NormSpec::quadratic()), InvalidInput);
  EXPECT_THROW(LiftingProblem(1, 1, {RationalMatrix{{0, 1}, {0, 1}}}, NormSpec::quadratic()), InvalidInput);
  EXPECT_FALSE(LiftingProblem(1, 1, {reflection}, NormSpec::quadratic()).closed());
}

TEST(DeltaComposition, Examples) {
  const BlockElement id{RationalMatrix::identity(1), RationalMatrix::zero(1, 1), RationalMatrix::identity(1)};
  EXPECT_TRUE(delta_composition_check(id, id));
  const auto t = BlockElement::split(reflection, 1);
  EXPECT_TRUE(delta_composition_check(t, t));
  EXPECT_EQ(BlockElement::split(reflection * reflection, 1).w, (RationalMatrix{{0}}));
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> c(-4, 4);
  auto rnd = [&](std::size_t r, std::size_t k) {
    RationalMatrix m(r, k);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < k; ++j)
        m(i, j) = frac(c(rng), 1 + (c(rng) + 4) % 3);
    return m;
  };
  for (int k = 0; k < 100; ++k)
    EXPECT_TRUE(delta_composition_check({rnd(2, 2), rnd(2, 3), rnd(3, 3)}, {rnd(2, 2), rnd(2, 3), rnd(3, 3)}));
  EXPECT_THROW(delta_composition_check({rnd(2, 2), rnd(2, 3), rnd(3, 3)}, {rnd(3, 3), rnd(3, 2), rnd(2, 2)}),
               DimensionMismatch);
}

TEST(Closure, Examples) {
  const auto trivial = group_closure({RationalMatrix::identity(2)}, 16);
  EXPECT_TRUE(trivial.closed);
  EXPECT_EQ(trivial.elements.size(), 1u);
  const auto two = group_closure({reflection}, 16);
  EXPECT_TRUE(two.closed);
  EXPECT_EQ(two.elements.size(), 2u);
  EXPECT_NEAR(two.max_operator_norm, (1 + std::sqrt(5.0)) / 2, 1e-12);
  const auto shear = group_closure({RationalMatrix{{1, 1}, {0, 1}}}, 10);
  EXPECT_FALSE(shear.closed);
  EXPECT_GT(shear.max_operator_norm, 4.0);
}

TEST(Injectivity, Examples) {
  EXPECT_TRUE(injectivity_check({RationalMatrix::identity(2), RationalMatrix{{-1, 0}, {0, 1}}}, 1).injective);
  EXPECT_TRUE(injectivity_check({RationalMatrix::identity(2), reflection}, 1).injective);
  const auto r = injectivity_check({RationalMatrix::identity(2), RationalMatrix{{1, 1}, {0, 1}}}, 1);
  EXPECT_FALSE(r.injective);
  ASSERT_TRUE(r.collision);
  EXPECT_EQ(*r.collision, std::make_pair(std::size_t{0}, std::size_t{1}));
}
