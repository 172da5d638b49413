#include "treelab/spectral.hpp"

#include "treelab/errors.hpp"

#include <Eigen/SVD>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <random>

namespace treelab {

Eigen::MatrixXd stacked_R(const std::vector<TreeAutomorphism>& generators, const Ball& ball,
                          const Vertex& excluded, int margin) {
  if (margin < 0)
    throw InvalidInput("margin must be non-negative");
  if (ball.depth() - margin < 0)
    throw DegenerateWindow("window is empty: margin exceeds ball depth");
  const std::size_t need = required_margin(generators, ball);
  if (static_cast<std::size_t>(margin) < need)
    throw ReachViolation("margin " + std::to_string(margin) + " is below the generator reach " +
                         std::to_string(need));
  const auto ex = ball.index(excluded);
  if (!ex)
    throw InvalidInput("excluded vertex " + excluded.to_string() + " is outside the ball");
  for (const auto& g : generators)
    if (g.apply(excluded) != excluded)
      throw InvalidInput("generator " + g.to_string() + " moves the excluded vertex");

  const std::size_t n = ball.size();
  const std::size_t w = ball.prefix_size(ball.depth() - margin);
  auto column = [&](std::size_t i) { return i < *ex ? i : i - 1; };
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(generators.size() * w),
                                            static_cast<Eigen::Index>(n - 1));
  for (std::size_t k = 0; k < generators.size(); ++k) {
    for (std::size_t t = 0; t < w; ++t) {
      // (x - lambda(g) x)_t = x_t - x_{g^{-1} t}
      const auto row = static_cast<Eigen::Index>(k * w + t);
      const std::size_t src = *ball.index(generators[k].apply_inverse(ball.vertex(t)));
      if (t != *ex)
        r(row, static_cast<Eigen::Index>(column(t))) += 1.0;
      if (src != *ex)
        r(row, static_cast<Eigen::Index>(column(src))) -= 1.0;
    }
  }
  return r;
}

double smallest_singular_value_dense(const Eigen::MatrixXd& r) {
  if (r.cols() == 0)
    return 0.0;
  if (r.rows() < r.cols())
    return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  const auto& s = svd.singularValues();
  return s(s.size() - 1);
}

double smallest_singular_value_power(const Eigen::MatrixXd& r, std::size_t* iterations,
                                     std::size_t max_iterations) {
  if (r.cols() == 0)
    return 0.0;
  const Eigen::SparseMatrix<double> rs = r.sparseView();
  const Eigen::SparseMatrix<double> gram = Eigen::SparseMatrix<double>(rs.transpose()) * rs;
  // Gershgorin bound on the spectrum of R^T R, so c*I - R^T R is positive
  // semidefinite and its dominant eigenvector is the bottom singular vector.
  double c = 0.0;
  for (Eigen::Index j = 0; j < gram.outerSize(); ++j) {
    double sum = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(gram, j); it; ++it)
      sum += std::abs(it.value());
    c = std::max(c, sum);
  }
  c += 1.0;
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(r.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = normal(rng);
  v.normalize();
  std::size_t it = 0;
  double previous = -1.0;
  for (; it < max_iterations; ++it) {
    Eigen::VectorXd next = c * v - gram * v;
    const double norm = next.norm();
    if (norm == 0.0)
      break;
    next /= norm;
    const double change = (next - v).norm();
    v = std::move(next);
    const double sigma = (rs * v).norm();
    if (change < 1e-13 || (previous >= 0.0 && std::abs(sigma - previous) < 1e-16))
      break;
    previous = sigma;
  }
  if (iterations)
    *iterations = it;
  return (rs * v).norm();
}

bool gap_values_agree(double a, double b, double rel, double abs_floor) {
  return std::abs(a - b) <= rel * std::max(a, b) + abs_floor;
}

GapReport spectral_gap_report(const std::vector<TreeAutomorphism>& generators, const Ball& ball,
                              const Vertex& excluded, int margin) {
  const Eigen::MatrixXd r = stacked_R(generators, ball, excluded, margin);
  GapReport rep;
  rep.rows = static_cast<std::size_t>(r.rows());
  rep.cols = static_cast<std::size_t>(r.cols());
  rep.dense = smallest_singular_value_dense(r);
  rep.power = r.rows() < r.cols() ? 0.0 : smallest_singular_value_power(r, &rep.iterations);
  if (!gap_values_agree(rep.dense, rep.power))
    throw NumericalInconsistency("smallest singular value: dense " + std::to_string(rep.dense) + " vs power " +
                                 std::to_string(rep.power));
  rep.value = rep.dense;
  return rep;
}

double spectral_gap(const std::vector<TreeAutomorphism>& generators, const Ball& ball, const Vertex& excluded,
                    int margin) {
  return spectral_gap_report(generators, ball, excluded, margin).value;
}

} // namespace treelab
