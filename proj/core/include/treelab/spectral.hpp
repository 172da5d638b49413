#pragma once

// Spectral measurement of almost-invariant vectors: the stacked operator
// R x = (x - lambda(g_1) x, ..., x - lambda(g_k) x) on the ball minus a fixed
// vertex, and its smallest singular value computed two independent ways.

#include "treelab/automorphism.hpp"
#include "treelab/truncation.hpp"

#include <Eigen/Dense>

namespace treelab {

/// Rows: window vertices (depth <= depth - margin) for each generator in turn.
/// Columns: ball vertices other than `excluded`, in canonical order.
/// Throws InvalidInput if a generator moves `excluded`, and the usual window
/// errors when the margin is too small or the window is empty.
Eigen::MatrixXd stacked_R(const std::vector<TreeAutomorphism>& generators, const Ball& ball,
                          const Vertex& excluded, int margin);

struct GapReport {
  double dense = 0.0;        ///< from the singular value decomposition
  double power = 0.0;        ///< from shifted power iteration on R^T R
  std::size_t iterations = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  double value = 0.0;        ///< the common value
};

/// Two values agree when |a - b| <= rel * max(a, b) + abs_floor.
bool gap_values_agree(double a, double b, double rel = 1e-6, double abs_floor = 1e-9);

/// Throws NumericalInconsistency when the two methods disagree.
GapReport spectral_gap_report(const std::vector<TreeAutomorphism>& generators, const Ball& ball,
                              const Vertex& excluded, int margin);

double spectral_gap(const std::vector<TreeAutomorphism>& generators, const Ball& ball, const Vertex& excluded,
                    int margin);

/// Dense smallest singular value (0 when R has fewer rows than columns).
double smallest_singular_value_dense(const Eigen::MatrixXd& r);

/// Smallest singular value via power iteration on c*I - R^T R.
double smallest_singular_value_power(const Eigen::MatrixXd& r, std::size_t* iterations = nullptr,
                                     std::size_t max_iterations = 200000);

} // namespace treelab
