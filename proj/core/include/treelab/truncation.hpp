#pragma once

// Finite sections of tree operators on balls, and windowed exact solves for
// the linear spaces attached to a generator set (commutant, Gram, intertwiner).
//
// Constraints are imposed only on entries (t, s) with both vertices in the
// window (depth <= depth - margin), where the margin dominates every
// generator's reach, so no imposed equation sees the truncation. Solution
// spaces are compared on the interior block (depth <= depth - 2*margin).

#include "treelab/automorphism.hpp"
#include "treelab/linalg.hpp"
#include "treelab/operators.hpp"
#include "treelab/tree.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace treelab {

class Ball {
public:
  Ball(int q, int depth);

  int q() const { return q_; }
  int depth() const { return depth_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(std::size_t i) const { return vertices_[i]; }
  std::optional<std::size_t> index(const Vertex& v) const;
  /// Number of vertices of depth <= d; these are the first ones in canonical order.
  std::size_t prefix_size(int d) const;

private:
  int q_;
  int depth_;
  std::vector<Vertex> vertices_;
  std::unordered_map<Vertex, std::size_t, VertexHash> index_;
};

Ball enumerate_ball(int q, int depth);

/// Column-sparse finite section of an operator on a ball.
struct BallMatrix {
  std::size_t n = 0;
  std::vector<SparseVec> columns;  ///< column s: (row index, value), truncated to the ball
  std::vector<bool> boundary;      ///< column s deeper than depth - reach
  std::size_t reach = 0;

  Rational entry(std::size_t t, std::size_t s) const;
  RationalMatrix dense() const;
};

BallMatrix matrix_of(const TreeOperator& op, const Ball& ball);

/// Exact constraint system rows . x = rhs.
struct LinearSystem {
  std::size_t unknowns = 0;
  std::vector<SparseVec> rows;
  std::vector<Rational> rhs;

  /// Largest |row . x - rhs| over all rows (exact).
  Rational max_abs_residual(const std::vector<Rational>& x) const;
};

struct SolveReport {
  std::string solver;
  int q = 0;
  int depth = 0;
  int margin = 0;
  std::vector<std::string> generators;
  std::size_t unknowns = 0;
  std::size_t constraints = 0;
  std::size_t window_size = 0;
  std::size_t interior_size = 0;
  std::size_t full_dimension = 0;
  std::size_t interior_dimension = 0;
  bool consistent = true;
  std::uint64_t checksum = 0;
};

enum class UnknownLayout { full, symmetric };

/// Result of a windowed solve: an affine space particular + span(basis) of
/// n x n matrices, stored as vectors over the unknown layout.
struct SolutionSpace {
  SolveReport report;
  std::size_t n = 0;
  UnknownLayout layout = UnknownLayout::full;
  LinearSystem system;
  std::vector<SparseVec> basis;
  SparseVec particular;
  std::optional<InfeasibilityCertificate> infeasible;

  RationalMatrix to_matrix(const SparseVec& x) const;
  std::vector<Rational> to_unknowns(const RationalMatrix& m) const;

  /// Exact check that every homogeneous basis vector satisfies the imposed
  /// rows with zero right-hand side and the particular solution satisfies
  /// them with the actual right-hand side.
  bool residuals_vanish() const;

  /// Restrictions of the homogeneous basis to the leading m x m block,
  /// flattened row-major.
  std::vector<SparseVec> restricted_basis(std::size_t m) const;
  /// Whether the leading m x m block of `target` lies in the span of the
  /// restricted homogeneous basis.
  bool restriction_contains(const RationalMatrix& target, std::size_t m) const;
};

/// Matrices S with S lambda(g) = lambda(g) S on window entries.
SolutionSpace commutant_solve(const std::vector<TreeAutomorphism>& generators, const Ball& ball, int margin);

/// Symmetric A with lambda(g)^T A lambda(g) = A on window entries.
SolutionSpace invariant_gram_solve(const std::vector<TreeAutomorphism>& generators, const Ball& ball, int margin);

/// A with A lambda(g) - lambda(g) A = d(g) on window entries.
SolutionSpace intertwiner_solve(const std::vector<TreeAutomorphism>& generators, const Ball& ball, int margin);

/// A positive-definite element of the interior restriction of a Gram
/// solution space: the identity when it lies in the span, otherwise a seeded
/// random combination; nullopt when neither is positive definite.
std::optional<RationalMatrix> interior_positive_definite_witness(const SolutionSpace& space, std::size_t m,
                                                                 std::uint64_t seed = 0);

/// Whether two families span the same space of m x m blocks.
bool same_restricted_span(const std::vector<SparseVec>& a, const std::vector<SparseVec>& b, std::size_t m);

/// Orbits of the generated group on ordered (or unordered) vertex pairs of the
/// ball, via union-find closure. Generators must fix the root.
std::size_t pair_orbit_count(const std::vector<TreeAutomorphism>& generators, const Ball& ball,
                             bool unordered = false);

/// Exact squared l2 operator norm of the section of L* on the ball, per q.
std::vector<std::pair<int, Rational>> lstar_growth(const std::vector<int>& q_list, int depth);

/// Portrait generators of the full rooted symmetry to the given depth: for
/// each vertex above that depth, a transposition and a full cycle of its
/// children.
std::vector<TreeAutomorphism> portrait_generators(int q, int portrait_depth);

/// Portrait generators plus translations by the letters 1 and 2.
std::vector<TreeAutomorphism> default_generators(int q, int portrait_depth);

/// Three depth-2 portraits used for the spectral measurement.
std::vector<TreeAutomorphism> default_gap_generators(int q);

/// Minimum margin accepted for a generator set on a ball: the largest reach
/// of any generator or inverse.
std::size_t required_margin(const std::vector<TreeAutomorphism>& generators, const Ball& ball);

} // namespace treelab
