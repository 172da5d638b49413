#pragma once

// Finite-dimensional liftings. X = Y + Z with Y the first n_Y coordinates,
// acted on by a finite group of block upper-triangular matrices (u w; 0 v).
// An invariant strictly convex objective makes the nearest point of an affine
// fibre x + Y unique, which yields the equivariant lifting phi, the map psi
// with phi(z) = (-psi(z), z), and the defect Delta. A second half handles
// derivations of matrix representations: folding the cocycle rule along
// words, solving for inner implementations, and checking the induced
// invariant complement.

#include "treelab/linalg.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace treelab {

struct NormSpec {
  enum class Family { averaged_quadratic, averaged_pnorm };
  Family family = Family::averaged_quadratic;
  int p = 2;
  Rational epsilon = Rational(1, 100);

  static NormSpec quadratic() { return {}; }
  /// Throws InvalidInput unless p is even and at least 4 and epsilon >= 0.
  static NormSpec pnorm(int p, Rational epsilon = Rational(1, 100));
  std::string to_string() const;
  /// "quadratic" or "pnorm(p,eps)".
  static NormSpec parse(const std::string& text);
};

/// The objective F attached to a norm family and a finite group G:
///   quadratic: F(x) = avg_T |Tx|_2^2 = x^T Q x
///   p-norm:    F(x) = avg_T sum_i (Tx)_i^p + eps * (x^T Q x)^(p/2)
/// Both are G-invariant when G is closed, and p-homogeneous with p = 2 for
/// the quadratic family.
class AveragedObjective {
public:
  AveragedObjective(NormSpec spec, const std::vector<RationalMatrix>& group);

  const NormSpec& spec() const { return spec_; }
  std::size_t dimension() const { return static_cast<std::size_t>(q_.rows()); }
  /// Exact averaged Gram matrix Q.
  const RationalMatrix& gram() const { return q_exact_; }

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;

private:
  NormSpec spec_;
  std::vector<Eigen::MatrixXd> group_;
  RationalMatrix q_exact_;
  Eigen::MatrixXd q_;
};

struct ObjectiveValue {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

ObjectiveValue objective_and_gradient(const AveragedObjective& f, const Eigen::VectorXd& x);

/// Central finite-difference gradient, for validating the analytic one.
Eigen::VectorXd finite_difference_gradient(const AveragedObjective& f, const Eigen::VectorXd& x, double h = 1e-5);

struct SolverOptions {
  double tolerance = 1e-10;
  int max_iterations = 200;
  double backtrack = 0.5;
  double armijo = 1e-4;
};

/// Block view of an element of GL(Y + Z).
struct BlockElement {
  RationalMatrix u;
  RationalMatrix w;
  RationalMatrix v;

  RationalMatrix full() const;
  /// Throws InvalidInput when the lower-left block is nonzero.
  static BlockElement split(const RationalMatrix& m, std::size_t ny);
};

class LiftingProblem {
public:
  /// Group elements are n x n with n = ny + nz. Throws InvalidInput when an
  /// element is not block upper-triangular or has a singular diagonal block.
  LiftingProblem(std::size_t ny, std::size_t nz, std::vector<RationalMatrix> group, NormSpec norm,
                 SolverOptions options = {});

  std::size_t ny() const { return ny_; }
  std::size_t nz() const { return nz_; }
  std::size_t n() const { return ny_ + nz_; }
  const std::vector<RationalMatrix>& group() const { return group_; }
  const std::vector<BlockElement>& blocks() const { return blocks_; }
  const AveragedObjective& objective() const { return objective_; }
  const SolverOptions& options() const { return options_; }
  /// Whether the element list is closed under products.
  bool closed() const { return closed_; }

private:
  std::size_t ny_;
  std::size_t nz_;
  std::vector<RationalMatrix> group_;
  std::vector<BlockElement> blocks_;
  AveragedObjective objective_;
  SolverOptions options_;
  bool closed_ = false;
};

struct NearestPoint {
  Eigen::VectorXd y;  ///< full-length vector with zero Z part
  int iterations = 0;
  double gradient_norm = 0.0;
};

/// argmin over y in Y of F(x - y) by damped Newton with backtracking.
/// Throws SolverFailure if the iteration cap is reached.
NearestPoint nearest_point(const LiftingProblem& problem, const Eigen::VectorXd& x);

/// phi(z) = (0, z) - nearest_point((0, z)).
Eigen::VectorXd lifting_phi(const LiftingProblem& problem, const Eigen::VectorXd& z);
/// psi(z) = minus the Y block of phi(z).
Eigen::VectorXd psi_of(const LiftingProblem& problem, const Eigen::VectorXd& z);

/// In the quadratic family psi is the linear map Q_YY^{-1} Q_YZ; returned exactly.
RationalMatrix exact_quadratic_psi(const LiftingProblem& problem);

/// max over sampled z of |w z - (u psi(z) - psi(v z))|.
double delta_check(const LiftingProblem& problem, const BlockElement& element, int samples = 20,
                   std::uint64_t seed = 0);

/// phi(z1) + phi(z2) - phi(z1 + z2).
Eigen::VectorXd Delta_of(const LiftingProblem& problem, const Eigen::VectorXd& z1, const Eigen::VectorXd& z2);

/// Whether the w block of the product equals u1 w2 + w1 v2 exactly. Throws
/// DimensionMismatch on non-conformable blocks.
bool delta_composition_check(const BlockElement& a, const BlockElement& b);

struct PropertyReport {
  double equivariance = 0.0;      ///< max |phi(v z) - T phi(z)|
  double section = 0.0;           ///< max |pi(phi(z)) - z|
  double homogeneity = 0.0;       ///< max |phi(t z) - t phi(z)|
  double minimality_slack = 0.0;  ///< max of F(phi(z)) - F(phi(z) + y), should be <= 0
  double delta_identity = 0.0;    ///< max delta_check residual over the group
  double Delta_norm = 0.0;        ///< max |Delta(z1, z2)|
  double Delta_equivariance = 0.0;
  double Delta_z_block = 0.0;
  double gradient_error = 0.0;    ///< relative analytic vs finite-difference error
};

/// Runs the seeded lifting property suite on one problem.
PropertyReport lifting_properties(const LiftingProblem& problem, int samples, std::uint64_t seed);

// ---- derivations of matrix representations ----

struct GroupLetter {
  std::size_t generator = 0;
  bool inverse = false;
  friend bool operator==(const GroupLetter&, const GroupLetter&) = default;
};
using GroupWord = std::vector<GroupLetter>;

std::string word_to_string(const GroupWord& w);

/// A pair (lambda(x), d(x)).
struct CocycleValue {
  RationalMatrix lambda;
  RationalMatrix d;
};

class DerivationTable {
public:
  /// Throws InvalidInput on size mismatches or a singular lambda.
  DerivationTable(std::vector<RationalMatrix> lambda, std::vector<RationalMatrix> d);

  std::size_t dimension() const { return dim_; }
  std::size_t generators() const { return lambda_.size(); }
  CocycleValue letter(const GroupLetter& a) const;
  CocycleValue identity() const;

private:
  std::size_t dim_ = 0;
  std::vector<RationalMatrix> lambda_;
  std::vector<RationalMatrix> lambda_inv_;
  std::vector<RationalMatrix> d_;
};

/// (lambda(x), d(x)) * (lambda(y), d(y)) = (lambda(xy), lambda(x) d(y) + d(x) lambda(y)).
CocycleValue cocycle_combine(const CocycleValue& x, const CocycleValue& y);

/// Left fold of the cocycle rule along the word.
CocycleValue cocycle_extend(const DerivationTable& table, const GroupWord& word);

struct CocycleInconsistency {
  GroupWord first;
  GroupWord second;
};

/// Words with equal lambda must have equal d; returns the first violating pair.
std::optional<CocycleInconsistency> cocycle_consistency(const DerivationTable& table,
                                                        const std::vector<GroupWord>& words);

struct InnerSolution {
  bool feasible = false;
  RationalMatrix particular;
  std::vector<RationalMatrix> basis;
  std::optional<InfeasibilityCertificate> certificate;
};

/// Solves d(a) = lambda(a) A - A lambda(a) for all given elements.
InnerSolution inner_derivation_solve(const std::vector<CocycleValue>& elements);
InnerSolution inner_derivation_solve(const DerivationTable& table);

struct ComplementCheck {
  std::vector<std::vector<Rational>> basis;  ///< graph vectors (-A e_j, e_j)
  bool invariant = true;
  bool block_diagonal = true;
  std::optional<std::size_t> failing_element;
};

/// Graph complement {(-A z, z)} of Y for block elements (u w; 0 v); checks
/// exactly that every element maps it into itself and that conjugation by
/// (Id A; 0 Id) removes the corner block. A is ny x nz.
ComplementCheck invariant_complement_from_A(const RationalMatrix& a, const std::vector<BlockElement>& elements);

/// The twisted representation (lambda d; 0 lambda) as a block element.
BlockElement twisted(const CocycleValue& x);

struct ClosureResult {
  std::vector<RationalMatrix> elements;
  double max_operator_norm = 0.0;
  bool closed = false;
};

/// Breadth-first closure under products with generators and their inverses,
/// stopping once more than `cap` elements exist.
ClosureResult group_closure(const std::vector<RationalMatrix>& generators, std::size_t cap);

double spectral_norm(const RationalMatrix& m);

struct InjectivityResult {
  bool injective = true;
  std::optional<std::pair<std::size_t, std::size_t>> collision;
};

/// Whether T -> (u_T, v_T) is injective on the element list.
InjectivityResult injectivity_check(const std::vector<RationalMatrix>& elements, std::size_t ny);
InjectivityResult injectivity_check(const LiftingProblem& problem);

struct NamedProblem {
  std::string name;
  std::size_t ny = 0;
  std::size_t nz = 0;
  std::vector<RationalMatrix> generators;
  NormSpec norm;
};

/// The shipped problem set used by the command line and acceptance suites.
std::vector<NamedProblem> shipped_problems();

/// Closes the generators (cap 256) and builds the problem; throws InvalidInput
/// when the closure does not complete.
LiftingProblem build_problem(const NamedProblem& spec, SolverOptions options = {});

} // namespace treelab
