#pragma once

// Exact rational linear algebra: small dense matrices and a sparse
// fraction-free row eliminator used for null-space and affine solves.

#include "treelab/rational.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace treelab {

class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix zero(std::size_t rows, std::size_t cols) { return RationalMatrix(rows, cols); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix transpose() const;
  RationalMatrix block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t row0, std::size_t col0, const RationalMatrix& b);
  bool is_zero() const;

  /// Exact inverse via Gauss-Jordan; nullopt when singular or non-square.
  std::optional<RationalMatrix> inverse() const;
  std::size_t rank() const;

  Eigen::MatrixXd to_double() const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

  /// "[[a,b],[c,d]]" with rational entries.
  std::string to_string() const;
  static RationalMatrix parse(std::string_view text);

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

  RationalMatrix& operator+=(const RationalMatrix& o);
  RationalMatrix& operator-=(const RationalMatrix& o);
  RationalMatrix& operator*=(const Rational& c);
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator*(const Rational& c, RationalMatrix a) { return a *= c; }
  friend RationalMatrix operator-(RationalMatrix a) { return a *= Rational(-1); }
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Sparse rational vector: (index, nonzero value) pairs sorted by index.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

SparseVec sparse_from_dense(const std::vector<Rational>& dense);
std::vector<Rational> dense_from_sparse(const SparseVec& v, std::size_t n);
Rational sparse_dot(const SparseVec& a, const std::vector<Rational>& dense);

/// Witness that a linear system is inconsistent: `combination` weights the
/// original rows (by insertion index) so that the left-hand sides cancel while
/// the right-hand sides sum to `rhs_value` != 0.
struct InfeasibilityCertificate {
  SparseVec combination;
  Rational rhs_value;
};

/// Incremental exact Gaussian elimination over Q on sparse rows.
///
/// Rows are kept as primitive integer vectors (fraction-free updates
/// r <- a*r - b*p followed by content removal). Every stored row has its pivot
/// at its smallest column, which keeps elimination local for the two-term
/// constraint rows produced by permutation actions.
class ExactEliminator {
public:
  explicit ExactEliminator(std::size_t cols, bool track_certificate = false);

  std::size_t cols() const { return cols_; }
  std::size_t rows_added() const { return rows_added_; }
  std::size_t rank() const { return rows_.size(); }
  bool consistent() const { return !certificate_.has_value(); }
  const std::optional<InfeasibilityCertificate>& certificate() const { return certificate_; }

  /// Adds the equation row . x = rhs.
  void add_row(const SparseVec& row, const Rational& rhs = 0);

  /// True if the row is a combination of the rows added so far.
  bool in_row_space(const SparseVec& row) const;

  std::vector<std::size_t> pivot_columns() const;
  std::vector<std::size_t> free_columns() const;

  /// A solution with all free variables zero. Requires consistency.
  SparseVec particular_solution();
  /// One basis vector per free column, with a 1 in that column.
  std::vector<SparseVec> null_space_basis();

private:
  struct Row {
    std::vector<std::pair<std::size_t, Integer>> entries;
    Integer rhs;
    SparseVec combination;
  };

  void eliminate(Row& r, const Row& pivot, std::size_t at, bool track) const;
  void reduce(Row& r, bool track) const;
  void make_reduced();
  static void normalize(Row& r);

  std::size_t cols_;
  bool track_;
  std::size_t rows_added_ = 0;
  std::vector<Row> rows_;
  std::vector<long> pivot_row_;
  bool reduced_ = true;
  std::optional<InfeasibilityCertificate> certificate_;
};

/// Rank of a family of sparse vectors of length n.
std::size_t sparse_rank(const std::vector<SparseVec>& vectors, std::size_t n);

/// Sylvester's criterion for a symmetric matrix: every leading principal
/// minor is positive. Exact; returns false for non-symmetric input.
bool is_positive_definite(const RationalMatrix& m);

} // namespace treelab
