#include "treelab/linalg.hpp"

#include "treelab/errors.hpp"

#include <algorithm>
#include <cctype>

namespace treelab {

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_)
      throw DimensionMismatch("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix RationalMatrix::block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const {
  if (row0 + rows > rows_ || col0 + cols > cols_)
    throw DimensionMismatch("block out of range");
  RationalMatrix b(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      b(i, j) = (*this)(row0 + i, col0 + j);
  return b;
}

void RationalMatrix::set_block(std::size_t row0, std::size_t col0, const RationalMatrix& b) {
  if (row0 + b.rows_ > rows_ || col0 + b.cols_ > cols_)
    throw DimensionMismatch("block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j)
      (*this)(row0 + i, col0 + j) = b(i, j);
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
}

std::optional<RationalMatrix> RationalMatrix::inverse() const {
  if (!is_square())
    return std::nullopt;
  const std::size_t n = rows_;
  RationalMatrix a = *this;
  RationalMatrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0)
      ++piv;
    if (piv == n)
      return std::nullopt;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const Rational p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0)
        continue;
      const Rational f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

std::size_t RationalMatrix::rank() const {
  RationalMatrix a = *this;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
    std::size_t piv = rank;
    while (piv < rows_ && a(piv, col) == 0)
      ++piv;
    if (piv == rows_)
      continue;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap(a(piv, j), a(rank, j));
    for (std::size_t i = rank + 1; i < rows_; ++i) {
      if (a(i, col) == 0)
        continue;
      const Rational f = a(i, col) / a(rank, col);
      for (std::size_t j = col; j < cols_; ++j)
        a(i, j) -= f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).get_d();
  return m;
}

Eigen::VectorXd RationalMatrix::apply(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != cols_)
    throw DimensionMismatch("matrix-vector size mismatch");
  return to_double() * x;
}

std::string RationalMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i)
      out.push_back(',');
    out.push_back('[');
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j)
        out.push_back(',');
      out += treelab::to_string((*this)(i, j));
    }
    out.push_back(']');
  }
  out.push_back(']');
  return out;
}

RationalMatrix RationalMatrix::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s.push_back(c);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError("matrix text must look like [[...],[...]]");
  std::vector<std::vector<Rational>> rows;
  std::size_t pos = 1;
  while (pos < s.size() - 1) {
    if (s[pos] != '[')
      throw ParseError("expected '[' at start of matrix row");
    const auto close = s.find(']', pos);
    if (close == std::string::npos)
      throw ParseError("unterminated matrix row");
    std::vector<Rational> row;
    std::size_t start = pos + 1;
    while (start < close) {
      auto comma = s.find(',', start);
      if (comma == std::string::npos || comma > close)
        comma = close;
      row.push_back(parse_rational(s.substr(start, comma - start)));
      start = comma + 1;
    }
    rows.push_back(std::move(row));
    pos = close + 1;
    if (pos < s.size() - 1) {
      if (s[pos] != ',')
        throw ParseError("expected ',' between matrix rows");
      ++pos;
    }
  }
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw ParseError("ragged matrix text");
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = rows[i][j];
  }
  return m;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatch("matrix sum dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k)
    data_[k] += o.data_[k];
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatch("matrix difference dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k)
    data_[k] -= o.data_[k];
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& c) {
  for (auto& x : data_)
    x *= c;
  return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_)
    throw DimensionMismatch("matrix product dimension mismatch");
  RationalMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0)
        continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        c(i, j) += aik * b(k, j);
    }
  return c;
}

SparseVec sparse_from_dense(const std::vector<Rational>& dense) {
  SparseVec v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0)
      v.emplace_back(i, dense[i]);
  return v;
}

std::vector<Rational> dense_from_sparse(const SparseVec& v, std::size_t n) {
  std::vector<Rational> d(n, Rational(0));
  for (const auto& [i, x] : v) {
    if (i >= n)
      throw DimensionMismatch("sparse index out of range");
    d[i] = x;
  }
  return d;
}

Rational sparse_dot(const SparseVec& a, const std::vector<Rational>& dense) {
  Rational s = 0;
  for (const auto& [i, x] : a)
    s += x * dense.at(i);
  return s;
}

// ---- ExactEliminator -------------------------------------------------------

namespace {

SparseVec combine_sparse(const Rational& a, const SparseVec& x, const Rational& b, const SparseVec& y) {
  // a*x - b*y
  SparseVec out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      Rational v = a * x[i].second - b * y[j].second;
      if (v != 0)
        out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

} // namespace

ExactEliminator::ExactEliminator(std::size_t cols, bool track_certificate)
    : cols_(cols), track_(track_certificate), pivot_row_(cols, -1) {}

void ExactEliminator::normalize(Row& r) {
  Integer g = r.rhs;
  for (const auto& [c, x] : r.entries) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1)
      return;
  }
  if (g == 0 || g == 1)
    return;
  for (auto& [c, x] : r.entries)
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(r.rhs.get_mpz_t(), r.rhs.get_mpz_t(), g.get_mpz_t());
  for (auto& [c, x] : r.combination)
    x /= g;
}

void ExactEliminator::eliminate(Row& r, const Row& pivot, std::size_t at, bool track) const {
  // r <- a*r - b*pivot, where a is the pivot's leading coefficient and b the
  // coefficient of r in the pivot column.
  const Integer a = pivot.entries.front().second;
  const Integer b = r.entries[at].second;
  std::vector<std::pair<std::size_t, Integer>> out;
  out.reserve(r.entries.size() + pivot.entries.size());
  std::size_t i = 0, j = 0;
  const auto& x = r.entries;
  const auto& y = pivot.entries;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      Integer v = a * x[i].second - b * y[j].second;
      if (v != 0)
        out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  r.entries = std::move(out);
  r.rhs = a * r.rhs - b * pivot.rhs;
  if (track)
    r.combination = combine_sparse(Rational(a), r.combination, Rational(b), pivot.combination);
  normalize(r);
}

void ExactEliminator::reduce(Row& r, bool track) const {
  std::size_t i = 0;
  while (i < r.entries.size()) {
    const long p = pivot_row_[r.entries[i].first];
    if (p < 0) {
      ++i;
      continue;
    }
    eliminate(r, rows_[static_cast<std::size_t>(p)], i, track);
  }
}

void ExactEliminator::add_row(const SparseVec& row, const Rational& rhs) {
  const std::size_t index = rows_added_++;
  Row r;
  Integer lcm = rhs.get_den();
  for (const auto& [c, x] : row) {
    if (c >= cols_)
      throw DimensionMismatch("row index beyond eliminator width");
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  }
  for (const auto& [c, x] : row) {
    if (x == 0)
      continue;
    if (!r.entries.empty() && r.entries.back().first >= c)
      throw InvalidInput("sparse row indices must be strictly increasing");
    Integer v = x.get_num() * (lcm / x.get_den());
    r.entries.emplace_back(c, std::move(v));
  }
  r.rhs = rhs.get_num() * (lcm / rhs.get_den());
  if (track_)
    r.combination.emplace_back(index, Rational(lcm));
  normalize(r);
  reduce(r, track_);
  if (r.entries.empty()) {
    if (r.rhs != 0 && !certificate_)
      certificate_ = InfeasibilityCertificate{r.combination, Rational(r.rhs)};
    return;
  }
  if (r.entries.front().second < 0) {
    for (auto& [c, x] : r.entries)
      x = -x;
    r.rhs = -r.rhs;
    for (auto& [c, x] : r.combination)
      x = -x;
  }
  pivot_row_[r.entries.front().first] = static_cast<long>(rows_.size());
  rows_.push_back(std::move(r));
  reduced_ = false;
}

bool ExactEliminator::in_row_space(const SparseVec& row) const {
  Row r;
  Integer lcm = 1;
  for (const auto& [c, x] : row)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  for (const auto& [c, x] : row)
    if (x != 0)
      r.entries.emplace_back(c, x.get_num() * (lcm / x.get_den()));
  r.rhs = 0;
  reduce(r, false);
  return r.entries.empty();
}

std::vector<std::size_t> ExactEliminator::pivot_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < cols_; ++c)
    if (pivot_row_[c] >= 0)
      out.push_back(c);
  return out;
}

std::vector<std::size_t> ExactEliminator::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < cols_; ++c)
    if (pivot_row_[c] < 0)
      out.push_back(c);
  return out;
}

void ExactEliminator::make_reduced() {
  if (reduced_)
    return;
  // Back-substitute from the highest pivot column down so that every pivot
  // row ends up containing only its pivot and free columns.
  const auto pivots = pivot_columns();
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    Row& r = rows_[static_cast<std::size_t>(pivot_row_[*it])];
    std::size_t i = 1;
    while (i < r.entries.size()) {
      const long p = pivot_row_[r.entries[i].first];
      if (p < 0) {
        ++i;
        continue;
      }
      eliminate(r, rows_[static_cast<std::size_t>(p)], i, track_);
    }
    if (r.entries.front().second < 0) {
      for (auto& [c, x] : r.entries)
        x = -x;
      r.rhs = -r.rhs;
      for (auto& [c, x] : r.combination)
        x = -x;
    }
  }
  reduced_ = true;
}

SparseVec ExactEliminator::particular_solution() {
  if (!consistent())
    throw InvalidInput("particular solution requested for an inconsistent system");
  make_reduced();
  SparseVec x;
  for (const auto c : pivot_columns()) {
    const Row& r = rows_[static_cast<std::size_t>(pivot_row_[c])];
    if (r.rhs != 0) {
      Rational v(r.rhs, r.entries.front().second);
      v.canonicalize();
      x.emplace_back(c, std::move(v));
    }
  }
  return x;
}

std::vector<SparseVec> ExactEliminator::null_space_basis() {
  make_reduced();
  const auto frees = free_columns();
  std::vector<long> free_index(cols_, -1);
  for (std::size_t k = 0; k < frees.size(); ++k)
    free_index[frees[k]] = static_cast<long>(k);
  std::vector<SparseVec> basis(frees.size());
  for (std::size_t k = 0; k < frees.size(); ++k)
    basis[k].emplace_back(frees[k], Rational(1));
  for (const auto c : pivot_columns()) {
    const Row& r = rows_[static_cast<std::size_t>(pivot_row_[c])];
    const Integer& lead = r.entries.front().second;
    for (std::size_t i = 1; i < r.entries.size(); ++i) {
      const long k = free_index[r.entries[i].first];
      Rational v(-r.entries[i].second, lead);
      v.canonicalize();
      basis[static_cast<std::size_t>(k)].emplace_back(c, std::move(v));
    }
  }
  for (auto& b : basis)
    std::sort(b.begin(), b.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return basis;
}

std::size_t sparse_rank(const std::vector<SparseVec>& vectors, std::size_t n) {
  ExactEliminator e(n);
  for (const auto& v : vectors)
    e.add_row(v);
  return e.rank();
}

bool is_positive_definite(const RationalMatrix& m) {
  if (!m.is_square() || m != m.transpose())
    return false;
  // Elimination without pivoting: the k-th pivot is the ratio of consecutive
  // leading minors, so all minors are positive iff all pivots are.
  RationalMatrix a = m;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) <= 0)
      return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0)
        continue;
      const Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j)
        a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

} // namespace treelab
