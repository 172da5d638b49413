#include "treelab/truncation.hpp"

#include "treelab/derivation.hpp"
#include "treelab/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace treelab {

Ball::Ball(int q, int depth) : q_(q), depth_(depth), vertices_(ball_vertices(q, depth)) {
  if (depth < 0)
    throw InvalidInput("ball depth must be non-negative");
  index_.reserve(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    index_.emplace(vertices_[i], i);
}

std::optional<std::size_t> Ball::index(const Vertex& v) const {
  auto it = index_.find(v);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

std::size_t Ball::prefix_size(int d) const {
  if (d < 0)
    return 0;
  return ball_size(q_, std::min(d, depth_));
}

Ball enumerate_ball(int q, int depth) { return Ball(q, depth); }

Rational BallMatrix::entry(std::size_t t, std::size_t s) const {
  for (const auto& [row, value] : columns.at(s))
    if (row == t)
      return value;
  return 0;
}

RationalMatrix BallMatrix::dense() const {
  RationalMatrix m(n, n);
  for (std::size_t s = 0; s < n; ++s)
    for (const auto& [t, value] : columns[s])
      m(t, s) = value;
  return m;
}

BallMatrix matrix_of(const TreeOperator& op, const Ball& ball) {
  BallMatrix m;
  m.n = ball.size();
  m.reach = op.reach(ball.q(), ball.depth());
  m.columns.resize(m.n);
  m.boundary.assign(m.n, false);
  for (std::size_t s = 0; s < m.n; ++s) {
    const Vertex& v = ball.vertex(s);
    const FinSuppVector y = op.apply(FinSuppVector::dirac(v));
    for (const auto& [t, c] : y)
      if (auto i = ball.index(t))
        m.columns[s].emplace_back(*i, c);
    std::sort(m.columns[s].begin(), m.columns[s].end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    m.boundary[s] = static_cast<int>(v.depth()) > ball.depth() - static_cast<int>(m.reach);
  }
  return m;
}

Rational LinearSystem::max_abs_residual(const std::vector<Rational>& x) const {
  Rational worst = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Rational r = abs_value(sparse_dot(rows[k], x) - rhs[k]);
    if (r > worst)
      worst = r;
  }
  return worst;
}

namespace {

std::size_t sym_index(std::size_t i, std::size_t j, std::size_t n) {
  if (i > j)
    std::swap(i, j);
  return i * n - (i == 0 ? 0 : i * (i - 1) / 2) + (j - i);
}

std::size_t unknown_count(UnknownLayout layout, std::size_t n) {
  return layout == UnknownLayout::full ? n * n : n * (n + 1) / 2;
}

struct Window {
  std::size_t window_size = 0;
  std::size_t interior_size = 0;
};

Window prepare(const std::vector<TreeAutomorphism>& generators, const Ball& ball, int margin) {
  if (margin < 0)
    throw InvalidInput("margin must be non-negative");
  if (ball.depth() - margin < 0)
    throw DegenerateWindow("window is empty: margin exceeds ball depth");
  const std::size_t need = required_margin(generators, ball);
  if (static_cast<std::size_t>(margin) < need)
    throw ReachViolation("margin " + std::to_string(margin) + " is below the generator reach " +
                         std::to_string(need));
  Window w;
  w.window_size = ball.prefix_size(ball.depth() - margin);
  w.interior_size = ball.prefix_size(ball.depth() - 2 * margin);
  return w;
}

/// Row-wise view of a column-sparse section: rows[t] = (u, value) with M(t,u).
std::vector<SparseVec> transpose_columns(const BallMatrix& m) {
  std::vector<SparseVec> rows(m.n);
  for (std::size_t s = 0; s < m.n; ++s)
    for (const auto& [t, value] : m.columns[s])
      rows[t].emplace_back(s, value);
  return rows;
}

SparseVec to_sparse(std::map<std::size_t, Rational>& acc) {
  SparseVec row;
  row.reserve(acc.size());
  for (auto& [i, v] : acc)
    if (v != 0)
      row.emplace_back(i, std::move(v));
  return row;
}

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t checksum_of(const SolutionSpace& sp) {
  std::uint64_t h = 14695981039346656037ull;
  for (const auto& b : sp.basis) {
    for (const auto& [i, v] : b)
      h = fnv1a(h, std::to_string(i) + ":" + v.get_str() + ";");
    h = fnv1a(h, "|");
  }
  for (const auto& [i, v] : sp.particular)
    h = fnv1a(h, "p" + std::to_string(i) + ":" + v.get_str() + ";");
  return h;
}

SolutionSpace solve_system(std::string solver, LinearSystem system, const std::vector<TreeAutomorphism>& generators,
                           const Ball& ball, int margin, const Window& w, UnknownLayout layout) {
  SolutionSpace sp;
  sp.n = ball.size();
  sp.layout = layout;
  ExactEliminator e(system.unknowns);
  for (std::size_t k = 0; k < system.rows.size(); ++k)
    e.add_row(system.rows[k], system.rhs[k]);
  if (!e.consistent()) {
    // Rerun with provenance tracking to obtain a certificate.
    ExactEliminator tracked(system.unknowns, true);
    for (std::size_t k = 0; k < system.rows.size() && tracked.consistent(); ++k)
      tracked.add_row(system.rows[k], system.rhs[k]);
    sp.infeasible = tracked.certificate();
  } else {
    sp.particular = e.particular_solution();
  }
  sp.basis = e.null_space_basis();
  sp.report.solver = std::move(solver);
  sp.report.q = ball.q();
  sp.report.depth = ball.depth();
  sp.report.margin = margin;
  for (const auto& g : generators)
    sp.report.generators.push_back(g.to_string());
  sp.report.unknowns = system.unknowns;
  sp.report.constraints = system.rows.size();
  sp.report.window_size = w.window_size;
  sp.report.interior_size = w.interior_size;
  sp.report.full_dimension = sp.basis.size();
  sp.report.consistent = !sp.infeasible.has_value();
  sp.system = std::move(system);
  sp.report.interior_dimension =
      w.interior_size == 0 ? 0 : sparse_rank(sp.restricted_basis(w.interior_size), w.interior_size * w.interior_size);
  sp.report.checksum = checksum_of(sp);
  return sp;
}

} // namespace

RationalMatrix SolutionSpace::to_matrix(const SparseVec& x) const {
  RationalMatrix m(n, n);
  if (layout == UnknownLayout::full) {
    for (const auto& [k, v] : x)
      m(k / n, k % n) = v;
  } else {
    std::vector<Rational> dense = dense_from_sparse(x, unknown_count(layout, n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        m(i, j) = dense[sym_index(i, j, n)];
        m(j, i) = m(i, j);
      }
  }
  return m;
}

std::vector<Rational> SolutionSpace::to_unknowns(const RationalMatrix& m) const {
  if (m.rows() != n || m.cols() != n)
    throw DimensionMismatch("matrix does not match the ball size");
  std::vector<Rational> x(unknown_count(layout, n), Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (layout == UnknownLayout::full)
        x[i * n + j] = m(i, j);
      else if (i <= j)
        x[sym_index(i, j, n)] = m(i, j);
    }
  return x;
}

bool SolutionSpace::residuals_vanish() const {
  // Column-wise index of the basis, so each row touches only the basis
  // vectors that share a column with it.
  std::unordered_map<std::size_t, std::vector<std::pair<std::size_t, const Rational*>>> by_column;
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (const auto& [k, v] : basis[b])
      by_column[k].emplace_back(b, &v);
  const std::vector<Rational> part = dense_from_sparse(particular, system.unknowns);
  std::map<std::size_t, Rational> acc;
  for (std::size_t r = 0; r < system.rows.size(); ++r) {
    acc.clear();
    for (const auto& [k, coeff] : system.rows[r]) {
      auto it = by_column.find(k);
      if (it == by_column.end())
        continue;
      for (const auto& [b, v] : it->second)
        acc[b] += coeff * *v;
    }
    for (const auto& [b, v] : acc)
      if (v != 0)
        return false;
    if (!infeasible && sparse_dot(system.rows[r], part) != system.rhs[r])
      return false;
  }
  return true;
}

std::vector<SparseVec> SolutionSpace::restricted_basis(std::size_t m) const {
  std::vector<SparseVec> out;
  out.reserve(basis.size());
  std::vector<std::size_t> row_of;
  std::vector<std::size_t> col_of;
  if (layout == UnknownLayout::symmetric) {
    const std::size_t total = unknown_count(layout, n);
    row_of.resize(total);
    col_of.resize(total);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        row_of[sym_index(i, j, n)] = i;
        col_of[sym_index(i, j, n)] = j;
      }
  }
  for (const auto& b : basis) {
    std::map<std::size_t, Rational> acc;
    for (const auto& [k, v] : b) {
      const std::size_t i = layout == UnknownLayout::full ? k / n : row_of[k];
      const std::size_t j = layout == UnknownLayout::full ? k % n : col_of[k];
      if (i < m && j < m) {
        acc[i * m + j] += v;
        if (layout == UnknownLayout::symmetric && i != j)
          acc[j * m + i] += v;
      }
    }
    SparseVec r = to_sparse(acc);
    if (!r.empty())
      out.push_back(std::move(r));
  }
  return out;
}

bool SolutionSpace::restriction_contains(const RationalMatrix& target, std::size_t m) const {
  ExactEliminator e(m * m);
  for (const auto& r : restricted_basis(m))
    e.add_row(r);
  SparseVec t;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (target(i, j) != 0)
        t.emplace_back(i * m + j, target(i, j));
  return e.in_row_space(t);
}

std::size_t required_margin(const std::vector<TreeAutomorphism>& generators, const Ball& ball) {
  std::size_t need = 0;
  for (const auto& g : generators) {
    need = std::max(need, aut_reach(g, ball.q(), ball.depth()));
    need = std::max(need, aut_reach(aut_invert(g), ball.q(), ball.depth()));
  }
  return need;
}

SolutionSpace commutant_solve(const std::vector<TreeAutomorphism>& generators, const Ball& ball, int margin) {
  const Window w = prepare(generators, ball, margin);
  const std::size_t n = ball.size();
  LinearSystem sys;
  sys.unknowns = n * n;
  for (const auto& g : generators) {
    const BallMatrix lam = matrix_of(TreeOperator::lambda(g), ball);
    const auto lam_rows = transpose_columns(lam);
    for (std::size_t t = 0; t < w.window_size; ++t)
      for (std::size_t s = 0; s < w.window_size; ++s) {
        // (S lambda)_{t,s} - (lambda S)_{t,s}
        std::map<std::size_t, Rational> acc;
        for (const auto& [u, value] : lam.columns[s])
          acc[t * n + u] += value;
        for (const auto& [u, value] : lam_rows[t])
          acc[u * n + s] -= value;
        SparseVec row = to_sparse(acc);
        if (!row.empty()) {
          sys.rows.push_back(std::move(row));
          sys.rhs.emplace_back(0);
        }
      }
  }
  return solve_system("commutant", std::move(sys), generators, ball, margin, w, UnknownLayout::full);
}

SolutionSpace invariant_gram_solve(const std::vector<TreeAutomorphism>& generators, const Ball& ball, int margin) {
  const Window w = prepare(generators, ball, margin);
  const std::size_t n = ball.size();
  LinearSystem sys;
  sys.unknowns = n * (n + 1) / 2;
  for (const auto& g : generators) {
    const BallMatrix lam = matrix_of(TreeOperator::lambda(g), ball);
    for (std::size_t t = 0; t < w.window_size; ++t)
      for (std::size_t s = t; s < w.window_size; ++s) {
        // (lambda^T A lambda)_{t,s} - A_{t,s}
        std::map<std::size_t, Rational> acc;
        for (const auto& [u, lu] : lam.columns[t])
          for (const auto& [v, lv] : lam.columns[s])
            acc[sym_index(u, v, n)] += lu * lv;
        acc[sym_index(t, s, n)] -= 1;
        SparseVec row = to_sparse(acc);
        if (!row.empty()) {
          sys.rows.push_back(std::move(row));
          sys.rhs.emplace_back(0);
        }
      }
  }
  return solve_system("gram", std::move(sys), generators, ball, margin, w, UnknownLayout::symmetric);
}

SolutionSpace intertwiner_solve(const std::vector<TreeAutomorphism>& generators, const Ball& ball, int margin) {
  const Window w = prepare(generators, ball, margin);
  const std::size_t n = ball.size();
  LinearSystem sys;
  sys.unknowns = n * n;
  for (const auto& g : generators) {
    const BallMatrix lam = matrix_of(TreeOperator::lambda(g), ball);
    const auto lam_rows = transpose_columns(lam);
    for (std::size_t s = 0; s < w.window_size; ++s) {
      const FinSuppVector ds = d_apply(g, FinSuppVector::dirac(ball.vertex(s)), ball.q());
      for (std::size_t t = 0; t < w.window_size; ++t) {
        // (A lambda)_{t,s} - (lambda A)_{t,s} = d(g)_{t,s}
        std::map<std::size_t, Rational> acc;
        for (const auto& [u, value] : lam.columns[s])
          acc[t * n + u] += value;
        for (const auto& [u, value] : lam_rows[t])
          acc[u * n + s] -= value;
        SparseVec row = to_sparse(acc);
        Rational rhs = ds.at(ball.vertex(t));
        if (!row.empty() || rhs != 0) {
          sys.rows.push_back(std::move(row));
          sys.rhs.push_back(std::move(rhs));
        }
      }
    }
  }
  return solve_system("intertwiner", std::move(sys), generators, ball, margin, w, UnknownLayout::full);
}

std::optional<RationalMatrix> interior_positive_definite_witness(const SolutionSpace& space, std::size_t m,
                                                                 std::uint64_t seed) {
  const RationalMatrix id = RationalMatrix::identity(m);
  if (m == 0)
    return id;
  if (space.restriction_contains(id, m) && is_positive_definite(id))
    return id;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  RationalMatrix candidate(m, m);
  for (const auto& b : space.restricted_basis(m)) {
    const Rational c = coeff(rng);
    for (const auto& [k, v] : b)
      candidate(k / m, k % m) += c * v;
  }
  if (is_positive_definite(candidate))
    return candidate;
  return std::nullopt;
}

bool same_restricted_span(const std::vector<SparseVec>& a, const std::vector<SparseVec>& b, std::size_t m) {
  const std::size_t dim = m * m;
  std::vector<SparseVec> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t ra = sparse_rank(a, dim);
  return ra == sparse_rank(b, dim) && ra == sparse_rank(both, dim);
}

namespace {

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return;
    if (size_[a] < size_[b])
      std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
  }
  std::size_t components() const { return components_; }

private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

} // namespace

std::size_t pair_orbit_count(const std::vector<TreeAutomorphism>& generators, const Ball& ball, bool unordered) {
  for (const auto& g : generators)
    if (!g.apply(Vertex::root()).is_root())
      throw InvalidInput("pair_orbit_count needs root-fixing generators; " + g.to_string() + " moves the root");
  const std::size_t n = ball.size();
  DisjointSets sets(n * n);
  std::vector<std::size_t> image(n);
  for (const auto& g : generators) {
    for (std::size_t i = 0; i < n; ++i)
      image[i] = *ball.index(g.apply(ball.vertex(i)));
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t s = 0; s < n; ++s)
        sets.unite(t * n + s, image[t] * n + image[s]);
  }
  if (unordered)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t s = t + 1; s < n; ++s)
        sets.unite(t * n + s, s * n + t);
  return sets.components();
}

std::vector<std::pair<int, Rational>> lstar_growth(const std::vector<int>& q_list, int depth) {
  if (depth < 1)
    throw InvalidInput("lstar_growth needs depth >= 1");
  std::vector<std::pair<int, Rational>> out;
  for (int q : q_list) {
    const Ball ball(q, depth);
    const BallMatrix m = matrix_of(TreeOperator::children_sum(q), ball);
    // Gram matrix M^T M; the child sets of distinct vertices are disjoint so it
    // is diagonal and its largest entry is the squared operator norm.
    std::vector<SparseVec> rows = transpose_columns(m);
    std::vector<Rational> diag(m.n, Rational(0));
    bool diagonal = true;
    for (const auto& row : rows) {
      for (std::size_t a = 0; a < row.size(); ++a) {
        diag[row[a].first] += row[a].second * row[a].second;
        if (row.size() > 1)
          diagonal = false;
      }
    }
    if (!diagonal)
      throw NumericalInconsistency("L* section has overlapping columns");
    Rational best = 0;
    for (const auto& d : diag)
      if (d > best)
        best = d;
    out.emplace_back(q, best);
  }
  return out;
}

std::vector<TreeAutomorphism> portrait_generators(int q, int portrait_depth) {
  std::vector<TreeAutomorphism> gens;
  if (portrait_depth <= 0)
    return gens;
  for (const auto& v : ball_vertices(q, portrait_depth - 1)) {
    const std::size_t k = child_count(v, q);
    if (k < 2)
      continue;
    TreeAutomorphism::Permutation swap(k);
    std::iota(swap.begin(), swap.end(), Letter{0});
    std::swap(swap[0], swap[1]);
    gens.push_back(TreeAutomorphism::portrait(q, portrait_depth, {{v, swap}}));
    if (k >= 3) {
      TreeAutomorphism::Permutation cycle(k);
      for (std::size_t i = 0; i < k; ++i)
        cycle[i] = static_cast<Letter>((i + 1) % k);
      gens.push_back(TreeAutomorphism::portrait(q, portrait_depth, {{v, cycle}}));
    }
  }
  return gens;
}

std::vector<TreeAutomorphism> default_generators(int q, int portrait_depth) {
  auto gens = portrait_generators(q, portrait_depth);
  gens.push_back(TreeAutomorphism::translation(Vertex{1}));
  gens.push_back(TreeAutomorphism::translation(Vertex{2}));
  return gens;
}

std::vector<TreeAutomorphism> default_gap_generators(int q) {
  auto cycle = [](std::size_t k, std::size_t shift) {
    TreeAutomorphism::Permutation p(k);
    for (std::size_t i = 0; i < k; ++i)
      p[i] = static_cast<Letter>((i + shift) % k);
    return p;
  };
  const std::size_t rk = static_cast<std::size_t>(q);
  const std::size_t ck = static_cast<std::size_t>(q - 1);
  std::map<Vertex, TreeAutomorphism::Permutation> a{{Vertex(), cycle(rk, 1)}};
  std::map<Vertex, TreeAutomorphism::Permutation> b{{Vertex(), cycle(rk, rk - 1)}, {Vertex{1}, cycle(ck, 1)}};
  std::map<Vertex, TreeAutomorphism::Permutation> c;
  for (int letter = 1; letter <= q; ++letter)
    c.emplace(Vertex{static_cast<Letter>(letter)}, cycle(ck, 1));
  return {TreeAutomorphism::portrait(q, 2, a), TreeAutomorphism::portrait(q, 2, b),
          TreeAutomorphism::portrait(q, 2, c)};
}

} // namespace treelab
