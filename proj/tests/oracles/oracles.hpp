#pragma once

// Reference computations used by the tests. Each one takes a different route
// from the library code it checks, usually brute force or dense floating-point
// linear algebra.

#include "treelab/automorphism.hpp"
#include "treelab/c00.hpp"
#include "treelab/truncation.hpp"

#include <Eigen/Dense>

#include <set>
#include <utility>
#include <vector>

namespace oracle {

using treelab::Ball;
using treelab::TreeAutomorphism;
using treelab::Vertex;

// Orbits of ordered (or unordered) vertex pairs, found by flooding each
// unvisited pair with every generator and inverse until nothing new appears.
inline std::size_t pair_orbits(const std::vector<TreeAutomorphism>& gens, const Ball& ball, bool unordered) {
  const std::size_t n = ball.size();
  auto key = [&](std::size_t a, std::size_t b) {
    if (unordered && b < a)
      std::swap(a, b);
    return std::make_pair(a, b);
  };
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::size_t orbits = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (seen.count(key(a, b)))
        continue;
      ++orbits;
      std::vector<std::pair<std::size_t, std::size_t>> stack{key(a, b)};
      seen.insert(key(a, b));
      while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        for (const auto& g : gens)
          for (int dir = 0; dir < 2; ++dir) {
            const Vertex gx = dir ? g.apply_inverse(ball.vertex(x)) : g.apply(ball.vertex(x));
            const Vertex gy = dir ? g.apply_inverse(ball.vertex(y)) : g.apply(ball.vertex(y));
            const auto k = key(*ball.index(gx), *ball.index(gy));
            if (seen.insert(k).second)
              stack.push_back(k);
          }
      }
    }
  return orbits;
}

// Permutation matrix of a root-fixing automorphism on the ball.
inline Eigen::MatrixXd permutation(const TreeAutomorphism& g, const Ball& ball) {
  const auto n = static_cast<Eigen::Index>(ball.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index s = 0; s < n; ++s)
    p(static_cast<Eigen::Index>(*ball.index(g.apply(ball.vertex(s)))), s) = 1.0;
  return p;
}

// Dimension of {A : P A = A P for all generators} via the Kronecker form of
// the constraints and a floating-point rank.
inline std::size_t commutant_dimension(const std::vector<TreeAutomorphism>& gens, const Ball& ball) {
  const auto n = static_cast<Eigen::Index>(ball.size());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(gens.size()) * n * n, n * n);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const Eigen::MatrixXd p = permutation(gens[k], ball);
    Eigen::MatrixXd block(n * n, n * n);
    // vec(PA - AP) = (I (x) P - P^T (x) I) vec(A), column-major vec.
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        block.block(i * n, j * n, n, n) = id(i, j) * p - p(j, i) * id;
    stacked.block(static_cast<Eigen::Index>(k) * n * n, 0, n * n, n * n) = block;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(stacked);
  return static_cast<std::size_t>(n * n - lu.rank());
}

// d(g)x by its defining formula L* lambda(g) x - lambda(g) L* x.
inline treelab::FinSuppVector d_definition(const TreeAutomorphism& g, const treelab::FinSuppVector& x, int q) {
  return treelab::apply_Lstar(treelab::apply_lambda(g, x), q) - treelab::apply_lambda(g, treelab::apply_Lstar(x, q));
}

} // namespace oracle
