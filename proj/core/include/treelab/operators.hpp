#pragma once

#include "treelab/automorphism.hpp"
#include "treelab/c00.hpp"

#include <optional>
#include <string>

namespace treelab {

/// A named operator on finitely supported vectors with a declared reach: an
/// input supported in the depth-d ball has output in the depth-(d + reach)
/// ball.
class TreeOperator {
public:
  enum class Kind { Lambda, L, Lstar, N, Derivation };

  static TreeOperator lambda(TreeAutomorphism g);
  static TreeOperator parent_map();
  static TreeOperator children_sum(int q);
  static TreeOperator adjacency(int q);
  static TreeOperator derivation(TreeAutomorphism g, int q);

  Kind kind() const { return kind_; }
  int q() const { return q_; }
  const std::optional<TreeAutomorphism>& automorphism() const { return g_; }

  /// Declared reach from the automorphism's static bound.
  std::size_t reach() const;
  /// Exact reach over the ball of the given radius (uses aut_reach).
  std::size_t reach(int q, int depth_bound) const;

  /// Applies the operator and throws ReachViolation if the output leaves the
  /// declared ball.
  FinSuppVector apply(const FinSuppVector& x) const;

  std::string name() const;

private:
  TreeOperator(Kind k, int q, std::optional<TreeAutomorphism> g) : kind_(k), q_(q), g_(std::move(g)) {}
  Kind kind_;
  int q_;
  std::optional<TreeAutomorphism> g_;
};

} // namespace treelab
