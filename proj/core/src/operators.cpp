#include "treelab/operators.hpp"

#include "treelab/derivation.hpp"
#include "treelab/errors.hpp"

namespace treelab {

TreeOperator TreeOperator::lambda(TreeAutomorphism g) { return TreeOperator(Kind::Lambda, 0, std::move(g)); }
TreeOperator TreeOperator::parent_map() { return TreeOperator(Kind::L, 0, std::nullopt); }
TreeOperator TreeOperator::children_sum(int q) { return TreeOperator(Kind::Lstar, q, std::nullopt); }
TreeOperator TreeOperator::adjacency(int q) { return TreeOperator(Kind::N, q, std::nullopt); }
TreeOperator TreeOperator::derivation(TreeAutomorphism g, int q) {
  return TreeOperator(Kind::Derivation, q, std::move(g));
}

std::size_t TreeOperator::reach() const {
  switch (kind_) {
  case Kind::L:
  case Kind::Lstar:
  case Kind::N:
    return 1;
  case Kind::Lambda:
    return g_->reach_bound();
  case Kind::Derivation:
    return g_->reach_bound() + 1;
  }
  return 0;
}

std::size_t TreeOperator::reach(int q, int depth_bound) const {
  switch (kind_) {
  case Kind::L:
  case Kind::Lstar:
  case Kind::N:
    return 1;
  case Kind::Lambda:
    return aut_reach(*g_, q, depth_bound);
  case Kind::Derivation:
    return aut_reach(*g_, q, depth_bound) + 1;
  }
  return 0;
}

FinSuppVector TreeOperator::apply(const FinSuppVector& x) const {
  FinSuppVector y;
  switch (kind_) {
  case Kind::Lambda:
    y = apply_lambda(*g_, x);
    break;
  case Kind::L:
    y = apply_L(x);
    break;
  case Kind::Lstar:
    y = apply_Lstar(x, q_);
    break;
  case Kind::N:
    y = apply_N(x, q_);
    break;
  case Kind::Derivation:
    y = d_apply(*g_, x, q_);
    break;
  }
  if (!y.is_zero() && y.max_depth() > x.max_depth() + reach())
    throw ReachViolation(name() + " moved support beyond its declared reach");
  return y;
}

std::string TreeOperator::name() const {
  switch (kind_) {
  case Kind::Lambda:
    return "lambda(" + g_->to_string() + ")";
  case Kind::L:
    return "L";
  case Kind::Lstar:
    return "L*";
  case Kind::N:
    return "N";
  case Kind::Derivation:
    return "d(" + g_->to_string() + ")";
  }
  return "?";
}

} // namespace treelab
