#pragma once

#include "treelab/tree.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace treelab {

/// A computable automorphism of the q-regular tree.
///
/// Three primitive forms are supported: left translation by a reduced word, a
/// finite-depth portrait (a root-fixing automorphism given by local bijections
/// between child sets, acting as the order-preserving bijection below its
/// depth), and compositions of these. `Inverse` wraps a factor that is applied
/// inverted, which lets compositions carry inverted factors without having to
/// materialize them.
///
/// Text form (round-trips exactly through `to_string` / `parse`):
///   T(w)               translation, w dot-separated letters or "e"
///   P(k,node)          portrait of depth k; node = "(p1 p2 ...)" followed, when
///                      the node is above depth k-1, by "[child,child,...]"
///                      listing the subtrees of the source children in letter
///                      order. Permutations are 1-based positions in the
///                      sorted child lists.
///   C[g1,g2,...]       composition g1∘g2∘..., applied right to left
///   I(g)               inverse of g
class TreeAutomorphism {
public:
  using Permutation = std::vector<Letter>;

  struct Translation {
    Vertex word;
  };
  struct Portrait {
    int q = 0;
    int depth = 0;
    /// Source vertex -> 0-based permutation of child positions. Holds every
    /// vertex of depth < `depth`.
    std::map<Vertex, Permutation> local;
  };
  struct Composition {
    std::vector<TreeAutomorphism> factors;
  };
  struct Inverse {
    std::shared_ptr<const TreeAutomorphism> inner;
  };
  using Form = std::variant<Translation, Portrait, Composition, Inverse>;

  /// The identity, represented as translation by the empty word.
  TreeAutomorphism() : form_(Translation{}) {}

  static TreeAutomorphism identity() { return TreeAutomorphism(); }
  static TreeAutomorphism translation(Vertex word);
  /// Missing local maps default to the identity; throws InvalidAutomorphism if
  /// a local map is not a bijection of the right size.
  static TreeAutomorphism portrait(int q, int depth, std::map<Vertex, Permutation> local = {});
  static TreeAutomorphism composition(std::vector<TreeAutomorphism> factors);
  static TreeAutomorphism inverse(TreeAutomorphism g);

  const Form& form() const { return form_; }

  Vertex apply(const Vertex& v) const;
  Vertex apply_inverse(const Vertex& v) const;

  /// Static upper bound on |depth(g(v)) - depth(v)|.
  std::size_t reach_bound() const;

  std::string to_string() const;
  static TreeAutomorphism parse(std::string_view text);

private:
  explicit TreeAutomorphism(Form f) : form_(std::move(f)) {}
  Form form_;
};

Vertex aut_apply(const TreeAutomorphism& g, const Vertex& v);
/// g∘h.
TreeAutomorphism aut_compose(const TreeAutomorphism& g, const TreeAutomorphism& h);
/// Exact inverse; portraits are inverted node by node.
TreeAutomorphism aut_invert(const TreeAutomorphism& g);

/// max |depth(g(v)) - depth(v)| over the ball of radius depth_bound.
std::size_t aut_reach(const TreeAutomorphism& g, int q, int depth_bound);

/// Agreement of g and h on every vertex of the ball.
bool agree_on_ball(const TreeAutomorphism& g, const TreeAutomorphism& h, int q, int depth);

/// Checks that g maps the ball edges to edges and is injective on it.
bool is_isometry_on_ball(const TreeAutomorphism& g, int q, int depth);

enum class AutKind { translation, portrait, composition };

AutKind parse_aut_kind(std::string_view name);

/// Deterministic in (q, kind, size, seed).
TreeAutomorphism random_automorphism(int q, AutKind kind, int size, std::uint64_t seed);
TreeAutomorphism random_automorphism(int q, AutKind kind, int size, std::mt19937_64& rng);

/// A random reduced word of length exactly `length`.
Vertex random_word(int q, int length, std::mt19937_64& rng);

} // namespace treelab
