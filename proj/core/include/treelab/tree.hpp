#pragma once

// The q-regular tree as the Cayley graph of the free product of q copies of
// Z/2. Vertices are reduced words over the letters 1..q; the empty word is the
// root e and the parent of a vertex drops its last letter.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace treelab {

using Letter = std::uint16_t;

class Vertex {
public:
  Vertex() = default;
  /// Throws InvalidVertex if the word contains 0 or two equal adjacent letters.
  explicit Vertex(std::vector<Letter> word);
  Vertex(std::initializer_list<Letter> word) : Vertex(std::vector<Letter>(word)) {}

  static Vertex root() { return Vertex(); }

  const std::vector<Letter>& word() const { return word_; }
  std::size_t depth() const { return word_.size(); }
  bool is_root() const { return word_.empty(); }
  /// Last letter, or 0 for the root.
  Letter last() const { return word_.empty() ? 0 : word_.back(); }
  Letter max_letter() const;

  Vertex parent() const;
  /// Appends `a`; precondition a != last().
  Vertex child(Letter a) const;
  /// The prefix of length k.
  Vertex prefix(std::size_t k) const;

  /// Dot-separated letters; the root prints as "e".
  std::string to_string() const;
  static Vertex parse(std::string_view text);

  friend bool operator==(const Vertex&, const Vertex&) = default;
  /// Canonical order: depth first, then lexicographic.
  friend std::strong_ordering operator<=>(const Vertex& a, const Vertex& b);

private:
  std::vector<Letter> word_;
};

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept;
};

/// Throws InvalidAlphabet when a letter exceeds q or q < 2.
void check_alphabet(const Vertex& v, int q);

Vertex vertex_parent(const Vertex& v);

/// All q neighbours in canonical order.
std::vector<Vertex> vertex_neighbors(const Vertex& v, int q);

/// Neighbours other than the parent: q for the root, q - 1 otherwise.
std::vector<Vertex> vertex_children(const Vertex& v, int q);
std::size_t child_count(const Vertex& v, int q);

/// Reduced product u·v (free-product multiplication with involutive letters).
Vertex multiply(const Vertex& u, const Vertex& v);
/// Group inverse of a word: the reversed word.
Vertex word_inverse(const Vertex& v);

/// Graph distance between two vertices.
std::size_t distance(const Vertex& u, const Vertex& v);
/// Length of the longest common prefix, i.e. the depth of the meet.
std::size_t meet_depth(const Vertex& u, const Vertex& v);

/// Number of vertices of depth <= depth.
std::size_t ball_size(int q, int depth);

/// All vertices of depth <= depth in canonical order.
std::vector<Vertex> ball_vertices(int q, int depth);

} // namespace treelab
