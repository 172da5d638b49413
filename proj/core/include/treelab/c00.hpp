#pragma once

// Finitely supported rational vectors on the tree, and the basic operators
// lambda(g), L (parent), L* (children sum) and N (adjacency) acting on them.

#include "treelab/automorphism.hpp"
#include "treelab/rational.hpp"
#include "treelab/tree.hpp"

#include <map>
#include <string>
#include <string_view>

namespace treelab {

class FinSuppVector {
public:
  using Storage = std::map<Vertex, Rational>;

  FinSuppVector() = default;

  static FinSuppVector dirac(const Vertex& v, const Rational& c = 1);

  /// Adds c to the coefficient at v; zero coefficients are erased.
  void add(const Vertex& v, const Rational& c);
  Rational at(const Vertex& v) const;

  bool is_zero() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }
  /// Depth of the deepest support vertex; 0 for the zero vector.
  std::size_t max_depth() const;
  Letter max_letter() const;

  Storage::const_iterator begin() const { return entries_.begin(); }
  Storage::const_iterator end() const { return entries_.end(); }

  FinSuppVector& operator+=(const FinSuppVector& other);
  FinSuppVector& operator-=(const FinSuppVector& other);
  FinSuppVector& operator*=(const Rational& c);

  friend FinSuppVector operator+(FinSuppVector a, const FinSuppVector& b) { return a += b; }
  friend FinSuppVector operator-(FinSuppVector a, const FinSuppVector& b) { return a -= b; }
  friend FinSuppVector operator-(FinSuppVector a) { return a *= Rational(-1); }
  friend FinSuppVector operator*(const Rational& c, FinSuppVector a) { return a *= c; }
  friend bool operator==(const FinSuppVector& a, const FinSuppVector& b) { return a.entries_ == b.entries_; }

  /// "{(word,num,den),...}" in canonical vertex order.
  std::string to_string() const;
  static FinSuppVector parse(std::string_view text);

private:
  Storage entries_;
};

/// (lambda(g)x)(t) = x(g^-1 t), i.e. 1_s -> 1_{g(s)}.
FinSuppVector apply_lambda(const TreeAutomorphism& g, const FinSuppVector& x);
/// 1_s -> 1_{parent(s)} for s != e, 1_e -> 0.
FinSuppVector apply_L(const FinSuppVector& x);
/// 1_s -> sum over the children of s.
FinSuppVector apply_Lstar(const FinSuppVector& x, int q);
/// 1_s -> sum over the neighbours of s.
FinSuppVector apply_N(const FinSuppVector& x, int q);

struct Norms {
  Rational ell1;
  Rational ell2_squared;
  Rational ellinf;
};

Norms norms(const FinSuppVector& x);

/// Bilinear pairing sum_t x_t y_t.
Rational inner(const FinSuppVector& x, const FinSuppVector& y);

} // namespace treelab

#include <random>

namespace treelab {

/// Random vector with up to `max_support` entries of depth <= max_depth and
/// small rational coefficients.
FinSuppVector random_vector(int q, int max_depth, std::size_t max_support, std::mt19937_64& rng);

} // namespace treelab
