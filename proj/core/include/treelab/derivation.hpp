#pragma once

// The derivation d(g) = L* lambda(g) - lambda(g) L*, the twisted
// representation lambda_d and symbolic psi-propagation on the tree.

#include "treelab/automorphism.hpp"
#include "treelab/c00.hpp"
#include "treelab/linalg.hpp"

#include <array>
#include <map>
#include <string>
#include <tuple>

namespace treelab {

/// d(g)x = L* lambda(g) x - lambda(g) L* x.
FinSuppVector d_apply(const TreeAutomorphism& g, const FinSuppVector& x, int q);

/// lambda(g) L x - L lambda(g) x; equals d_apply exactly.
FinSuppVector d_apply_via_L(const TreeAutomorphism& g, const FinSuppVector& x);

enum class ClosedFormCase {
  generic = 0,        ///< s != e, g(s) != e
  image_is_root = 1,  ///< s != e, g(s) = e
  moves_root = 2,     ///< s = e, g(e) != e
  fixes_root = 3,     ///< s = e = g(e)
};

struct ClosedFormResult {
  FinSuppVector value;
  ClosedFormCase which;
};

/// Sparse closed form of d(g)1_s; at most two nonzero entries, each +-1.
ClosedFormResult d_closed_form(const TreeAutomorphism& g, const Vertex& s);

/// d(gf)x == lambda(g) d(f) x + d(g) lambda(f) x, exactly.
bool cocycle_check(const TreeAutomorphism& g, const TreeAutomorphism& f, const FinSuppVector& x, int q);

struct BlockVector {
  FinSuppVector top;
  FinSuppVector bottom;
  friend bool operator==(const BlockVector&, const BlockVector&) = default;
};

/// (top, bottom) -> (lambda(g) top + d(g) bottom, lambda(g) bottom).
BlockVector lambda_d_apply(const TreeAutomorphism& g, const BlockVector& v, int q);

struct NormCertificate {
  std::size_t col_max_nonzeros = 0;
  std::size_t row_max_nonzeros = 0;
  Rational entry_bound = 0;
  Rational ell1_section_norm = 0;    ///< max absolute column sum
  Rational ellinf_section_norm = 0;  ///< max absolute row sum
  std::size_t ell2_samples = 0;
  std::size_t ell2_violations = 0;   ///< samples with |d(g)x|^2 > 4|x|^2

  bool within_bounds() const {
    return col_max_nonzeros <= 2 && row_max_nonzeros <= 2 && entry_bound <= 1 && ell1_section_norm <= 2 &&
           ellinf_section_norm <= 2 && ell2_violations == 0;
  }
};

/// Matrix statistics of d(g) with columns ranging over the depth-`depth`
/// ball, plus a sampled l2 check on `samples` random vectors.
NormCertificate d_norm_certificates(const TreeAutomorphism& g, int q, int depth, std::size_t samples = 200,
                                    std::uint64_t seed = 0);

/// c + mu*m + nu*n with rational coefficients.
struct LinearForm {
  Rational constant = 0;
  Rational mu = 0;
  Rational nu = 0;

  bool is_zero() const { return constant == 0 && mu == 0 && nu == 0; }
  LinearForm& operator+=(const LinearForm& o);
  LinearForm& operator*=(const Rational& c);
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
  std::string to_string() const;
};

class SymbolicVector {
public:
  using Storage = std::map<Vertex, LinearForm>;

  void add(const Vertex& v, const LinearForm& c);
  LinearForm at(const Vertex& v) const;
  Storage::const_iterator begin() const { return entries_.begin(); }
  Storage::const_iterator end() const { return entries_.end(); }
  std::size_t support_size() const { return entries_.size(); }

  SymbolicVector& operator+=(const SymbolicVector& o);
  SymbolicVector& operator*=(const Rational& c);
  friend SymbolicVector operator+(SymbolicVector a, const SymbolicVector& b) { return a += b; }
  friend SymbolicVector operator-(SymbolicVector a, SymbolicVector b) { return a += (b *= Rational(-1)); }
  friend bool operator==(const SymbolicVector& a, const SymbolicVector& b) { return a.entries_ == b.entries_; }

  static SymbolicVector from(const FinSuppVector& x);
  std::string to_string() const;

private:
  Storage entries_;
};

SymbolicVector apply_lambda(const TreeAutomorphism& g, const SymbolicVector& x);
SymbolicVector apply_L(const SymbolicVector& x);

/// psi(1_s) propagated from the ansatz psi(1_e) = mu 1_e along a witness g
/// with g(e) = s. Throws WrongWitness if g(e) != s.
SymbolicVector psi_propagate_singleton(const Vertex& s, const TreeAutomorphism& g, int q);

/// psi(1_t + 1_parent(t)) propagated from the ansatz
/// (psi - L)(1_{s0} + 1_e) = mu 1_{s0} + nu 1_e along a witness g mapping the
/// edge (s0, e) onto (t, parent(t)). Throws WrongWitness otherwise.
SymbolicVector psi_propagate_edge(const Vertex& t, const TreeAutomorphism& g, int q);

struct BlockTriple {
  RationalMatrix u;
  RationalMatrix w;
  RationalMatrix v;
};

/// Blocks of (Id theta; 0 Id)(u w; 0 v)(Id -theta; 0 Id), computed by full
/// block-matrix multiplication. Throws DimensionMismatch.
BlockTriple conjugate_by_theta(const Rational& theta, const RationalMatrix& u, const RationalMatrix& v,
                               const RationalMatrix& w);

} // namespace treelab
