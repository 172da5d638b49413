#include "treelab/derivation.hpp"

#include "treelab/errors.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace treelab {

FinSuppVector d_apply(const TreeAutomorphism& g, const FinSuppVector& x, int q) {
  return apply_Lstar(apply_lambda(g, x), q) - apply_lambda(g, apply_Lstar(x, q));
}

FinSuppVector d_apply_via_L(const TreeAutomorphism& g, const FinSuppVector& x) {
  return apply_lambda(g, apply_L(x)) - apply_L(apply_lambda(g, x));
}

ClosedFormResult d_closed_form(const TreeAutomorphism& g, const Vertex& s) {
  ClosedFormResult r;
  const Vertex gs = g.apply(s);
  if (!s.is_root()) {
    r.value.add(g.apply(s.parent()), 1);
    if (!gs.is_root()) {
      r.which = ClosedFormCase::generic;
      r.value.add(gs.parent(), -1);
    } else {
      r.which = ClosedFormCase::image_is_root;
    }
  } else if (!gs.is_root()) {
    r.which = ClosedFormCase::moves_root;
    r.value.add(gs.parent(), -1);
  } else {
    r.which = ClosedFormCase::fixes_root;
  }
  return r;
}

bool cocycle_check(const TreeAutomorphism& g, const TreeAutomorphism& f, const FinSuppVector& x, int q) {
  const FinSuppVector lhs = d_apply(aut_compose(g, f), x, q);
  const FinSuppVector rhs = apply_lambda(g, d_apply(f, x, q)) + d_apply(g, apply_lambda(f, x), q);
  return lhs == rhs;
}

BlockVector lambda_d_apply(const TreeAutomorphism& g, const BlockVector& v, int q) {
  return BlockVector{apply_lambda(g, v.top) + d_apply(g, v.bottom, q), apply_lambda(g, v.bottom)};
}

NormCertificate d_norm_certificates(const TreeAutomorphism& g, int q, int depth, std::size_t samples,
                                    std::uint64_t seed) {
  NormCertificate cert;
  const auto ball = ball_vertices(q, depth);
  std::map<Vertex, std::pair<std::size_t, Rational>> rows; // nonzeros, abs sum
  for (const auto& s : ball) {
    const FinSuppVector col = d_apply(g, FinSuppVector::dirac(s), q);
    cert.col_max_nonzeros = std::max(cert.col_max_nonzeros, col.support_size());
    Rational col_sum = 0;
    for (const auto& [t, c] : col) {
      const Rational a = abs_value(c);
      col_sum += a;
      if (a > cert.entry_bound)
        cert.entry_bound = a;
      if (static_cast<int>(t.depth()) <= depth) {
        auto& row = rows[t];
        row.first += 1;
        row.second += a;
      }
    }
    if (col_sum > cert.ell1_section_norm)
      cert.ell1_section_norm = col_sum;
  }
  for (const auto& [t, row] : rows) {
    cert.row_max_nonzeros = std::max(cert.row_max_nonzeros, row.first);
    if (row.second > cert.ellinf_section_norm)
      cert.ellinf_section_norm = row.second;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const FinSuppVector x = random_vector(q, depth, 8, rng);
    const FinSuppVector y = d_apply(g, x, q);
    ++cert.ell2_samples;
    if (norms(y).ell2_squared > 4 * norms(x).ell2_squared)
      ++cert.ell2_violations;
  }
  return cert;
}

// ---- symbolic vectors ------------------------------------------------------

LinearForm& LinearForm::operator+=(const LinearForm& o) {
  constant += o.constant;
  mu += o.mu;
  nu += o.nu;
  return *this;
}

LinearForm& LinearForm::operator*=(const Rational& c) {
  constant *= c;
  mu *= c;
  nu *= c;
  return *this;
}

std::string LinearForm::to_string() const {
  std::string out;
  auto term = [&](const Rational& c, const char* symbol) {
    if (c == 0)
      return;
    std::string coef = treelab::to_string(abs_value(c));
    if (!out.empty())
      out += c < 0 ? " - " : " + ";
    else if (c < 0)
      out += "-";
    if (symbol == nullptr)
      out += coef;
    else
      out += (coef == "1" ? std::string() : coef + "*") + symbol;
  };
  term(constant, nullptr);
  term(mu, "mu");
  term(nu, "nu");
  return out.empty() ? "0" : out;
}

void SymbolicVector::add(const Vertex& v, const LinearForm& c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = entries_.try_emplace(v, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      entries_.erase(it);
  }
}

LinearForm SymbolicVector::at(const Vertex& v) const {
  auto it = entries_.find(v);
  return it == entries_.end() ? LinearForm{} : it->second;
}

SymbolicVector& SymbolicVector::operator+=(const SymbolicVector& o) {
  for (const auto& [v, c] : o.entries_)
    add(v, c);
  return *this;
}

SymbolicVector& SymbolicVector::operator*=(const Rational& c) {
  if (c == 0) {
    entries_.clear();
    return *this;
  }
  for (auto& [v, f] : entries_)
    f *= c;
  return *this;
}

SymbolicVector SymbolicVector::from(const FinSuppVector& x) {
  SymbolicVector s;
  for (const auto& [v, c] : x)
    s.add(v, LinearForm{c, 0, 0});
  return s;
}

std::string SymbolicVector::to_string() const {
  if (entries_.empty())
    return "0";
  std::string out;
  for (const auto& [v, f] : entries_) {
    if (!out.empty())
      out += " + ";
    out += "(" + f.to_string() + ")*1_" + v.to_string();
  }
  return out;
}

SymbolicVector apply_lambda(const TreeAutomorphism& g, const SymbolicVector& x) {
  SymbolicVector y;
  for (const auto& [v, f] : x)
    y.add(g.apply(v), f);
  return y;
}

SymbolicVector apply_L(const SymbolicVector& x) {
  SymbolicVector y;
  for (const auto& [v, f] : x)
    if (!v.is_root())
      y.add(v.parent(), f);
  return y;
}

SymbolicVector psi_propagate_singleton(const Vertex& s, const TreeAutomorphism& g, int q) {
  check_alphabet(s, q);
  if (g.apply(Vertex::root()) != s)
    throw WrongWitness("witness does not map the root to " + s.to_string());
  // Ansatz psi(1_e) = mu 1_e, hence (L - psi)1_e = -mu 1_e.
  SymbolicVector psi_root;
  psi_root.add(Vertex::root(), LinearForm{0, 1, 0});
  const SymbolicVector root = SymbolicVector::from(FinSuppVector::dirac(Vertex::root()));
  const SymbolicVector L_minus_psi_root = apply_L(root) - psi_root;
  // psi(1_s) = L 1_s - lambda(g)(L - psi) 1_e.
  return apply_L(SymbolicVector::from(FinSuppVector::dirac(s))) - apply_lambda(g, L_minus_psi_root);
}

SymbolicVector psi_propagate_edge(const Vertex& t, const TreeAutomorphism& g, int q) {
  check_alphabet(t, q);
  if (t.depth() < 2)
    throw WrongWitness("edge propagation needs depth(t) >= 2");
  if (g.apply(Vertex::root()) != t.parent())
    throw WrongWitness("witness does not map the root to parent(" + t.to_string() + ")");
  const Vertex s0 = g.apply_inverse(t);
  if (s0.depth() != 1)
    throw WrongWitness("witness does not map a root edge onto (t, parent(t))");
  // Ansatz (psi - L)(1_{s0} + 1_e) = mu 1_{s0} + nu 1_e.
  SymbolicVector base;
  base.add(s0, LinearForm{0, 1, 0});
  base.add(Vertex::root(), LinearForm{0, 0, 1});
  // psi - L commutes with lambda(g).
  const SymbolicVector psi_minus_L = apply_lambda(g, base);
  FinSuppVector edge = FinSuppVector::dirac(t);
  edge.add(t.parent(), 1);
  return psi_minus_L + SymbolicVector::from(apply_L(edge));
}

BlockTriple conjugate_by_theta(const Rational& theta, const RationalMatrix& u, const RationalMatrix& v,
                               const RationalMatrix& w) {
  const std::size_t n = u.rows();
  for (const auto* m : {&u, &v, &w})
    if (m->rows() != n || m->cols() != n)
      throw DimensionMismatch("conjugate_by_theta needs square blocks of equal size");
  const RationalMatrix id = RationalMatrix::identity(n);
  RationalMatrix left = RationalMatrix::identity(2 * n);
  left.set_block(0, n, theta * id);
  RationalMatrix right = RationalMatrix::identity(2 * n);
  right.set_block(0, n, -theta * id);
  RationalMatrix middle(2 * n, 2 * n);
  middle.set_block(0, 0, u);
  middle.set_block(0, n, w);
  middle.set_block(n, n, v);
  const RationalMatrix p = left * middle * right;
  if (!p.block(n, 0, n, n).is_zero())
    throw NumericalInconsistency("conjugated element lost block upper-triangular form");
  return BlockTriple{p.block(0, 0, n, n), p.block(0, n, n, n), p.block(n, n, n, n)};
}

} // namespace treelab
