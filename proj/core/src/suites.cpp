#include "treelab/suites.hpp"

#include "treelab/automorphism.hpp"
#include "treelab/c00.hpp"
#include "treelab/derivation.hpp"
#include "treelab/errors.hpp"
#include "treelab/liftings.hpp"
#include "treelab/linalg.hpp"

#include <algorithm>
#include <functional>
#include <thread>

namespace treelab {

namespace {

using Rng = std::mt19937_64;
using CaseFn = std::function<void(const SuiteParams&, Rng&, CaseOutcome&)>;

void fail(CaseOutcome& out, std::string detail) {
  out.passed = false;
  if (out.detail.empty())
    out.detail = std::move(detail);
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

TreeAutomorphism random_aut(const SuiteParams& p, Rng& rng) {
  const auto kind = static_cast<AutKind>(uniform(rng, 0, 2));
  const int size = uniform(rng, 1, std::max(1, p.depth / 2));
  return random_automorphism(p.q, kind, size, rng);
}

FinSuppVector random_x(const SuiteParams& p, Rng& rng) { return random_vector(p.q, p.depth, 6, rng); }

Rational random_rational(Rng& rng) {
  Rational r(uniform(rng, -3, 3), uniform(rng, 1, 3));
  r.canonicalize();
  return r;
}

RationalMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = random_rational(rng);
  return m;
}

RationalMatrix random_invertible(Rng& rng, std::size_t n) {
  for (;;) {
    RationalMatrix m = random_matrix(rng, n, n);
    if (m.inverse())
      return m;
  }
}

FinSuppVector linear_closed_form(const TreeAutomorphism& g, const FinSuppVector& x) {
  FinSuppVector out;
  for (const auto& [s, c] : x) {
    FinSuppVector col = d_closed_form(g, s).value;
    col *= c;
    out += col;
  }
  return out;
}

void suite_cocycle(const SuiteParams& p, Rng& rng, CaseOutcome& out) {
  const auto g = random_aut(p, rng);
  const auto f = random_aut(p, rng);
  const auto x = random_x(p, rng);
  out.inputs = "g=" + g.to_string() + ";f=" + f.to_string() + ";x=" + x.to_string();
  if (!cocycle_check(g, f, x, p.q))
    fail(out, "d(gf)x != lambda(g)d(f)x + d(g)lambda(f)x");
  // d(g^-1) = -lambda(g^-1) d(g) lambda(g^-1)
  const auto gi = aut_invert(g);
  FinSuppVector rhs = apply_lambda(gi, d_apply(g, apply_lambda(gi, x), p.q));
  rhs *= Rational(-1);
  if (d_apply(gi, x, p.q) != rhs)
    fail(out, "d(g^-1) != -lambda(g^-1) d(g) lambda(g^-1)");
  if (!d_apply(TreeAutomorphism::identity(), x, p.q).is_zero())
    fail(out, "d(identity) != 0");
}

void suite_lstar_plus_l(const SuiteParams& p, Rng& rng, CaseOutcome& out) {
  const auto x = random_x(p, rng);
  out.inputs = "x=" + x.to_string();
  FinSuppVector sum = apply_Lstar(x, p.q);
  sum += apply_L(x);
  if (sum != apply_N(x, p.q))
    fail(out, "L*x + Lx != Nx");
}

void suite_d_formulas(const SuiteParams& p, Rng& rng, CaseOutcome& out) {
  const auto g = random_aut(p, rng);
  const auto x = random_x(p, rng);
  out.inputs = "g=" + g.to_string() + ";x=" + x.to_string();
  const FinSuppVector a = d_apply(g, x, p.q);
  if (a != d_apply_via_L(g, x))
    fail(out, "L*lambda - lambda L* != lambda L - L lambda");
  if (a != linear_closed_form(g, x))
    fail(out, "closed form disagrees with the definition");
}

void suite_lambda_d(const SuiteParams& p, Rng& rng, CaseOutcome& out) {
  const auto g = random_aut(p, rng);
  const auto f = random_aut(p, rng);
  const BlockVector v{random_x(p, rng), random_x(p, rng)};
  out.inputs = "g=" + g.to_string() + ";f=" + f.to_string() + ";top=" + v.top.to_string() +
               ";bottom=" + v.bottom.to_string();
  const auto gf = aut_compose(g, f);
  if (lambda_d_apply(gf, v, p.q) != lambda_d_apply(g, lambda_d_apply(f, v, p.q), p.q))
    fail(out, "lambda_d(gf) != lambda_d(g) lambda_d(f)");
  if (lambda_d_apply(aut_invert(g), lambda_d_apply(g, v, p.q), p.q) != v)
    fail(out, "lambda_d(g^-1) is not the inverse of lambda_d(g)");
}

void suite_adjoint(const SuiteParams& p, Rng& rng, CaseOutcome& out) {
  const auto x = random_x(p, rng);
  const auto y = random_x(p, rng);
  out.inputs = "x=" + x.to_string() + ";y=" + y.to_string();
  if (inner(apply_L(x), y) != inner(x, apply_Lstar(y, p.q)))
    fail(out, "<Lx,y> != <x,L*y>");
}

void suite_closed_form(const SuiteParams& p, Rng& rng, CaseOutcome& out) {
  const auto g = random_aut(p, rng);
  // Bias the vertex choice so that every branch of the case analysis is hit.
  Vertex s;
  switch (uniform(rng, 0, 3)) {
  case 0:
    s = Vertex::root();
    break;
  case 1:
    s = g.apply_inverse(Vertex::root());
    break;
  default:
    s = random_word(p.q, uniform(rng, 0, p.depth), rng);
  }
  out.inputs = "g=" + g.to_string() + ";s=" + s.to_string();
  const ClosedFormResult r = d_closed_form(g, s);
  static const char* names[] = {"generic", "image_is_root", "moves_root", "fixes_root"};
  out.label = names[static_cast<int>(r.which)];
  if (r.value != d_apply(g, FinSuppVector::dirac(s), p.q))
    fail(out, "closed form disagrees with d_apply");
  if (r.value.support_size() > 2)
    fail(out, "closed form has more than two nonzeros");
  for (const auto& [v, c] : r.value)
    if (c != 1 && c != -1)
      fail(out, "closed form entry outside {-1, 1} at " + v.to_string());
}

void suite_norm_cert(const SuiteParams& p, Rng& rng, CaseOutcome& out) {
  const auto g = random_aut(p, rng);
  const auto sub = rng();
  out.inputs = "g=" + g.to_string() + ";sample_seed=" + std::to_string(sub);
  const NormCertificate c = d_norm_certificates(g, p.q, p.depth, 200, sub);
  if (!c.within_bounds())
    fail(out, "norm certificate out of bounds: col " + std::to_string(c.col_max_nonzeros) + " row " +
                  std::to_string(c.row_max_nonzeros) + " entry " + to_string(c.entry_bound) + " l1 " +
                  to_string(c.ell1_section_norm) + " linf " + to_string(c.ellinf_section_norm) + " l2 violations " +
                  std::to_string(c.ell2_violations));
}

TreeAutomorphism random_root_fixing(const SuiteParams& p, Rng& rng, int k) {
  if (k == 0)
    return TreeAutomorphism::identity();
  return random_automorphism(p.q, AutKind::portrait, 2, rng);
}

void suite_psi_singleton(const SuiteParams& p, Rng& rng, CaseOutcome& out) {
  const Vertex s = random_word(p.q, uniform(rng, 1, std::max(1, p.depth)), rng);
  out.inputs = "s=" + s.to_string();
  SymbolicVector expected;
  expected.add(s.parent(), {1, 0, 0});
  expected.add(s, {0, 1, 0});
  std::optional<SymbolicVector> first;
  for (int k = 0; k < 5; ++k) {
    const auto g = aut_compose(TreeAutomorphism::translation(s), random_root_fixing(p, rng, k));
    out.inputs += ";g" + std::to_string(k) + "=" + g.to_string();
    const SymbolicVector r = psi_propagate_singleton(s, g, p.q);
    if (!first)
      first = r;
    else if (r != *first)
      fail(out, "witness dependence: " + r.to_string() + " vs " + first->to_string());
    if (r != expected)
      fail(out, "pattern " + r.to_string() + " differs from " + expected.to_string());
  }
}

void suite_psi_edge(const SuiteParams& p, Rng& rng, CaseOutcome& out) {
  const Vertex t = random_word(p.q, uniform(rng, 2, std::max(2, p.depth)), rng);
  out.inputs = "t=" + t.to_string();
  SymbolicVector expected;
  expected.add(t, {0, 1, 0});
  expected.add(t.parent(), {1, 0, 1});
  expected.add(t.parent().parent(), {1, 0, 0});
  std::optional<SymbolicVector> first;
  for (int k = 0; k < 5; ++k) {
    const auto g = aut_compose(TreeAutomorphism::translation(t.parent()), random_root_fixing(p, rng, k));
    out.inputs += ";g" + std::to_string(k) + "=" + g.to_string();
    const SymbolicVector r = psi_propagate_edge(t, g, p.q);
    if (!first)
      first = r;
    else if (r != *first)
      fail(out, "witness dependence: " + r.to_string() + " vs " + first->to_string());
    if (r != expected)
      fail(out, "pattern " + r.to_string() + " differs from " + expected.to_string());
  }
}

void suite_theta_conjugation(const SuiteParams&, Rng& rng, CaseOutcome& out) {
  const auto n = static_cast<std::size_t>(uniform(rng, 1, 3));
  const RationalMatrix u = random_matrix(rng, n, n);
  const RationalMatrix v = random_matrix(rng, n, n);
  const RationalMatrix b = random_matrix(rng, n, n);
  const Rational theta = random_rational(rng);
  const RationalMatrix target = b * u - v * b;
  const RationalMatrix w = target + theta * (u - v);
  out.inputs = "theta=" + to_string(theta) + ";u=" + u.to_string() + ";v=" + v.to_string() + ";B=" + b.to_string();
  const BlockTriple r = conjugate_by_theta(theta, u, v, w);
  if (r.u != u || r.v != v)
    fail(out, "conjugation changed a diagonal block");
  if (r.w != target)
    fail(out, "corner " + r.w.to_string() + " differs from B u - v B = " + target.to_string());
}

void suite_inner_chain(const SuiteParams&, Rng& rng, CaseOutcome& out) {
  const auto n = static_cast<std::size_t>(uniform(rng, 1, 3));
  const auto k = static_cast<std::size_t>(uniform(rng, 1, 2));
  const RationalMatrix a = random_matrix(rng, n, n);
  std::vector<RationalMatrix> lambda;
  std::vector<RationalMatrix> d;
  for (std::size_t i = 0; i < k; ++i) {
    lambda.push_back(random_invertible(rng, n));
    d.push_back(lambda.back() * a - a * lambda.back());
  }
  out.inputs = "A=" + a.to_string();
  for (std::size_t i = 0; i < k; ++i)
    out.inputs += ";lambda" + std::to_string(i) + "=" + lambda[i].to_string();
  const DerivationTable table(lambda, d);
  const InnerSolution sol = inner_derivation_solve(table);
  if (!sol.feasible) {
    fail(out, "commutator derivation was not certified inner");
    return;
  }
  std::vector<BlockElement> elements;
  for (std::size_t i = 0; i < k; ++i) {
    if (lambda[i] * sol.particular - sol.particular * lambda[i] != d[i])
      fail(out, "solution does not implement d");
    elements.push_back(twisted(table.letter({i, false})));
  }
  const ComplementCheck c = invariant_complement_from_A(sol.particular, elements);
  if (!c.invariant)
    fail(out, "graph complement is not invariant");
  if (!c.block_diagonal)
    fail(out, "conjugation does not block-diagonalize");
}

void suite_delta_composition(const SuiteParams&, Rng& rng, CaseOutcome& out) {
  const auto ny = static_cast<std::size_t>(uniform(rng, 1, 3));
  const auto nz = static_cast<std::size_t>(uniform(rng, 1, 3));
  const BlockElement a{random_matrix(rng, ny, ny), random_matrix(rng, ny, nz), random_matrix(rng, nz, nz)};
  const BlockElement b{random_matrix(rng, ny, ny), random_matrix(rng, ny, nz), random_matrix(rng, nz, nz)};
  out.inputs = "a=" + a.full().to_string() + ";b=" + b.full().to_string() + ";ny=" + std::to_string(ny);
  if (!delta_composition_check(a, b))
    fail(out, "corner of the product is not u1 w2 + w1 v2");
}

CocycleValue bracketed(const DerivationTable& t, const GroupWord& w, std::size_t lo, std::size_t hi, Rng& rng) {
  if (hi == lo)
    return t.identity();
  if (hi - lo == 1)
    return t.letter(w[lo]);
  const auto mid = std::uniform_int_distribution<std::size_t>(lo + 1, hi - 1)(rng);
  return cocycle_combine(bracketed(t, w, lo, mid, rng), bracketed(t, w, mid, hi, rng));
}

void suite_cocycle_bracketing(const SuiteParams&, Rng& rng, CaseOutcome& out) {
  std::vector<RationalMatrix> lambda{random_invertible(rng, 2), random_invertible(rng, 2)};
  std::vector<RationalMatrix> d{random_matrix(rng, 2, 2), random_matrix(rng, 2, 2)};
  const DerivationTable table(lambda, d);
  GroupWord word(static_cast<std::size_t>(uniform(rng, 0, 8)));
  for (auto& a : word)
    a = {static_cast<std::size_t>(uniform(rng, 0, 1)), uniform(rng, 0, 1) == 1};
  out.inputs = "word=" + word_to_string(word) + ";lambda0=" + lambda[0].to_string() +
               ";lambda1=" + lambda[1].to_string() + ";d0=" + d[0].to_string() + ";d1=" + d[1].to_string();
  const CocycleValue left = cocycle_extend(table, word);
  const CocycleValue other = bracketed(table, word, 0, word.size(), rng);
  if (left.lambda != other.lambda || left.d != other.d)
    fail(out, "bracketing changed the folded value");
}

const std::map<std::string, CaseFn>& registry() {
  static const std::map<std::string, CaseFn> r{
      {"cocycle", suite_cocycle},
      {"lstar_plus_l", suite_lstar_plus_l},
      {"d_formulas", suite_d_formulas},
      {"lambda_d", suite_lambda_d},
      {"adjoint", suite_adjoint},
      {"closed_form", suite_closed_form},
      {"norm_cert", suite_norm_cert},
      {"psi_singleton", suite_psi_singleton},
      {"psi_edge", suite_psi_edge},
      {"theta_conjugation", suite_theta_conjugation},
      {"inner_chain", suite_inner_chain},
      {"delta_composition", suite_delta_composition},
      {"cocycle_bracketing", suite_cocycle_bracketing},
  };
  return r;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

} // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, fn] : registry())
      n.push_back(k);
    return n;
  }();
  return names;
}

bool is_suite(const std::string& name) { return registry().count(name) > 0; }

std::uint64_t case_seed(const std::string& suite, std::uint64_t seed, std::size_t index) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : suite) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return splitmix(splitmix(h ^ seed) + index);
}

CaseOutcome run_case(const std::string& suite, const SuiteParams& params, std::size_t index) {
  const auto it = registry().find(suite);
  if (it == registry().end())
    throw InvalidInput("unknown suite: " + suite);
  CaseOutcome out;
  out.index = index;
  out.case_seed = case_seed(suite, params.seed, index);
  Rng rng(out.case_seed);
  try {
    it->second(params, rng, out);
  } catch (const Error& e) {
    fail(out, std::string("exception: ") + e.what());
  }
  return out;
}

SuiteResult run_suite(const std::string& suite, const SuiteParams& params, unsigned jobs) {
  if (!is_suite(suite))
    throw InvalidInput("unknown suite: " + suite);
  std::vector<CaseOutcome> outcomes(params.cases);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(params.cases, 1))));
  auto work = [&](unsigned shard) {
    for (std::size_t i = shard; i < params.cases; i += jobs)
      outcomes[i] = run_case(suite, params, i);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
      pool.emplace_back(work, t);
    for (auto& t : pool)
      t.join();
  }
  SuiteResult r;
  r.suite = suite;
  r.params = params;
  for (auto& o : outcomes) {
    if (!o.label.empty())
      ++r.counters[o.label];
    if (!o.passed) {
      ++r.failures;
      r.failed.push_back(std::move(o));
    }
  }
  return r;
}

} // namespace treelab
