#include "treelab/liftings.hpp"

#include "treelab/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <regex>
#include <set>

namespace treelab {

NormSpec NormSpec::pnorm(int p, Rational epsilon) {
  if (p < 4 || p % 2 != 0)
    throw InvalidInput("p-norm family needs an even p >= 4, got " + std::to_string(p));
  if (epsilon < 0)
    throw InvalidInput("p-norm blend must be non-negative");
  NormSpec s;
  s.family = Family::averaged_pnorm;
  s.p = p;
  s.epsilon = epsilon;
  return s;
}

std::string NormSpec::to_string() const {
  if (family == Family::averaged_quadratic)
    return "quadratic";
  return "pnorm(" + std::to_string(p) + "," + treelab::to_string(epsilon) + ")";
}

NormSpec NormSpec::parse(const std::string& text) {
  if (text == "quadratic")
    return quadratic();
  static const std::regex re(R"(\s*pnorm\(\s*(\d+)\s*(?:,\s*([-0-9/ ]+))?\)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re))
    throw ParseError("unknown norm family: " + text);
  const int p = std::stoi(m[1].str());
  return m[2].matched ? pnorm(p, parse_rational(m[2].str())) : pnorm(p);
}

AveragedObjective::AveragedObjective(NormSpec spec, const std::vector<RationalMatrix>& group) : spec_(spec) {
  if (group.empty())
    throw InvalidInput("objective needs at least one group element");
  const std::size_t n = group.front().rows();
  q_exact_ = RationalMatrix(n, n);
  for (const auto& t : group) {
    if (t.rows() != n || t.cols() != n)
      throw DimensionMismatch("group elements must all be " + std::to_string(n) + " x " + std::to_string(n));
    q_exact_ += t.transpose() * t;
    group_.push_back(t.to_double());
  }
  q_exact_ *= Rational(1, static_cast<long>(group.size()));
  q_ = q_exact_.to_double();
}

double AveragedObjective::value(const Eigen::VectorXd& x) const {
  const double s = x.dot(q_ * x);
  if (spec_.family == NormSpec::Family::averaged_quadratic)
    return s;
  double acc = 0.0;
  for (const auto& t : group_)
    acc += (t * x).array().pow(spec_.p).sum();
  acc /= static_cast<double>(group_.size());
  return acc + spec_.epsilon.get_d() * std::pow(s, spec_.p / 2);
}

Eigen::VectorXd AveragedObjective::gradient(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd qx = q_ * x;
  if (spec_.family == NormSpec::Family::averaged_quadratic)
    return 2.0 * qx;
  const int p = spec_.p;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
  for (const auto& t : group_) {
    const Eigen::VectorXd y = t * x;
    g += t.transpose() * (p * y.array().pow(p - 1)).matrix();
  }
  g /= static_cast<double>(group_.size());
  const double s = x.dot(qx);
  g += spec_.epsilon.get_d() * p * std::pow(s, p / 2 - 1) * qx;
  return g;
}

Eigen::MatrixXd AveragedObjective::hessian(const Eigen::VectorXd& x) const {
  if (spec_.family == NormSpec::Family::averaged_quadratic)
    return 2.0 * q_;
  const int p = spec_.p;
  const Eigen::Index n = x.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (const auto& t : group_) {
    const Eigen::VectorXd y = t * x;
    const Eigen::VectorXd weight = (static_cast<double>(p) * (p - 1) * y.array().pow(p - 2)).matrix();
    h += t.transpose() * weight.asDiagonal() * t;
  }
  h /= static_cast<double>(group_.size());
  const Eigen::VectorXd qx = q_ * x;
  const double s = x.dot(qx);
  const double eps = spec_.epsilon.get_d();
  const int half = p / 2;
  h += eps * p * std::pow(s, half - 1) * q_;
  if (half >= 2)
    h += eps * p * (half - 1) * std::pow(s, half - 2) * 2.0 * (qx * qx.transpose());
  return h;
}

ObjectiveValue objective_and_gradient(const AveragedObjective& f, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != f.dimension())
    throw DimensionMismatch("vector length does not match the objective");
  return {f.value(x), f.gradient(x)};
}

Eigen::VectorXd finite_difference_gradient(const AveragedObjective& f, const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd a = x;
    Eigen::VectorXd b = x;
    a(i) += h;
    b(i) -= h;
    g(i) = (f.value(a) - f.value(b)) / (2.0 * h);
  }
  return g;
}

RationalMatrix BlockElement::full() const {
  const std::size_t ny = u.rows();
  const std::size_t nz = v.rows();
  if (!u.is_square() || !v.is_square() || w.rows() != ny || w.cols() != nz)
    throw DimensionMismatch("block element with non-conformable blocks");
  RationalMatrix m(ny + nz, ny + nz);
  m.set_block(0, 0, u);
  m.set_block(0, ny, w);
  m.set_block(ny, ny, v);
  return m;
}

BlockElement BlockElement::split(const RationalMatrix& m, std::size_t ny) {
  if (!m.is_square() || ny > m.rows())
    throw DimensionMismatch("cannot split a " + std::to_string(m.rows()) + " x " + std::to_string(m.cols()) +
                            " matrix at " + std::to_string(ny));
  const std::size_t nz = m.rows() - ny;
  if (!m.block(ny, 0, nz, ny).is_zero())
    throw InvalidInput("element does not leave Y invariant: " + m.to_string());
  return {m.block(0, 0, ny, ny), m.block(0, ny, ny, nz), m.block(ny, ny, nz, nz)};
}

namespace {

std::set<std::string> keys_of(const std::vector<RationalMatrix>& ms) {
  std::set<std::string> keys;
  for (const auto& m : ms)
    keys.insert(m.to_string());
  return keys;
}

} // namespace

LiftingProblem::LiftingProblem(std::size_t ny, std::size_t nz, std::vector<RationalMatrix> group, NormSpec norm,
                               SolverOptions options)
    : ny_(ny), nz_(nz), group_(std::move(group)), objective_(norm, group_), options_(options) {
  for (const auto& t : group_) {
    if (t.rows() != ny + nz || t.cols() != ny + nz)
      throw DimensionMismatch("group element is not " + std::to_string(ny + nz) + " x " + std::to_string(ny + nz));
    BlockElement b = BlockElement::split(t, ny);
    if ((ny > 0 && !b.u.inverse()) || (nz > 0 && !b.v.inverse()))
      throw InvalidInput("group element has a singular diagonal block: " + t.to_string());
    blocks_.push_back(std::move(b));
  }
  const auto keys = keys_of(group_);
  closed_ = true;
  for (const auto& a : group_)
    for (const auto& b : group_)
      if (!keys.count((a * b).to_string()))
        closed_ = false;
}

NearestPoint nearest_point(const LiftingProblem& problem, const Eigen::VectorXd& x) {
  const auto ny = static_cast<Eigen::Index>(problem.ny());
  const auto nz = static_cast<Eigen::Index>(problem.nz());
  if (x.size() != ny + nz)
    throw DimensionMismatch("point has the wrong dimension");
  NearestPoint out;
  out.y = Eigen::VectorXd::Zero(ny + nz);
  out.y.head(ny) = x.head(ny);
  if (ny == 0 || x.tail(nz).isZero(0.0))
    return out;

  const auto& f = problem.objective();
  const auto& opt = problem.options();
  // F is homogeneous, so the minimizer scales with x; solving at unit scale
  // keeps the gradient tolerance meaningful in double precision.
  const double scale = x.tail(nz).norm();
  Eigen::VectorXd r = Eigen::VectorXd::Zero(ny + nz);  // residual (x - y) / scale
  r.tail(nz) = x.tail(nz) / scale;
  double fr = f.value(r);
  for (int it = 0;; ++it) {
    // d/dy F(x - y) = -grad F(r) restricted to Y
    const Eigen::VectorXd g = -f.gradient(r).head(ny);
    out.iterations = it;
    out.gradient_norm = g.norm();
    if (out.gradient_norm <= opt.tolerance)
      break;
    if (it >= opt.max_iterations)
      throw SolverFailure("nearest point did not converge", it, out.gradient_norm);
    const Eigen::MatrixXd h = f.hessian(r).topLeftCorner(ny, ny);
    Eigen::VectorXd step = h.ldlt().solve(-g);
    if (!step.allFinite() || g.dot(step) >= 0.0)
      step = -g;
    Eigen::VectorXd trial(ny + nz);
    double ft = 0.0;
    // Once the predicted decrease is below the round-off of F the line search
    // cannot discriminate; the full Newton step converges quadratically there.
    const bool roundoff = -g.dot(step) <= 1e-12 * std::max(1.0, std::abs(fr));
    bool accepted = false;
    double t = 1.0;
    for (int k = 0; k < 60 && !roundoff; ++k) {
      trial = r;
      trial.head(ny) -= t * step;
      ft = f.value(trial);
      if (ft <= fr + opt.armijo * t * g.dot(step)) {
        accepted = true;
        break;
      }
      t *= opt.backtrack;
    }
    if (!accepted) {
      if (!roundoff)
        throw SolverFailure("line search stalled", it, out.gradient_norm);
      trial = r;
      trial.head(ny) -= step;
      ft = f.value(trial);
    }
    r = trial;
    fr = ft;
  }
  out.y.head(ny) = x.head(ny) - scale * r.head(ny);
  return out;
}

Eigen::VectorXd lifting_phi(const LiftingProblem& problem, const Eigen::VectorXd& z) {
  if (static_cast<std::size_t>(z.size()) != problem.nz())
    throw DimensionMismatch("z has the wrong dimension");
  const auto ny = static_cast<Eigen::Index>(problem.ny());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ny + z.size());
  if (z.isZero(0.0))
    return x;
  x.tail(z.size()) = z;
  return x - nearest_point(problem, x).y;
}

Eigen::VectorXd psi_of(const LiftingProblem& problem, const Eigen::VectorXd& z) {
  return -lifting_phi(problem, z).head(static_cast<Eigen::Index>(problem.ny()));
}

RationalMatrix exact_quadratic_psi(const LiftingProblem& problem) {
  if (problem.objective().spec().family != NormSpec::Family::averaged_quadratic)
    throw InvalidInput("psi is linear only for the quadratic family");
  const RationalMatrix& q = problem.objective().gram();
  const std::size_t ny = problem.ny();
  const std::size_t nz = problem.nz();
  const auto inv = q.block(0, 0, ny, ny).inverse();
  if (!inv)
    throw NumericalInconsistency("averaged Gram matrix is singular on Y");
  return *inv * q.block(0, ny, ny, nz);
}

namespace {

Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v(i) = u(rng);
  return v;
}

} // namespace

double delta_check(const LiftingProblem& problem, const BlockElement& element, int samples, std::uint64_t seed) {
  const Eigen::MatrixXd u = element.u.to_double();
  const Eigen::MatrixXd w = element.w.to_double();
  const Eigen::MatrixXd v = element.v.to_double();
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Eigen::VectorXd z = random_vector(rng, static_cast<Eigen::Index>(problem.nz()), 2.0);
    const Eigen::VectorXd lhs = w * z;
    const Eigen::VectorXd rhs = u * psi_of(problem, z) - psi_of(problem, v * z);
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

Eigen::VectorXd Delta_of(const LiftingProblem& problem, const Eigen::VectorXd& z1, const Eigen::VectorXd& z2) {
  return lifting_phi(problem, z1) + lifting_phi(problem, z2) - lifting_phi(problem, z1 + z2);
}

bool delta_composition_check(const BlockElement& a, const BlockElement& b) {
  const RationalMatrix product = a.full() * b.full();
  if (a.u.rows() != b.u.rows() || a.v.rows() != b.v.rows())
    throw DimensionMismatch("block elements are not conformable");
  const BlockElement p = BlockElement::split(product, a.u.rows());
  return p.w == a.u * b.w + a.w * b.v;
}

PropertyReport lifting_properties(const LiftingProblem& problem, int samples, std::uint64_t seed) {
  PropertyReport rep;
  std::mt19937_64 rng(seed);
  const auto ny = static_cast<Eigen::Index>(problem.ny());
  const auto nz = static_cast<Eigen::Index>(problem.nz());
  const auto& f = problem.objective();
  std::vector<Eigen::MatrixXd> group;
  for (const auto& t : problem.group())
    group.push_back(t.to_double());
  const double scalars[] = {-2.0, -1.0, 0.5, 3.0};
  for (int k = 0; k < samples; ++k) {
    const Eigen::VectorXd z = random_vector(rng, nz, 2.0);
    const Eigen::VectorXd phi = lifting_phi(problem, z);
    rep.section = std::max(rep.section, (phi.tail(nz) - z).norm());
    for (std::size_t e = 0; e < group.size(); ++e) {
      const Eigen::MatrixXd v = group[e].bottomRightCorner(nz, nz);
      rep.equivariance = std::max(rep.equivariance, (lifting_phi(problem, v * z) - group[e] * phi).norm());
    }
    for (double t : scalars)
      rep.homogeneity = std::max(rep.homogeneity, (lifting_phi(problem, t * z) - t * phi).norm());
    const double f0 = f.value(phi);
    for (int j = 0; j < 5; ++j) {
      Eigen::VectorXd shifted = phi;
      shifted.head(ny) += random_vector(rng, ny, 1.0);
      rep.minimality_slack = std::max(rep.minimality_slack, f0 - f.value(shifted));
    }
    const Eigen::VectorXd z2 = random_vector(rng, nz, 2.0);
    const Eigen::VectorXd d = Delta_of(problem, z, z2);
    rep.Delta_norm = std::max(rep.Delta_norm, d.norm());
    rep.Delta_z_block = std::max(rep.Delta_z_block, d.tail(nz).norm());
    for (std::size_t e = 0; e < group.size(); ++e) {
      const Eigen::MatrixXd v = group[e].bottomRightCorner(nz, nz);
      rep.Delta_equivariance =
          std::max(rep.Delta_equivariance, (group[e] * d - Delta_of(problem, v * z, v * z2)).norm());
    }
    const Eigen::VectorXd x = random_vector(rng, ny + nz, 2.0);
    const Eigen::VectorXd ga = f.gradient(x);
    const Eigen::VectorXd gf = finite_difference_gradient(f, x);
    rep.gradient_error = std::max(rep.gradient_error, (ga - gf).norm() / std::max(ga.norm(), 1e-8));
  }
  for (const auto& b : problem.blocks())
    rep.delta_identity = std::max(rep.delta_identity, delta_check(problem, b, samples, seed + 1));
  return rep;
}

std::string word_to_string(const GroupWord& w) {
  if (w.empty())
    return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      s += ' ';
    s += 'g' + std::to_string(w[i].generator) + (w[i].inverse ? "^-1" : "");
  }
  return s;
}

DerivationTable::DerivationTable(std::vector<RationalMatrix> lambda, std::vector<RationalMatrix> d)
    : lambda_(std::move(lambda)), d_(std::move(d)) {
  if (lambda_.size() != d_.size())
    throw InvalidInput("derivation table needs one d value per generator");
  if (lambda_.empty())
    throw InvalidInput("derivation table needs at least one generator");
  dim_ = lambda_.front().rows();
  for (std::size_t i = 0; i < lambda_.size(); ++i) {
    for (const auto* m : {&lambda_[i], &d_[i]})
      if (m->rows() != dim_ || m->cols() != dim_)
        throw DimensionMismatch("derivation table entries must be " + std::to_string(dim_) + " x " +
                                std::to_string(dim_));
    auto inv = lambda_[i].inverse();
    if (!inv)
      throw InvalidInput("lambda of generator " + std::to_string(i) + " is singular");
    lambda_inv_.push_back(std::move(*inv));
  }
}

CocycleValue DerivationTable::identity() const {
  return {RationalMatrix::identity(dim_), RationalMatrix(dim_, dim_)};
}

CocycleValue DerivationTable::letter(const GroupLetter& a) const {
  if (a.generator >= lambda_.size())
    throw InvalidInput("no generator with index " + std::to_string(a.generator));
  if (!a.inverse)
    return {lambda_[a.generator], d_[a.generator]};
  // d(a^-1) = -lambda(a^-1) d(a) lambda(a^-1)
  const RationalMatrix& li = lambda_inv_[a.generator];
  return {li, -(li * d_[a.generator] * li)};
}

CocycleValue cocycle_combine(const CocycleValue& x, const CocycleValue& y) {
  return {x.lambda * y.lambda, x.lambda * y.d + x.d * y.lambda};
}

CocycleValue cocycle_extend(const DerivationTable& table, const GroupWord& word) {
  CocycleValue acc = table.identity();
  for (const auto& a : word)
    acc = cocycle_combine(acc, table.letter(a));
  return acc;
}

std::optional<CocycleInconsistency> cocycle_consistency(const DerivationTable& table,
                                                        const std::vector<GroupWord>& words) {
  std::map<std::string, std::pair<std::size_t, RationalMatrix>> seen;
  for (std::size_t i = 0; i < words.size(); ++i) {
    CocycleValue c = cocycle_extend(table, words[i]);
    auto [it, fresh] = seen.try_emplace(c.lambda.to_string(), i, c.d);
    if (!fresh && it->second.second != c.d)
      return CocycleInconsistency{words[it->second.first], words[i]};
  }
  return std::nullopt;
}

InnerSolution inner_derivation_solve(const std::vector<CocycleValue>& elements) {
  InnerSolution out;
  if (elements.empty())
    throw InvalidInput("inner derivation solve needs at least one element");
  const std::size_t n = elements.front().lambda.rows();
  ExactEliminator e(n * n, true);
  for (const auto& x : elements) {
    if (x.lambda.rows() != n || x.d.rows() != n)
      throw DimensionMismatch("elements must share one dimension");
    for (std::size_t i = 0; i < n && e.consistent(); ++i)
      for (std::size_t j = 0; j < n && e.consistent(); ++j) {
        // (lambda A - A lambda)_{ij} = d_{ij}
        std::map<std::size_t, Rational> acc;
        for (std::size_t k = 0; k < n; ++k) {
          acc[k * n + j] += x.lambda(i, k);
          acc[i * n + k] -= x.lambda(k, j);
        }
        SparseVec row;
        for (auto& [c, v] : acc)
          if (v != 0)
            row.emplace_back(c, v);
        e.add_row(row, x.d(i, j));
      }
  }
  auto to_matrix = [n](const SparseVec& v) {
    RationalMatrix m(n, n);
    for (const auto& [k, value] : v)
      m(k / n, k % n) = value;
    return m;
  };
  if (!e.consistent()) {
    out.certificate = e.certificate();
    return out;
  }
  out.feasible = true;
  out.particular = to_matrix(e.particular_solution());
  for (const auto& b : e.null_space_basis())
    out.basis.push_back(to_matrix(b));
  return out;
}

InnerSolution inner_derivation_solve(const DerivationTable& table) {
  std::vector<CocycleValue> elements;
  for (std::size_t i = 0; i < table.generators(); ++i)
    elements.push_back(table.letter({i, false}));
  return inner_derivation_solve(elements);
}

BlockElement twisted(const CocycleValue& x) { return {x.lambda, x.d, x.lambda}; }

ComplementCheck invariant_complement_from_A(const RationalMatrix& a, const std::vector<BlockElement>& elements) {
  const std::size_t ny = a.rows();
  const std::size_t nz = a.cols();
  ComplementCheck out;
  RationalMatrix graph(ny + nz, nz);
  graph.set_block(0, 0, -a);
  graph.set_block(ny, 0, RationalMatrix::identity(nz));
  for (std::size_t j = 0; j < nz; ++j) {
    std::vector<Rational> col(ny + nz);
    for (std::size_t i = 0; i < ny + nz; ++i)
      col[i] = graph(i, j);
    out.basis.push_back(std::move(col));
  }
  RationalMatrix shift = RationalMatrix::identity(ny + nz);
  shift.set_block(0, ny, a);
  RationalMatrix unshift = RationalMatrix::identity(ny + nz);
  unshift.set_block(0, ny, -a);
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const auto& el = elements[k];
    if (el.u.rows() != ny || el.v.rows() != nz)
      throw DimensionMismatch("block element does not match A");
    const RationalMatrix image = el.full() * graph;
    // The image lies in the graph iff its top block is -A times its bottom block.
    const bool inv = image.block(0, 0, ny, nz) == -(a * image.block(ny, 0, nz, nz));
    const RationalMatrix conj = shift * el.full() * unshift;
    const bool diag = conj.block(0, ny, ny, nz).is_zero();
    if (!inv)
      out.invariant = false;
    if (!diag)
      out.block_diagonal = false;
    if ((!inv || !diag) && !out.failing_element)
      out.failing_element = k;
  }
  return out;
}

double spectral_norm(const RationalMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0)
    return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.to_double());
  return svd.singularValues()(0);
}

ClosureResult group_closure(const std::vector<RationalMatrix>& generators, std::size_t cap) {
  if (cap < 1)
    throw InvalidInput("closure cap must be at least 1");
  ClosureResult out;
  std::size_t n = 0;
  if (!generators.empty())
    n = generators.front().rows();
  std::vector<RationalMatrix> steps;
  for (const auto& g : generators) {
    auto inv = g.inverse();
    if (!inv)
      throw InvalidInput("generator is not invertible: " + g.to_string());
    steps.push_back(g);
    steps.push_back(std::move(*inv));
  }
  std::set<std::string> seen;
  std::deque<std::size_t> queue;
  auto add = [&](RationalMatrix m) {
    if (!seen.insert(m.to_string()).second)
      return;
    out.elements.push_back(std::move(m));
    queue.push_back(out.elements.size() - 1);
  };
  add(RationalMatrix::identity(n));
  out.closed = true;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& s : steps) {
      add(out.elements[i] * s);
      if (out.elements.size() > cap) {
        out.closed = false;
        break;
      }
    }
    if (!out.closed)
      break;
  }
  for (const auto& m : out.elements)
    out.max_operator_norm = std::max(out.max_operator_norm, spectral_norm(m));
  return out;
}

InjectivityResult injectivity_check(const std::vector<RationalMatrix>& elements, std::size_t ny) {
  InjectivityResult out;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const BlockElement b = BlockElement::split(elements[i], ny);
    auto [it, fresh] = seen.try_emplace(b.u.to_string() + "|" + b.v.to_string(), i);
    if (!fresh && elements[it->second] != elements[i]) {
      out.injective = false;
      out.collision = std::make_pair(it->second, i);
      return out;
    }
  }
  return out;
}

InjectivityResult injectivity_check(const LiftingProblem& problem) {
  return injectivity_check(problem.group(), problem.ny());
}

std::vector<NamedProblem> shipped_problems() {
  const RationalMatrix reflection{{1, 1}, {0, -1}};
  // Conjugates of block-diagonal matrices by (Id B; 0 Id), so the generated
  // groups are finite.
  const RationalMatrix d4_swap{{0, 1, 1}, {1, 0, -1}, {0, 0, 1}};
  const RationalMatrix d4_sign{{-1, 0, 2}, {0, 1, 0}, {0, 0, 1}};
  const RationalMatrix d4_flip{{1, 0, -2}, {0, 1, 0}, {0, 0, -1}};
  const RationalMatrix skew_swap{{1, -1, 1}, {0, 0, 1}, {0, 1, 0}};
  const RationalMatrix skew_sign{{-1, 2, 0}, {0, 1, 0}, {0, 0, 1}};
  // Order three on Z; its p-norm lifting is not linear.
  const RationalMatrix rotation{{1, -1, -1}, {0, 0, -1}, {0, 1, -1}};
  return {
      {"euclidean", 1, 1, {}, NormSpec::quadratic()},
      {"reflection-quadratic", 1, 1, {reflection}, NormSpec::quadratic()},
      {"reflection-p4", 1, 1, {reflection}, NormSpec::pnorm(4)},
      {"blockdiag-quadratic", 1, 1, {RationalMatrix{{-1, 0}, {0, 1}}}, NormSpec::quadratic()},
      {"dihedral-quadratic", 2, 1, {d4_swap, d4_sign, d4_flip}, NormSpec::quadratic()},
      {"dihedral-p4", 2, 1, {d4_swap, d4_sign, d4_flip}, NormSpec::pnorm(4)},
      {"skew-quadratic", 1, 2, {skew_swap, skew_sign}, NormSpec::quadratic()},
      {"skew-p4", 1, 2, {skew_swap, skew_sign}, NormSpec::pnorm(4)},
      {"rotation-quadratic", 1, 2, {rotation}, NormSpec::quadratic()},
      {"rotation-p4", 1, 2, {rotation}, NormSpec::pnorm(4)},
  };
}

LiftingProblem build_problem(const NamedProblem& spec, SolverOptions options) {
  std::vector<RationalMatrix> gens = spec.generators;
  if (gens.empty())
    gens.push_back(RationalMatrix::identity(spec.ny + spec.nz));
  ClosureResult c = group_closure(gens, 256);
  if (!c.closed)
    throw InvalidInput("group of problem " + spec.name + " did not close within 256 elements");
  return LiftingProblem(spec.ny, spec.nz, std::move(c.elements), spec.norm, options);
}

} // namespace treelab
