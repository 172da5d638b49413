#include "commands.hpp"

#include "treelab/automorphism.hpp"
#include "treelab/derivation.hpp"
#include "treelab/errors.hpp"
#include "treelab/liftings.hpp"
#include "treelab/operators.hpp"
#include "treelab/spectral.hpp"
#include "treelab/suites.hpp"
#include "treelab/truncation.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <regex>
#include <set>

namespace treelab::cli {

namespace {

const std::vector<std::string> identity_suites{"cocycle", "lstar_plus_l", "d_formulas", "lambda_d",
                                               "adjoint", "closed_form",  "norm_cert"};
const std::vector<std::string> psi_suites{"psi_singleton", "psi_edge", "theta_conjugation"};

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string case_id(const std::string& suite, int q, int depth, std::uint64_t seed, std::size_t index) {
  return suite + ":q=" + std::to_string(q) + ":depth=" + std::to_string(depth) + ":seed=" + std::to_string(seed) +
         ":case=" + std::to_string(index);
}

const char* status(bool ok) { return ok ? "pass" : "fail"; }

int checked_q(const Config& c, long q) {
  if (q < 2 || q > 64)
    throw ConfigError(c.origin() + ": q must lie in [2, 64], got " + std::to_string(q));
  return static_cast<int>(q);
}

int checked_nonneg(const Config& c, const std::string& key, long v) {
  if (v < 0 || v > 64)
    throw ConfigError(c.origin() + ": `" + key + "` must lie in [0, 64], got " + std::to_string(v));
  return static_cast<int>(v);
}

std::vector<int> q_list(const Config& c, const std::vector<int>& fallback) {
  std::vector<int> qs = c.get_int_list("q", fallback);
  for (int& q : qs)
    q = checked_q(c, q);
  return qs;
}

std::uint64_t seed_of(const Config& c, const RunOptions& o) { return o.seed.value_or(c.get_u64("seed", 0)); }

std::vector<TreeAutomorphism> resolve_generators(const Config& c, int q, int depth, const std::string& fallback) {
  const int pd = checked_nonneg(c, "portrait_depth", c.get_int("portrait_depth", std::max(depth - 1, 0)));
  std::vector<TreeAutomorphism> gens;
  for (const auto& item : c.get_list("generators", {fallback})) {
    if (item == "default") {
      auto g = default_generators(q, pd);
      gens.insert(gens.end(), g.begin(), g.end());
    } else if (item == "portraits") {
      auto g = portrait_generators(q, pd);
      gens.insert(gens.end(), g.begin(), g.end());
    } else if (item == "gap-default") {
      auto g = default_gap_generators(q);
      gens.insert(gens.end(), g.begin(), g.end());
    } else if (item == "identity") {
      gens.push_back(TreeAutomorphism::identity());
    } else {
      try {
        TreeAutomorphism g = TreeAutomorphism::parse(item);
        if (!is_isometry_on_ball(g, q, depth))
          throw ConfigError(c.origin() + ": generator `" + item + "` is not an automorphism for q=" +
                            std::to_string(q));
        gens.push_back(std::move(g));
      } catch (const Error& e) {
        throw ConfigError(c.origin() + ": cannot use generator `" + item + "`: " + e.what());
      }
    }
  }
  if (gens.empty())
    throw ConfigError(c.origin() + ": empty generator list");
  return gens;
}

Record generator_list(const std::vector<TreeAutomorphism>& gens) {
  Record a = Record::array();
  for (const auto& g : gens)
    a.push_back(g.to_string());
  return a;
}

void check_margin(const Config& c, const std::vector<TreeAutomorphism>& gens, int q, int depth, int margin) {
  const Ball ball(q, depth);
  const std::size_t need = required_margin(gens, ball);
  if (static_cast<std::size_t>(margin) < need)
    throw ConfigError(c.origin() + ": margin " + std::to_string(margin) + " is below the generator reach " +
                      std::to_string(need));
  if (depth - margin < 0)
    throw ConfigError(c.origin() + ": margin exceeds depth, the window is empty");
}

// ---- suites ----

void emit_suite(CommandOutput& out, const std::string& command, const std::string& suite, const SuiteParams& p,
                unsigned jobs) {
  const SuiteResult r = run_suite(suite, p, jobs);
  Record rec;
  rec["id"] = command + ":" + suite + ":q=" + std::to_string(p.q) + ":depth=" + std::to_string(p.depth) +
              ":seed=" + std::to_string(p.seed);
  rec["type"] = "suite";
  rec["command"] = command;
  rec["suite"] = suite;
  rec["q"] = p.q;
  rec["depth"] = p.depth;
  rec["seed"] = p.seed;
  rec["cases"] = p.cases;
  rec["failures"] = r.failures;
  Record counters = Record::object();
  for (const auto& [k, v] : r.counters)
    counters[k] = v;
  rec["counters"] = counters;
  rec["status"] = status(r.failures == 0);
  out.ok = out.ok && r.failures == 0;
  out.records.push_back(std::move(rec));
  for (const auto& f : r.failed) {
    Record c;
    c["id"] = case_id(suite, p.q, p.depth, p.seed, f.index);
    c["type"] = "case";
    c["command"] = command;
    c["suite"] = suite;
    c["q"] = p.q;
    c["depth"] = p.depth;
    c["seed"] = p.seed;
    c["case"] = f.index;
    c["case_seed"] = f.case_seed;
    c["inputs"] = f.inputs;
    c["detail"] = f.detail;
    c["status"] = "fail";
    out.records.push_back(std::move(c));
  }
}

Runner suite_command(const std::string& command, const Config& c, const RunOptions& o,
                     const std::vector<std::string>& default_suites) {
  c.require_known({"q", "depth", "cases", "seed", "suites"});
  const auto qs = q_list(c, {3});
  const int depth = checked_nonneg(c, "depth", c.get_int("depth", 4));
  const long cases = c.get_int("cases", 100);
  if (cases < 0)
    throw ConfigError(c.origin() + ": `cases` must be non-negative");
  const auto suites = c.get_list("suites", default_suites);
  for (const auto& s : suites)
    if (!is_suite(s))
      throw ConfigError(c.origin() + ": unknown suite `" + s + "`");
  const std::uint64_t seed = seed_of(c, o);
  const unsigned jobs = o.jobs;
  return [=] {
    CommandOutput out;
    out.columns = {"id", "suite", "q", "depth", "seed", "cases", "failures", "status"};
    for (int q : qs)
      for (const auto& s : suites)
        emit_suite(out, command, s, {q, depth, static_cast<std::size_t>(cases), seed}, jobs);
    if (command == "psi") {
      for (int q : qs) {
        const auto g = TreeAutomorphism::translation(Vertex{1});
        Record ex;
        ex["id"] = "psi:examples:q=" + std::to_string(q);
        ex["type"] = "example";
        ex["command"] = command;
        ex["suite"] = "psi_examples";
        ex["q"] = q;
        ex["depth"] = 2;
        ex["seed"] = seed;
        ex["singleton"] = psi_propagate_singleton(Vertex{1}, g, q).to_string();
        ex["edge"] = psi_propagate_edge(Vertex{1, 2}, g, q).to_string();
        ex["status"] = "pass";
        out.records.push_back(std::move(ex));
      }
    }
    return out;
  };
}

// ---- windowed solves ----

bool lstar_plus_identity(const SolutionSpace& sp, const RationalMatrix& lstar, std::size_t m) {
  const auto hom = sp.restricted_basis(m);
  SparseVec id;
  for (std::size_t i = 0; i < m; ++i)
    id.emplace_back(i * m + i, Rational(1));
  if (!same_restricted_span(hom, {id}, m))
    return false;
  const RationalMatrix diff = sp.to_matrix(sp.particular) - lstar;
  return sp.restriction_contains(diff, m);
}

Runner solve_command(const std::string& solver, const Config& c, const RunOptions& o) {
  c.require_known({"q", "depth", "margin", "generators", "portrait_depth", "stability", "expect_full_dimension",
                   "expect_interior_dimension", "expect_lstar_plus_identity", "seed"});
  const int q = checked_q(c, c.get_int("q", 3));
  const int depth = checked_nonneg(c, "depth", c.get_int("depth", 4));
  const int margin = checked_nonneg(c, "margin", c.get_int("margin", 1));
  const auto gens = resolve_generators(c, q, depth, "default");
  check_margin(c, gens, q, depth, margin);
  const bool stability = c.get_bool("stability", false);
  const auto expect_full = c.get_optional_int("expect_full_dimension");
  const auto expect_interior = c.get_optional_int("expect_interior_dimension");
  const bool expect_lstar = c.get_bool("expect_lstar_plus_identity", false);
  if (expect_lstar && solver != "intertwiner")
    throw ConfigError(c.origin() + ": `expect_lstar_plus_identity` applies to intertwiner only");
  const std::uint64_t seed = seed_of(c, o);
  return [=] {
    auto solve = [&](const Ball& b) {
      if (solver == "commutant")
        return commutant_solve(gens, b, margin);
      if (solver == "gram")
        return invariant_gram_solve(gens, b, margin);
      return intertwiner_solve(gens, b, margin);
    };
    CommandOutput out;
    out.columns = {"id",        "suite",          "q",                  "depth",    "margin",
                   "unknowns",  "constraints",    "full_dimension",     "interior_dimension",
                   "checksum",  "consistent",     "residuals_vanish",   "status"};
    const Ball ball(q, depth);
    const SolutionSpace sp = solve(ball);
    const std::size_t n = ball.size();
    const std::size_t m = sp.report.interior_size;
    Record rec;
    rec["id"] = solver + ":q=" + std::to_string(q) + ":depth=" + std::to_string(depth) +
                ":margin=" + std::to_string(margin);
    rec["type"] = "solve";
    rec["command"] = solver;
    rec["suite"] = solver;
    rec["q"] = q;
    rec["depth"] = depth;
    rec["margin"] = margin;
    rec["seed"] = seed;
    rec["generators"] = generator_list(gens);
    rec["unknowns"] = sp.report.unknowns;
    rec["constraints"] = sp.report.constraints;
    rec["window_size"] = sp.report.window_size;
    rec["interior_size"] = m;
    rec["full_dimension"] = sp.report.full_dimension;
    rec["interior_dimension"] = sp.report.interior_dimension;
    rec["checksum"] = hex64(sp.report.checksum);
    rec["consistent"] = sp.report.consistent;
    bool ok = sp.report.consistent;
    const bool residuals = sp.residuals_vanish();
    rec["residuals_vanish"] = residuals;
    ok = ok && residuals;
    if (solver == "commutant" || solver == "gram") {
      const bool has_id = sp.restriction_contains(RationalMatrix::identity(n), n);
      rec["identity_in_space"] = has_id;
      ok = ok && has_id;
    }
    if (solver == "gram") {
      const bool pd = interior_positive_definite_witness(sp, m, seed).has_value();
      rec["positive_definite_witness"] = pd;
      ok = ok && pd;
    }
    if (solver == "intertwiner") {
      const BallMatrix ls = matrix_of(TreeOperator::children_sum(q), ball);
      const RationalMatrix lstar = ls.dense();
      const bool satisfied = sp.system.max_abs_residual(sp.to_unknowns(lstar)) == 0;
      rec["lstar_satisfies_constraints"] = satisfied;
      ok = ok && satisfied;
      if (!sp.infeasible) {
        const bool matches = lstar_plus_identity(sp, lstar, m);
        rec["interior_equals_lstar_plus_identity"] = matches;
        if (expect_lstar)
          ok = ok && matches;
      } else {
        rec["certificate_rhs"] = to_string(sp.infeasible->rhs_value);
      }
    }
    if (expect_full) {
      rec["expected_full_dimension"] = *expect_full;
      ok = ok && static_cast<long>(sp.report.full_dimension) == *expect_full;
    }
    if (expect_interior) {
      rec["expected_interior_dimension"] = *expect_interior;
      ok = ok && static_cast<long>(sp.report.interior_dimension) == *expect_interior;
    }
    if (stability) {
      const SolutionSpace bigger = solve(Ball(q, depth + 1));
      bool stable = same_restricted_span(sp.restricted_basis(m), bigger.restricted_basis(m), m);
      if (stable && solver == "intertwiner" && !sp.infeasible && !bigger.infeasible) {
        const RationalMatrix a = sp.to_matrix(sp.particular);
        const RationalMatrix b = bigger.to_matrix(bigger.particular);
        stable = sp.restriction_contains(a - b.block(0, 0, n, n), m);
      }
      rec["stable_at_depth_plus_one"] = stable;
      ok = ok && stable;
    }
    rec["status"] = status(ok);
    out.ok = ok;
    out.records.push_back(std::move(rec));
    return out;
  };
}

// ---- spectral gap ----

Runner gap_command(const Config& c, const RunOptions& o) {
  c.require_known({"q", "depth", "margin", "generators", "portrait_depth", "excluded", "duplicate",
                   "expect_positive", "seed"});
  const int q = checked_q(c, c.get_int("q", 3));
  const int depth = checked_nonneg(c, "depth", c.get_int("depth", 5));
  const int margin = checked_nonneg(c, "margin", c.get_int("margin", 1));
  const auto gens = resolve_generators(c, q, depth, "gap-default");
  check_margin(c, gens, q, depth, margin);
  Vertex excluded;
  try {
    excluded = Vertex::parse(c.get_string("excluded", "e"));
    check_alphabet(excluded, q);
  } catch (const Error& e) {
    throw ConfigError(c.origin() + ": bad excluded vertex: " + e.what());
  }
  for (const auto& g : gens)
    if (g.apply(excluded) != excluded)
      throw ConfigError(c.origin() + ": generator " + g.to_string() + " moves the excluded vertex");
  const bool duplicate = c.get_bool("duplicate", true);
  const bool expect_positive = c.get_bool("expect_positive", false);
  const std::uint64_t seed = seed_of(c, o);
  return [=] {
    CommandOutput out;
    out.columns = {"id", "suite", "q", "depth", "margin", "rows", "cols", "dense", "power", "value", "status"};
    const Ball ball(q, depth);
    Record rec;
    rec["id"] = "gap:q=" + std::to_string(q) + ":depth=" + std::to_string(depth) + ":margin=" + std::to_string(margin);
    rec["type"] = "gap";
    rec["command"] = "gap";
    rec["suite"] = "gap";
    rec["q"] = q;
    rec["depth"] = depth;
    rec["margin"] = margin;
    rec["seed"] = seed;
    rec["excluded"] = excluded.to_string();
    rec["generators"] = generator_list(gens);
    bool ok = true;
    try {
      const GapReport r = spectral_gap_report(gens, ball, excluded, margin);
      rec["rows"] = r.rows;
      rec["cols"] = r.cols;
      rec["dense"] = r.dense;
      rec["power"] = r.power;
      rec["power_iterations"] = r.iterations;
      rec["value"] = r.value;
      rec["methods_agree"] = true;
      const bool positive = r.value > 1e-9;
      rec["positive"] = positive;
      if (expect_positive)
        ok = ok && positive;
      if (duplicate) {
        auto doubled = gens;
        doubled.insert(doubled.end(), gens.begin(), gens.end());
        const GapReport d = spectral_gap_report(doubled, ball, excluded, margin);
        const bool scaling = gap_values_agree(d.value, std::sqrt(2.0) * r.value);
        rec["duplicated_value"] = d.value;
        rec["duplicate_scaling_ok"] = scaling;
        ok = ok && scaling;
      }
    } catch (const NumericalInconsistency& e) {
      rec["methods_agree"] = false;
      rec["error"] = e.what();
      ok = false;
    }
    rec["status"] = status(ok);
    out.ok = ok;
    out.records.push_back(std::move(rec));
    return out;
  };
}

// ---- pair orbits ----

Runner orbits_command(const Config& c, const RunOptions& o) {
  c.require_known({"q", "depth", "generators", "portrait_depth", "unordered", "compare", "seed"});
  const int q = checked_q(c, c.get_int("q", 3));
  const int depth = checked_nonneg(c, "depth", c.get_int("depth", 2));
  const auto gens = resolve_generators(c, q, depth, "portraits");
  for (const auto& g : gens)
    if (!g.apply(Vertex::root()).is_root())
      throw ConfigError(c.origin() + ": orbit counting needs root-fixing generators; " + g.to_string() +
                        " moves the root");
  const bool unordered = c.get_bool("unordered", false);
  const bool compare = c.get_bool("compare", true);
  const std::uint64_t seed = seed_of(c, o);
  return [=] {
    CommandOutput out;
    out.columns = {"id", "suite", "q", "depth", "unordered", "orbits", "solver_dimension", "status"};
    const Ball ball(q, depth);
    Record rec;
    rec["id"] = std::string("orbits:q=") + std::to_string(q) + ":depth=" + std::to_string(depth) +
                (unordered ? ":unordered" : ":ordered");
    rec["type"] = "orbits";
    rec["command"] = "orbits";
    rec["suite"] = "orbits";
    rec["q"] = q;
    rec["depth"] = depth;
    rec["seed"] = seed;
    rec["generators"] = generator_list(gens);
    rec["unordered"] = unordered;
    const std::size_t orbits = pair_orbit_count(gens, ball, unordered);
    rec["orbits"] = orbits;
    bool ok = true;
    if (compare) {
      // Ordered pair orbits index the commutant, unordered ones the
      // symmetric invariant forms.
      const SolutionSpace sp = unordered ? invariant_gram_solve(gens, ball, 0) : commutant_solve(gens, ball, 0);
      rec["solver_dimension"] = sp.report.full_dimension;
      ok = sp.report.full_dimension == orbits;
    }
    rec["status"] = status(ok);
    out.ok = ok;
    out.records.push_back(std::move(rec));
    return out;
  };
}

// ---- L* growth ----

Runner growth_command(const Config& c, const RunOptions& o) {
  c.require_known({"q", "depth", "seed"});
  const auto qs = q_list(c, {2, 3, 4, 5, 6, 7, 8});
  const int depth = checked_nonneg(c, "depth", c.get_int("depth", 3));
  if (depth < 1)
    throw ConfigError(c.origin() + ": growth needs depth >= 1");
  const std::uint64_t seed = seed_of(c, o);
  return [=] {
    CommandOutput out;
    out.columns = {"id", "suite", "q", "depth", "norm_squared", "status"};
    for (const auto& [q, value] : lstar_growth(qs, depth)) {
      Record rec;
      rec["id"] = "growth:q=" + std::to_string(q) + ":depth=" + std::to_string(depth);
      rec["type"] = "growth";
      rec["command"] = "growth";
      rec["suite"] = "growth";
      rec["q"] = q;
      rec["depth"] = depth;
      rec["seed"] = seed;
      rec["norm_squared"] = to_string(value);
      const bool ok = value == q;
      rec["status"] = status(ok);
      out.ok = out.ok && ok;
      out.records.push_back(std::move(rec));
    }
    return out;
  };
}

// ---- liftings ----

Record vector_json(const Eigen::VectorXd& v) {
  Record a = Record::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    a.push_back(v(i));
  return a;
}

// Largest observed |phi(z)| / |z| in the Euclidean norm. Only reported: with
// averaged norms no particular constant is guaranteed.
double lifting_norm_ratio(const LiftingProblem& prob, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> n01;
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    Eigen::VectorXd z(static_cast<Eigen::Index>(prob.nz()));
    for (auto& c : z)
      c = n01(rng);
    worst = std::max(worst, lifting_phi(prob, z).norm() / z.norm());
  }
  return worst;
}

Runner lift_command(const Config& c, const RunOptions& o) {
  c.require_known({"problems", "samples", "seed", "tolerance", "max_iterations", "name", "ny", "nz", "matrices",
                   "norm"});
  SolverOptions opts;
  opts.tolerance = c.get_double("tolerance", opts.tolerance);
  opts.max_iterations = static_cast<int>(c.get_int("max_iterations", opts.max_iterations));
  if (!(opts.tolerance > 0) || opts.max_iterations < 1)
    throw ConfigError(c.origin() + ": tolerance and max_iterations must be positive");
  const long samples = c.get_int("samples", 50);
  if (samples < 1)
    throw ConfigError(c.origin() + ": `samples` must be positive");
  std::vector<NamedProblem> chosen;
  if (c.has("ny") || c.has("nz") || c.has("matrices")) {
    if (c.has("problems"))
      throw ConfigError(c.origin() + ": give either `problems` or a custom problem, not both");
    NamedProblem p;
    p.name = c.get_string("name", "custom");
    const long ny = c.get_int("ny", -1);
    const long nz = c.get_int("nz", -1);
    if (ny < 0 || nz < 1)
      throw ConfigError(c.origin() + ": custom problems need ny >= 0 and nz >= 1");
    p.ny = static_cast<std::size_t>(ny);
    p.nz = static_cast<std::size_t>(nz);
    try {
      for (const auto& m : c.get_list("matrices", {}))
        p.generators.push_back(RationalMatrix::parse(m));
      p.norm = NormSpec::parse(c.get_string("norm", "quadratic"));
    } catch (const Error& e) {
      throw ConfigError(c.origin() + ": " + e.what());
    }
    chosen.push_back(std::move(p));
  } else {
    const auto names = c.get_list("problems", {"all"});
    for (const auto& p : shipped_problems())
      if (names == std::vector<std::string>{"all"} || std::find(names.begin(), names.end(), p.name) != names.end())
        chosen.push_back(p);
    for (const auto& n : names) {
      if (n == "all")
        continue;
      const auto all = shipped_problems();
      if (std::none_of(all.begin(), all.end(), [&](const NamedProblem& p) { return p.name == n; }))
        throw ConfigError(c.origin() + ": unknown problem `" + n + "`");
    }
  }
  // Building validates block shape and closure before anything runs.
  std::vector<LiftingProblem> problems;
  for (const auto& p : chosen) {
    try {
      problems.push_back(build_problem(p, opts));
    } catch (const Error& e) {
      throw ConfigError(c.origin() + ": problem " + p.name + ": " + e.what());
    }
  }
  const std::uint64_t seed = seed_of(c, o);
  return [=] {
    CommandOutput out;
    out.columns = {"id",         "suite",          "norm",        "group_order",    "equivariance",
                   "homogeneity", "delta_identity", "Delta_norm", "gradient_error", "status"};
    for (std::size_t k = 0; k < problems.size(); ++k) {
      const auto& spec = chosen[k];
      const auto& prob = problems[k];
      Record rec;
      rec["id"] = "lift:" + spec.name;
      rec["type"] = "lift";
      rec["command"] = "lift";
      rec["suite"] = "lift";
      rec["problem"] = spec.name;
      rec["seed"] = seed;
      rec["norm"] = spec.norm.to_string();
      rec["ny"] = spec.ny;
      rec["nz"] = spec.nz;
      rec["group_order"] = prob.group().size();
      bool ok = true;
      try {
        const ClosureResult closure = group_closure(prob.group(), prob.group().size());
        rec["closed"] = prob.closed();
        rec["max_operator_norm"] = closure.max_operator_norm;
        const bool injective = injectivity_check(prob).injective;
        rec["injective"] = injective;
        const PropertyReport r = lifting_properties(prob, static_cast<int>(samples), seed);
        rec["equivariance"] = r.equivariance;
        rec["section"] = r.section;
        rec["homogeneity"] = r.homogeneity;
        rec["minimality_slack"] = r.minimality_slack;
        rec["delta_identity"] = r.delta_identity;
        rec["Delta_norm"] = r.Delta_norm;
        rec["Delta_equivariance"] = r.Delta_equivariance;
        rec["Delta_z_block"] = r.Delta_z_block;
        rec["gradient_error"] = r.gradient_error;
        rec["phi_norm_ratio"] = lifting_norm_ratio(prob, static_cast<int>(samples), seed);
        ok = prob.closed() && injective && r.equivariance <= 1e-8 && r.section == 0.0 && r.homogeneity <= 1e-8 &&
             r.minimality_slack <= 1e-10 && r.delta_identity <= 1e-8 && r.Delta_equivariance <= 1e-8 &&
             r.Delta_z_block == 0.0 && r.gradient_error <= 1e-6;
        if (spec.norm.family == NormSpec::Family::averaged_quadratic) {
          ok = ok && r.Delta_norm <= 1e-10;
          const RationalMatrix psi = exact_quadratic_psi(prob);
          rec["psi_exact"] = psi.to_string();
          const bool complement = invariant_complement_from_A(psi, prob.blocks()).invariant;
          rec["complement_invariant"] = complement;
          ok = ok && complement;
        }
        if (spec.ny == 1 && spec.nz == 1) {
          const Eigen::VectorXd one = Eigen::VectorXd::Ones(1);
          rec["phi_at_1"] = vector_json(lifting_phi(prob, one));
          rec["psi_at_1"] = vector_json(psi_of(prob, one));
        }
      } catch (const SolverFailure& e) {
        rec["error"] = e.what();
        rec["iterations"] = e.iterations();
        rec["gradient_norm"] = e.gradient_norm();
        ok = false;
      }
      rec["status"] = status(ok);
      out.ok = out.ok && ok;
      out.records.push_back(std::move(rec));
    }
    return out;
  };
}

} // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"verify", "commutant", "gram", "intertwiner", "gap",
                                              "orbits", "growth",    "lift", "psi"};
  return names;
}

Runner resolve_command(const std::string& command, const Config& config, const RunOptions& options) {
  if (command == "verify")
    return suite_command(command, config, options, identity_suites);
  if (command == "psi")
    return suite_command(command, config, options, psi_suites);
  if (command == "commutant" || command == "gram" || command == "intertwiner")
    return solve_command(command, config, options);
  if (command == "gap")
    return gap_command(config, options);
  if (command == "orbits")
    return orbits_command(config, options);
  if (command == "growth")
    return growth_command(config, options);
  if (command == "lift")
    return lift_command(config, options);
  throw ConfigError("unknown command `" + command + "`");
}

namespace {
const std::regex& case_pattern() {
  static const std::regex re(R"(^([a-z_]+):q=(\d+):depth=(\d+):seed=(\d+):case=(\d+)$)");
  return re;
}
} // namespace

bool is_case_id(const std::string& id) { return std::regex_match(id, case_pattern()); }

Record replay_case(const std::string& id) {
  std::smatch m;
  if (!std::regex_match(id, m, case_pattern()))
    throw ConfigError("`" + id + "` is not a case record id");
  const std::string suite = m[1].str();
  if (!is_suite(suite))
    throw ConfigError("unknown suite `" + suite + "`");
  SuiteParams p;
  p.q = std::stoi(m[2].str());
  p.depth = std::stoi(m[3].str());
  p.seed = std::stoull(m[4].str());
  p.cases = 1;
  const std::size_t index = std::stoull(m[5].str());
  if (p.q < 2 || p.q > 64 || p.depth > 64)
    throw ConfigError("case id has parameters out of range");
  const CaseOutcome r = run_case(suite, p, index);
  Record rec;
  rec["id"] = id;
  rec["type"] = "case";
  rec["suite"] = suite;
  rec["q"] = p.q;
  rec["depth"] = p.depth;
  rec["seed"] = p.seed;
  rec["case"] = index;
  rec["case_seed"] = r.case_seed;
  rec["inputs"] = r.inputs;
  rec["detail"] = r.detail;
  rec["status"] = status(r.passed);
  return rec;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"')
      out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_cell(const Record& value) {
  if (value.is_null())
    return "";
  if (value.is_string())
    return csv_escape(value.get<std::string>());
  return csv_escape(value.dump());
}

} // namespace treelab::cli
