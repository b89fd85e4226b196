#include "edgroups/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "edgroups/critsearch.hpp"
#include "edgroups/io.hpp"
#include "edgroups/orthonear.hpp"
#include "edgroups/slnear.hpp"
#include "edgroups/torused.hpp"

namespace edg {

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitUnsupported = 4;

CommandResult run(const GlobalOptions& options, const std::function<RunReport()>& body) {
  CommandResult result;
  const auto start = std::chrono::steady_clock::now();
  try {
    RunReport report = body();
    if (options.timing) {
      report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    }
    const bool failed = std::any_of(report.counts.begin(), report.counts.end(),
                                    [](const CountEntry& c) { return !c.pass; }) ||
                        (report.command == "verify" && !report.diagnostics.empty());
    result.exit_code = failed ? kExitVerify : 0;
    for (const std::string& d : report.diagnostics) result.err += d + "\n";
    result.out = to_json(report);
    result.report = std::move(report);
  } catch (const UnsupportedError& e) {
    result.exit_code = kExitUnsupported;
    result.err = std::string("unsupported: ") + e.what() + "\n";
  } catch (const ParseError& e) {
    result.exit_code = kExitInput;
    result.err = std::string("parse error: ") + e.what() + "\n";
  } catch (const ContractError& e) {
    result.exit_code = kExitInput;
    result.err = std::string("invalid input: ") + e.what() + "\n";
  } catch (const DimensionError& e) {
    result.exit_code = kExitInput;
    result.err = std::string("invalid input: ") + e.what() + "\n";
  } catch (const Error& e) {
    // Degeneracy, singularity, conditioning, convergence, invariant failures.
    result.exit_code = kExitNumeric;
    result.err = std::string("numerical failure: ") + e.what() + "\n";
  }
  return result;
}

GroupKind group_or_throw(const std::string& name) {
  if (name == "torus") throw UnsupportedError("torus groups are handled by the bkk command");
  const auto kind = parse_group_kind(name);
  if (!kind) throw ParseError("unknown group '" + name + "'");
  return *kind;
}

struct Input {
  std::string digest;
  Matrix real;
  CMatrix complex;
};

Input load(const std::string& path, bool complex) {
  const std::string text = read_text_file(path);
  Input in;
  in.digest = fnv1a_hex(text);
  if (complex) {
    in.complex = parse_complex_matrix(text);
  } else {
    in.real = parse_matrix(text);
  }
  return in;
}

RunReport base_report(const char* command, const std::string& group, int n, const std::string& digest,
                      const GlobalOptions& options) {
  RunReport r;
  r.command = command;
  r.group = group;
  r.n = n;
  r.input_digest = digest;
  r.seed = options.seed;
  return r;
}

double scaled(const GlobalOptions& options, double threshold) { return threshold * options.tol / 1e-7; }

void add_count(RunReport& r, std::string label, long long expected, long long observed) {
  r.counts.push_back(CountEntry{std::move(label), expected, observed, expected == observed});
  if (expected != observed) {
    r.diagnostics.push_back(r.counts.back().label + ": expected " + std::to_string(expected) + ", observed " +
                            std::to_string(observed));
  }
}

void require(RunReport& r, bool ok, const std::string& what) {
  if (!ok) r.diagnostics.push_back(what);
}

std::uint64_t draw_seed(const GlobalOptions& options, int k) { return options.seed * 1000 + static_cast<std::uint64_t>(k); }

void verify_orthogonal(RunReport& r, const GlobalOptions& options) {
  for (int n = 2; n <= 6; ++n) {
    long long observed = 1LL << n;
    for (int k = 0; k < 3; ++k) {
      const Matrix u = random_general(n, draw_seed(options, k));
      const auto pts = enumerate_orthogonal_critical(u);
      if (static_cast<long long>(pts.size()) != observed) observed = static_cast<long long>(pts.size());
      for (const auto& p : pts) require(r, p.residual < options.tol, "O(" + std::to_string(n) + "): residual too large");
      const double best = nearest_orthogonal(u).distance_sq;
      for (const auto& p : pts) {
        require(r, best <= p.distance_sq + 1e-9, "O(" + std::to_string(n) + "): polar factor not minimal");
      }
    }
    add_count(r, "orthogonal n=" + std::to_string(n), 1LL << n, observed);
  }
}

void verify_special_orthogonal(RunReport& r, const GlobalOptions& options) {
  for (int n = 2; n <= 6; ++n) {
    long long observed = 1LL << (n - 1);
    for (int k = 0; k < 3; ++k) {
      const Matrix u = random_general(n, draw_seed(options, k));
      const auto pts = enumerate_orthogonal_critical(u);
      const auto plus = std::count_if(pts.begin(), pts.end(), [](const auto& p) { return p.det_sign > 0; });
      if (plus != observed) observed = plus;
      double best = INFINITY;
      for (const auto& p : pts)
        if (p.det_sign > 0) best = std::min(best, p.distance_sq);
      const auto so = nearest_special_orthogonal(u);
      require(r, so.det_sign > 0 && std::abs(so.distance_sq - best) <= 1e-9 * (1.0 + best),
              "SO(" + std::to_string(n) + "): nearest point is not the best det +1 point");
    }
    add_count(r, "special-orthogonal n=" + std::to_string(n), 1LL << (n - 1), observed);
  }
}

void verify_unitary(RunReport& r, const GlobalOptions& options) {
  for (int m = 1; m <= 3; ++m) {
    long long observed = 1LL << m;
    for (int k = 0; k < 3; ++k) {
      const CMatrix u = random_general_complex(m, draw_seed(options, k));
      const auto pts = enumerate_unitary_critical(u);
      if (static_cast<long long>(pts.size()) != observed) observed = static_cast<long long>(pts.size());
      const CMatrix id = CMatrix::Identity(m, m);
      for (const auto& p : pts) {
        require(r, (p.x.adjoint() * p.x - id).norm() < options.tol, "U(" + std::to_string(m) + "): not unitary");
        require(r, pts.front().distance_sq <= p.distance_sq + 1e-9,
                "U(" + std::to_string(m) + "): positive-root point not minimal");
      }
    }
    add_count(r, "unitary m=" + std::to_string(m), 1LL << m, observed);
  }
}

void check_sl_solution(RunReport& r, const Matrix& u, const SLAnalysis& a, const SLSolution& s,
                       const GlobalOptions& options) {
  const Eigen::Index n = u.rows();
  const std::string tag = "SL(" + std::to_string(n) + ") c=" + std::to_string(s.c) + ": ";
  for (Eigen::Index i = 0; i < n; ++i) {
    const double f = s.c * s.c + (2.0 * s.c - a.mu(i)) * s.lambdas(i) + s.lambdas(i) * s.lambdas(i);
    require(r, std::abs(f) <= options.tol * (1.0 + a.mu(i)), tag + "f_i does not vanish");
    require(r, s.lambdas(i) > 0.0, tag + "lambda not positive");
  }
  require(r, std::abs(s.lambdas.prod() - 1.0) <= options.tol, tag + "prod lambda != 1");
  require(r, std::abs(std::abs(det(s.x)) - 1.0) <= options.tol, tag + "|det x| != 1");
  const Matrix m = s.x.transpose() * (u - s.x);
  require(r, (m - s.c * Matrix::Identity(n, n)).norm() <= options.tol * (1.0 + u.norm()), tag + "x^t(u-x) != cI");
}

void verify_sl(RunReport& r, const GlobalOptions& options) {
  for (int n = 1; n <= 3; ++n) {
    add_count(r, "sl degree n=" + std::to_string(n), static_cast<long long>(n) << n,
              sl_ed_degree(n, draw_seed(options, 0)));
    const Matrix u = random_general(n, draw_seed(options, 0));
    const SLAnalysis a = sl_analyze(u);
    require(r, a.chain.r1.degree() == n << n, "SL(" + std::to_string(n) + "): wrong degree of R_1");
    for (const SLSolution& s : a.solutions) check_sl_solution(r, u, a, s, options);
  }
}

void verify_torus(RunReport& r, const GlobalOptions& options) {
  for (int d : {1, 3, 5, 7, 2, 4}) {
    const int index = d % 2 == 0 ? 2 : 1;
    const WeightSet w = tensor_power_weightset(d);
    const long long bound = bkk_bound(w) / index;
    long long observed = bound;
    for (int k = 0; k < 10; ++k) {
      const int count = torus_critical_count_rank1(w, character_coefficients(w, draw_seed(options, k)), index);
      if (count != bound) observed = count;
    }
    const long long expected = d % 2 == 0 ? d : 2 * d;
    add_count(r, "torus d=" + std::to_string(d), expected, observed);
    require(r, bound == expected, "torus d=" + std::to_string(d) + ": bound differs from expected count");
  }
}

void verify_symplectic(RunReport& r, const GlobalOptions& options) {
  CensusOptions census;
  census.converge_tol = scaled(options, 1e-9);
  const Matrix u2 = random_general(2, draw_seed(options, 0));
  const auto sp2 = multistart_census(u2, GroupSpec::make(GroupKind::symplectic, 2), options.starts, options.seed, census);
  const auto sl2 = multistart_census(u2, GroupSpec::make(GroupKind::sl, 2), options.starts, options.seed, census);
  require(r, same_point_set(sp2.points, sl2.points, 1e-5 * (1.0 + u2.norm())), "Sp(2) census differs from SL(2)");
  require(r, sp2.points.size() <= 4, "Sp(2) census exceeds 4 points");
  const Matrix u4 = random_general(4, draw_seed(options, 0));
  const auto sp4 = multistart_census(u4, GroupSpec::make(GroupKind::symplectic, 4), options.starts, options.seed, census);
  require(r, !sp4.points.empty() && sp4.points.size() <= 24, "Sp(4) census outside [1, 24]");
  r.values.emplace_back("sp2_real_points", static_cast<long long>(sp2.points.size()));
  r.values.emplace_back("sp4_real_points", static_cast<long long>(sp4.points.size()));
}

}  // namespace

CommandResult cmd_nearest(const std::string& group, const std::string& input,
                          const std::optional<std::string>& component, const GlobalOptions& options) {
  return run(options, [&] {
    const GroupKind kind = group_or_throw(group);
    if (kind == GroupKind::symplectic) throw UnsupportedError("nearest is not available for symplectic groups");
    const Input in = load(input, kind == GroupKind::unitary_embedded);
    if (kind == GroupKind::unitary_embedded) {
      RunReport r = base_report("nearest", group, static_cast<int>(in.complex.rows()), in.digest, options);
      r.results.push_back(summarize(nearest_unitary(in.complex), true));
      return r;
    }
    RunReport r = base_report("nearest", group, static_cast<int>(in.real.rows()), in.digest, options);
    switch (kind) {
      case GroupKind::orthogonal:
        r.results.push_back(summarize(nearest_orthogonal(in.real), true));
        break;
      case GroupKind::special_orthogonal:
        r.results.push_back(summarize(nearest_special_orthogonal(in.real), true));
        break;
      default: {
        SLComponent which = kind == GroupKind::sl ? SLComponent::plus : SLComponent::pm;
        if (component) {
          if (*component == "plus") {
            which = SLComponent::plus;
          } else if (*component == "pm") {
            which = SLComponent::pm;
          } else {
            throw ParseError("component must be 'plus' or 'pm'");
          }
        }
        r.results.push_back(summarize(nearest_sl(in.real, which).as_critical_point(), true));
      }
    }
    return r;
  });
}

CommandResult cmd_critical(const std::string& group, const std::string& input, const GlobalOptions& options) {
  return run(options, [&] {
    const GroupKind kind = group_or_throw(group);
    const Input in = load(input, kind == GroupKind::unitary_embedded);
    if (kind == GroupKind::unitary_embedded) {
      RunReport r = base_report("critical", group, static_cast<int>(in.complex.rows()), in.digest, options);
      for (const auto& p : enumerate_unitary_critical(in.complex)) r.results.push_back(summarize(p, true));
      std::stable_sort(r.results.begin(), r.results.end(),
                       [](const PointSummary& a, const PointSummary& b) { return a.distance_sq < b.distance_sq; });
      return r;
    }
    const Matrix& u = in.real;
    const int n = static_cast<int>(u.rows());
    RunReport r = base_report("critical", group, n, in.digest, options);
    std::vector<CriticalPoint<double>> points;
    if (kind == GroupKind::orthogonal || kind == GroupKind::special_orthogonal) {
      for (auto& p : enumerate_orthogonal_critical(u))
        if (kind == GroupKind::orthogonal || p.det_sign > 0) points.push_back(std::move(p));
    } else if ((kind == GroupKind::sl || kind == GroupKind::sl_pm) && n <= 4) {
      const SLAnalysis a = sl_analyze(u);
      for (const SLSolution& s : a.solutions)
        if (kind == GroupKind::sl_pm || s.det_sign > 0) points.push_back(s.as_critical_point());
      r.values.emplace_back("complex_count", a.complex_root_count);
    } else {
      CensusOptions census;
      census.converge_tol = scaled(options, 1e-9);
      const Census c = multistart_census(u, GroupSpec::make(kind, n), options.starts, options.seed, census);
      points = c.points;
      r.values.emplace_back("converged_starts", c.converged);
      r.values.emplace_back("dropped_starts", c.dropped);
    }
    std::stable_sort(points.begin(), points.end(),
                     [](const auto& a, const auto& b) { return a.distance_sq < b.distance_sq; });
    for (const auto& p : points) r.results.push_back(summarize(p, true));
    r.values.emplace_back("real_count", static_cast<long long>(points.size()));
    return r;
  });
}

CommandResult cmd_verify(const std::string& suite, const GlobalOptions& options) {
  return run(options, [&] {
    const std::vector<std::pair<std::string, void (*)(RunReport&, const GlobalOptions&)>> suites{
        {"orthogonal", verify_orthogonal}, {"special-orthogonal", verify_special_orthogonal},
        {"unitary", verify_unitary},       {"sl", verify_sl},
        {"torus", verify_torus},           {"symplectic", verify_symplectic},
    };
    RunReport r = base_report("verify", suite, 0, fnv1a_hex(suite), options);
    bool known = suite == "all";
    for (const auto& [name, check] : suites) {
      if (suite == "all" || suite == name) {
        known = true;
        check(r, options);
      }
    }
    if (!known) throw ParseError("unknown suite '" + suite + "'");
    return r;
  });
}

CommandResult cmd_bkk(const std::string& weightset, const GlobalOptions& options) {
  return run(options, [&] {
    const std::string text = read_text_file(weightset);
    const WeightSetInput in = parse_weightset(text);
    if (!validate_weightset(in.weights)) throw ContractError("weight set is not symmetric, distinct and full rank");
    RunReport r = base_report("bkk", "torus", in.weights.m, fnv1a_hex(text), options);
    const long long bound = bkk_bound(in.weights);
    r.values.emplace_back("bound", bound);
    if (in.weights.m == 1) {
      r.values.emplace_back("corrected_bound", bound / in.lattice_index);
      r.values.emplace_back("count", torus_critical_count_rank1(in.weights,
                                                                character_coefficients(in.weights, options.seed),
                                                                in.lattice_index));
    }
    return r;
  });
}

}  // namespace edg
