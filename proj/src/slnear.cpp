#include "edgroups/slnear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace edg {

namespace {

constexpr double kBranchAccept = 1e-5;
constexpr double kBranchSeparation = 10.0;

// Candidate pairs (lambda_i^+, lambda_i^-) of c^2 + (2c - mu) l + l^2 = 0.
// Returns nullopt when the pair is complex.
std::optional<std::pair<double, double>> lambda_pair(double c, double mu) {
  double disc = mu * (mu - 4.0 * c);  // (2c - mu)^2 - 4c^2
  if (disc < -1e-10 * mu * mu) return std::nullopt;
  disc = std::max(disc, 0.0);
  const double b = mu - 2.0 * c;
  const double big = 0.5 * (b + std::copysign(std::sqrt(disc), b));
  const double small = big != 0.0 ? c * c / big : 0.0;
  return std::make_pair(big, small);
}

double system_norm(double c, const Eigen::VectorXd& lambda, const Eigen::VectorXd& mu) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    const double f = c * c + (2.0 * c - mu(i)) * lambda(i) + lambda(i) * lambda(i);
    acc += (f / (1.0 + mu(i))) * (f / (1.0 + mu(i)));
  }
  const double p = lambda.prod() - 1.0;
  return std::sqrt(acc + p * p);
}

// Newton on {f_i = 0, prod lambda = 1} in the unknowns (c, lambda).
void polish(double& c, Eigen::VectorXd& lambda, const Eigen::VectorXd& mu) {
  const Eigen::Index n = mu.size();
  double current = system_norm(c, lambda, mu);
  for (int step = 0; step < 8 && current > 1e-15; ++step) {
    Eigen::VectorXd f(n + 1);
    Matrix jac = Matrix::Zero(n + 1, n + 1);
    const double prod = lambda.prod();
    for (Eigen::Index i = 0; i < n; ++i) {
      f(i) = c * c + (2.0 * c - mu(i)) * lambda(i) + lambda(i) * lambda(i);
      jac(i, 0) = 2.0 * c + 2.0 * lambda(i);
      jac(i, 1 + i) = 2.0 * c - mu(i) + 2.0 * lambda(i);
      jac(n, 1 + i) = prod / lambda(i);
    }
    f(n) = prod - 1.0;
    const Eigen::VectorXd delta = jac.fullPivLu().solve(-f);
    if (!delta.allFinite()) return;
    const double c_new = c + delta(0);
    const Eigen::VectorXd lambda_new = lambda + delta.tail(n);
    const double next = system_norm(c_new, lambda_new, mu);
    if (!(next < current)) return;
    c = c_new;
    lambda = lambda_new;
    current = next;
  }
}

// Branch vector minimizing |prod lambda - 1|, accepted only when it is
// unambiguous.
std::optional<Eigen::VectorXd> lift(double c, const Eigen::VectorXd& mu) {
  const Eigen::Index n = mu.size();
  std::vector<std::pair<double, double>> pairs;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto pair = lambda_pair(c, mu(i));
    if (!pair) return std::nullopt;
    pairs.push_back(*pair);
  }
  double best = std::numeric_limits<double>::infinity();
  double runner_up = best;
  std::size_t best_mask = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double prod = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& [a, b] = pairs[static_cast<std::size_t>(i)];
      prod *= (mask >> static_cast<std::size_t>(i)) & 1U ? b : a;
    }
    const double miss = std::abs(prod - 1.0);
    if (miss < best) {
      runner_up = best;
      best = miss;
      best_mask = mask;
    } else if (miss < runner_up) {
      runner_up = miss;
    }
  }
  if (!(best < kBranchAccept) || !(runner_up > kBranchSeparation * best)) {
    throw DegeneracyError("sl: ambiguous lambda branch at c = " + std::to_string(c));
  }
  Eigen::VectorXd lambda(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& [a, b] = pairs[static_cast<std::size_t>(i)];
    lambda(i) = (best_mask >> static_cast<std::size_t>(i)) & 1U ? b : a;
  }
  return lambda;
}

SLSolution build_solution(const Matrix& u, const Matrix& t, double c, const Eigen::VectorXd& lambda) {
  const Eigen::Index n = u.rows();
  SLSolution sol;
  sol.c = c;
  sol.lambdas = lambda;
  sol.s = t * lambda.asDiagonal() * t.transpose();
  const Matrix rhs = c * Matrix::Identity(n, n) + sol.s;
  sol.x = u.transpose().partialPivLu().solve(rhs);
  sol.distance_sq = (u - sol.x).squaredNorm();
  sol.det_sign = det(sol.x) > 0 ? 1 : -1;
  const Matrix m = sol.x.transpose() * (u - sol.x);
  sol.residual = (m - (m.trace() / static_cast<double>(n)) * Matrix::Identity(n, n)).norm();
  return sol;
}

}  // namespace

CriticalPoint<double> SLSolution::as_critical_point() const {
  return CriticalPoint<double>{x, distance_sq, det_sign, residual, c};
}

std::vector<double> select_real_roots(std::span<const Complex> roots) {
  std::vector<double> out;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const Complex r = roots[k];
    const double scale = std::max(1.0, std::abs(r));
    const double im = std::abs(r.imag());
    bool real = im < 1e-8 * scale;
    if (!real && im < 1e-4 * scale) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < roots.size(); ++j)
        if (j != k) nearest = std::min(nearest, std::abs(roots[j] - r));
      real = nearest > 10.0 * im;
    }
    if (real) out.push_back(r.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::VectorXd lambdas_from_sylvester_kernels(double c, std::span<const double> mu) {
  const auto n = static_cast<Eigen::Index>(mu.size());
  const auto levels = chain_levels(Complex(c), mu);
  Eigen::VectorXd lambda(n);
  Complex aggregate = 1.0;  // lambda_(i-1)
  for (Eigen::Index i = 1; i < n; ++i) {
    const Eigen::VectorXcd& next = levels[static_cast<std::size_t>(i + 1)];
    std::vector<Complex> p(static_cast<std::size_t>(next.size()));
    Complex power = 1.0;
    for (Eigen::Index k = 0; k < next.size(); ++k) {
      p[static_cast<std::size_t>(k)] = next(k) * power;
      power *= aggregate;
    }
    const std::vector<Complex> f{c * c, 2.0 * c - mu[static_cast<std::size_t>(i - 1)], 1.0};
    const CMatrix syl = sylvester_matrix<Complex>(p, f);
    Eigen::JacobiSVD<CMatrix> svd(syl, Eigen::ComputeFullV);
    const Eigen::VectorXcd v = svd.matrixV().col(syl.cols() - 1);
    // Kernel spanned by (lambda^(N-1), ..., lambda, 1); least-squares fit of
    // v(k) = lambda v(k + 1) over all consecutive pairs.
    Complex num = 0.0;
    double den = 0.0;
    for (Eigen::Index k = 0; k + 1 < v.size(); ++k) {
      num += std::conj(v(k + 1)) * v(k);
      den += std::norm(v(k + 1));
    }
    const Complex li = num / den;
    lambda(i - 1) = li.real();
    aggregate *= li;
  }
  lambda(n - 1) = (1.0 / aggregate).real();
  return lambda;
}

SLAnalysis sl_analyze(const Matrix& u, const SLOptions& options) {
  require_square_finite(u, "sl_critical_points");
  const Eigen::Index n = u.rows();
  const Eigen::Index cap = options.experimental ? 5 : 4;
  if (n > cap) throw UnsupportedError("sl_critical_points: n = " + std::to_string(n) + " exceeds the supported range");
  if (!numerically_invertible(u, det(u))) throw SingularityError("sl_critical_points: u is singular");

  SLAnalysis a;
  const auto dec = sym_eig<double>(u.transpose() * u);
  a.mu = dec.values;
  a.t = dec.q;
  if (!spectrum_separated(a.mu, kGeneralGap) || a.mu.minCoeff() <= 0.0) {
    throw DegeneracyError("sl_critical_points: u^t u has a repeated eigenvalue");
  }
  const std::span<const double> mu(a.mu.data(), static_cast<std::size_t>(n));
  a.chain = resultant_chain(mu, ChainOptions{options.chain_seed});
  a.roots = poly_roots(a.chain.r1);
  a.complex_root_count = distinct_root_count(a.roots, 1e-7);
  a.real_roots = select_real_roots(a.roots);

  for (double root : a.real_roots) {
    const auto lifted = lift(root, a.mu);
    if (!lifted) continue;
    double c = root;
    Eigen::VectorXd lambda = *lifted;
    polish(c, lambda, a.mu);
    if (options.kernel_cross_check) {
      const Eigen::VectorXd alt = lambdas_from_sylvester_kernels(root, mu);
      if ((alt - lambda).norm() > 1e-5 * (1.0 + lambda.norm())) {
        throw InvariantViolation("sl: Sylvester kernel disagrees with branch selection");
      }
    }
    if (lambda.minCoeff() <= 0.0) continue;
    a.solutions.push_back(build_solution(u, a.t, c, lambda));
  }
  if (a.solutions.empty()) {
    throw InvariantViolation("sl_critical_points: no real solution with positive lambdas");
  }
  std::sort(a.solutions.begin(), a.solutions.end(), [](const SLSolution& x, const SLSolution& y) {
    return x.distance_sq != y.distance_sq ? x.distance_sq < y.distance_sq : x.c < y.c;
  });
  return a;
}

std::vector<SLSolution> sl_critical_points(const Matrix& u, const SLOptions& options) {
  return sl_analyze(u, options).solutions;
}

SLSolution nearest_sl(const Matrix& u, SLComponent component, const SLOptions& options) {
  const auto solutions = sl_critical_points(u, options);
  for (const SLSolution& s : solutions) {
    if (component == SLComponent::pm || s.det_sign > 0) return s;
  }
  throw InvariantViolation("nearest_sl: no real critical point with det +1");
}

int sl_ed_degree(int n, std::uint64_t seed) {
  if (n < 1 || n > 4) throw ContractError("sl_ed_degree: n must lie in 1..4");
  const Matrix u = random_general(n, seed);
  const auto dec = sym_eig<double>(u.transpose() * u);
  const auto chain = resultant_chain(std::span<const double>(dec.values.data(), static_cast<std::size_t>(n)));
  const auto roots = poly_roots(chain.r1);
  return distinct_root_count(roots, 1e-7);
}

SmallestCReport smallest_c_check(const Matrix& u) {
  const auto solutions = sl_critical_points(u);
  SmallestCReport report;
  report.c_of_minimizer = solutions.front().c;
  report.c_min_abs = solutions.front().c;
  for (const SLSolution& s : solutions) {
    if (std::abs(s.c) < std::abs(report.c_min_abs)) report.c_min_abs = s.c;
  }
  report.holds = std::abs(report.c_min_abs - report.c_of_minimizer) <=
                 1e-7 * std::max(1.0, std::abs(report.c_of_minimizer));
  return report;
}

}  // namespace edg
