#include "edgroups/critsearch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace edg {

namespace {

Matrix unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

std::vector<Matrix> gram_schmidt(std::vector<Matrix> basis) {
  std::vector<Matrix> out;
  for (Matrix& b : basis) {
    for (int pass = 0; pass < 2; ++pass)
      for (const Matrix& q : out) b -= frobenius_inner(q, b) * q;
    const double norm = b.norm();
    if (norm > 1e-12) out.push_back(b / norm);
  }
  return out;
}

// Cofactor matrix: d det(x)[dx] = sum_ab cof(a, b) dx(a, b).
Matrix cofactors(const Matrix& x) {
  const Eigen::Index n = x.rows();
  if (n == 1) return Matrix::Ones(1, 1);
  Matrix cof(n, n);
  Matrix minor(n - 1, n - 1);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      for (Eigen::Index i = 0, r = 0; i < n; ++i) {
        if (i == a) continue;
        for (Eigen::Index j = 0, c = 0; j < n; ++j) {
          if (j == b) continue;
          minor(r, c++) = x(i, j);
        }
        ++r;
      }
      cof(a, b) = ((a + b) % 2 == 0 ? 1.0 : -1.0) * minor.partialPivLu().determinant();
    }
  return cof;
}

void push_upper(std::vector<double>& out, const Matrix& m, bool diagonal) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < (diagonal ? j + 1 : j); ++i) out.push_back(m(i, j));
}

void push_all(std::vector<double>& out, const Matrix& m) {
  for (Eigen::Index k = 0; k < m.size(); ++k) out.push_back(m(k));
}

// Defining equations of g (special orthogonal uses the orthogonal ones; the
// determinant sign is filtered afterwards). With dx set, their derivative in
// direction dx instead.
void membership_terms(std::vector<double>& out, const Matrix& x, const Matrix* dx, const GroupSpec& g,
                      double det_x, const Matrix& cof) {
  const Eigen::Index n = x.rows();
  const Matrix id = Matrix::Identity(n, n);
  switch (g.kind) {
    case GroupKind::orthogonal:
    case GroupKind::special_orthogonal:
      push_upper(out, dx ? Matrix(dx->transpose() * x + x.transpose() * *dx) : Matrix(x.transpose() * x - id), true);
      return;
    case GroupKind::unitary_embedded: {
      const Matrix i = complex_structure(static_cast<int>(n));
      push_upper(out, dx ? Matrix(dx->transpose() * x + x.transpose() * *dx) : Matrix(x.transpose() * x - id), true);
      const Matrix& y = dx ? *dx : x;
      push_all(out, y * i - i * y);
      return;
    }
    case GroupKind::sl:
      out.push_back(dx ? frobenius_inner(cof, *dx) : det_x - 1.0);
      return;
    case GroupKind::sl_pm:
      out.push_back(dx ? 2.0 * det_x * frobenius_inner(cof, *dx) : det_x * det_x - 1.0);
      return;
    case GroupKind::symplectic:
      push_upper(out,
                 dx ? Matrix(dx->transpose() * g.j * x + x.transpose() * g.j * *dx)
                    : Matrix(x.transpose() * g.j * x - g.j),
                 false);
      return;
  }
}

struct Equations {
  const Matrix& u;
  const GroupSpec& g;
  std::vector<Matrix> basis;  // orthonormal; empty for pure membership
  bool critical = true;

  Eigen::VectorXd value(const Matrix& x) const {
    std::vector<double> out;
    if (critical) {
      const Matrix m = x.transpose() * (u - x);
      for (const Matrix& b : basis) out.push_back(frobenius_inner(b, m));
    }
    membership_terms(out, x, nullptr, g, det(x), Matrix());
    return Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
  }

  Matrix jacobian(const Matrix& x) const {
    const Eigen::Index n = x.rows();
    const bool needs_det = g.kind == GroupKind::sl || g.kind == GroupKind::sl_pm;
    const double det_x = needs_det ? det(x) : 0.0;
    const Matrix cof = needs_det ? cofactors(x) : Matrix();
    Matrix jac;
    for (Eigen::Index k = 0; k < n * n; ++k) {
      const Matrix dx = unit(n, k % n, k / n);
      std::vector<double> col;
      if (critical) {
        const Matrix dm = dx.transpose() * (u - x) - x.transpose() * dx;
        for (const Matrix& b : basis) col.push_back(frobenius_inner(b, dm));
      }
      membership_terms(col, x, &dx, g, det_x, cof);
      if (k == 0) jac.resize(static_cast<Eigen::Index>(col.size()), n * n);
      jac.col(k) = Eigen::Map<Eigen::VectorXd>(col.data(), static_cast<Eigen::Index>(col.size()));
    }
    return jac;
  }
};

// Gauss-Newton with Armijo backtracking on 0.5 ||F||^2.
Matrix gauss_newton(const Equations& eq, Matrix x, int max_iterations) {
  Eigen::VectorXd f = eq.value(x);
  double merit = 0.5 * f.squaredNorm();
  for (int it = 0; it < max_iterations && merit > 1e-30; ++it) {
    const Matrix jac = eq.jacobian(x);
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-f);
    if (!step.allFinite()) break;
    const Matrix dx = Eigen::Map<const Matrix>(step.data(), x.rows(), x.cols());
    double t = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      const Matrix trial = x + t * dx;
      const Eigen::VectorXd ft = eq.value(trial);
      const double mt = 0.5 * ft.squaredNorm();
      if (std::isfinite(mt) && mt <= (1.0 - 2e-4 * t) * merit) {
        x = trial;
        f = ft;
        merit = mt;
        accepted = true;
        break;
      }
    }
    if (!accepted || t * dx.norm() < 1e-15 * (1.0 + x.norm())) break;
  }
  return x;
}

Matrix gaussian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix a(n, n);
  for (Eigen::Index k = 0; k < a.size(); ++k) a(k) = normal(rng);
  return a;
}

// exp via scaling and squaring of a truncated Taylor series.
Matrix expm(const Matrix& a) {
  const double norm = a.norm();
  const int squarings = norm > 0.5 ? static_cast<int>(std::ceil(std::log2(norm / 0.5))) : 0;
  const Matrix b = a / std::ldexp(1.0, squarings);
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k <= 18; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

Matrix random_group_element(const GroupSpec& g, std::mt19937_64& rng) {
  const Eigen::Index n = g.n;
  switch (g.kind) {
    case GroupKind::orthogonal:
    case GroupKind::special_orthogonal: {
      Eigen::HouseholderQR<Matrix> qr(gaussian(n, rng));
      Matrix q = qr.householderQ();
      const Matrix r = qr.matrixQR();
      for (Eigen::Index i = 0; i < n; ++i)
        if (r(i, i) < 0) q.col(i) = -q.col(i);
      if (g.kind == GroupKind::special_orthogonal && det(q) < 0) q.col(0) = -q.col(0);
      return q;
    }
    case GroupKind::unitary_embedded: {
      const Eigen::Index m = n / 2;
      CMatrix z(m, m);
      std::normal_distribution<double> normal;
      for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = Complex(normal(rng), normal(rng));
      Eigen::HouseholderQR<CMatrix> qr(z);
      CMatrix q = qr.householderQ();
      const CMatrix r = qr.matrixQR();
      for (Eigen::Index i = 0; i < m; ++i) {
        const double mag = std::abs(r(i, i));
        if (mag > 0) q.col(i) *= std::conj(r(i, i)) / mag;
      }
      return embed_complex(q);
    }
    case GroupKind::sl:
    case GroupKind::sl_pm: {
      Matrix a = gaussian(n, rng);
      double d = det(a);
      while (!(std::abs(d) > 1e-3)) {
        a = gaussian(n, rng);
        d = det(a);
      }
      a /= std::pow(std::abs(d), 1.0 / static_cast<double>(n));
      if (g.kind == GroupKind::sl && d < 0) a.col(0) = -a.col(0);
      return a;
    }
    case GroupKind::symplectic: {
      // exp does not reach every element (trace < -2 in Sp_2), so multiply
      // two exponentials and a random sign; -I is symplectic.
      Matrix x = Matrix::Identity(n, n);
      for (int k = 0; k < 2; ++k) {
        const Matrix a = gaussian(n, rng);
        x = x * expm(g.j * (0.25 * (a + a.transpose())));
      }
      return std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? x : Matrix(-x);
    }
  }
  return Matrix::Identity(n, n);
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void join(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

bool lexicographic_less(const Matrix& a, const Matrix& b) {
  for (Eigen::Index k = 0; k < a.size(); ++k)
    if (a(k) != b(k)) return a(k) < b(k);
  return false;
}

}  // namespace

std::vector<Matrix> lie_basis(const GroupSpec& g) {
  const Eigen::Index n = g.n;
  std::vector<Matrix> out;
  switch (g.kind) {
    case GroupKind::orthogonal:
    case GroupKind::special_orthogonal:
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) out.push_back(unit(n, i, j) - unit(n, j, i));
      break;
    case GroupKind::sl:
    case GroupKind::sl_pm:
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          if (i != j) out.push_back(unit(n, i, j));
      for (Eigen::Index i = 0; i + 1 < n; ++i) out.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
      break;
    case GroupKind::symplectic:
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
          const Matrix s = i == j ? unit(n, i, i) : Matrix(unit(n, i, j) + unit(n, j, i));
          out.push_back(g.j * s);
        }
      break;
    case GroupKind::unitary_embedded: {
      const Eigen::Index m = n / 2;
      const Complex i1(0.0, 1.0);
      for (Eigen::Index a = 0; a < m; ++a) {
        CMatrix d = CMatrix::Zero(m, m);
        d(a, a) = i1;
        out.push_back(embed_complex(d));
        for (Eigen::Index b = a + 1; b < m; ++b) {
          CMatrix re = CMatrix::Zero(m, m);
          re(a, b) = 1.0;
          re(b, a) = -1.0;
          out.push_back(embed_complex(re));
          CMatrix im = CMatrix::Zero(m, m);
          im(a, b) = i1;
          im(b, a) = i1;
          out.push_back(embed_complex(im));
        }
      }
      break;
    }
  }
  return out;
}

std::vector<Matrix> orthonormal_lie_basis(const GroupSpec& g) { return gram_schmidt(lie_basis(g)); }

double critical_residual(const Matrix& x, const Matrix& u, const GroupSpec& g) {
  require_same_size(x, u, "critical_residual");
  if (x.rows() != g.n) throw DimensionError("critical_residual: group size mismatch");
  const Matrix m = x.transpose() * (u - x);
  double acc = 0.0;
  for (const Matrix& b : orthonormal_lie_basis(g)) {
    const double p = frobenius_inner(b, m);
    acc += p * p;
  }
  return std::sqrt(acc) + membership_violation(x, g);
}

Matrix random_group_element(const GroupSpec& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_group_element(g, rng);
}

Census multistart_census(const Matrix& u, const GroupSpec& g, int starts, std::uint64_t seed,
                         const CensusOptions& options) {
  require_square_finite(u, "multistart_census");
  if (u.rows() != g.n) throw DimensionError("multistart_census: group size mismatch");
  if (starts < 1) throw ContractError("multistart_census: starts must be positive");

  const Equations membership{u, g, {}, false};
  const Matrix anchor = gauss_newton(membership, u, options.max_iterations);
  const Equations critical{u, g, orthonormal_lie_basis(g), true};
  const bool sl_kind = g.kind == GroupKind::sl || g.kind == GroupKind::sl_pm;

  Census census;
  std::vector<Matrix> found;
  std::vector<double> residuals;
  for (int s = 0; s < starts; ++s) {
    std::seed_seq sequence{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                           static_cast<std::uint32_t>(s)};
    std::mt19937_64 rng(sequence);
    const double w = options.anchor_weight;
    const Matrix start = (1.0 - w) * random_group_element(g, rng) + w * anchor;
    const Matrix x = gauss_newton(critical, start, options.max_iterations);
    const double r = x.allFinite() ? critical_residual(x, u, g) : INFINITY;
    if (!(r < options.converge_tol)) {
      ++census.dropped;
      continue;
    }
    ++census.converged;
    if (g.kind == GroupKind::special_orthogonal && det(x) < 0) continue;
    found.push_back(x);
    residuals.push_back(r);
  }

  const double radius = options.cluster_radius * (1.0 + u.norm());
  DisjointSets sets(found.size());
  for (std::size_t a = 0; a < found.size(); ++a)
    for (std::size_t b = a + 1; b < found.size(); ++b)
      if ((found[a] - found[b]).norm() <= radius) sets.join(a, b);

  for (std::size_t a = 0; a < found.size(); ++a) {
    if (sets.find(a) != a) continue;
    std::size_t best = a;
    for (std::size_t b = a + 1; b < found.size(); ++b)
      if (sets.find(b) == a && residuals[b] < residuals[best]) best = b;
    CriticalPoint<double> p;
    p.x = found[best];
    p.distance_sq = (u - p.x).squaredNorm();
    p.det_sign = det(p.x) > 0 ? 1 : -1;
    p.residual = residuals[best];
    if (sl_kind) p.c = (p.x.transpose() * (u - p.x)).trace() / static_cast<double>(g.n);
    census.points.push_back(std::move(p));
  }
  std::sort(census.points.begin(), census.points.end(),
            [](const CriticalPoint<double>& a, const CriticalPoint<double>& b) {
              if (a.distance_sq != b.distance_sq) return a.distance_sq < b.distance_sq;
              return lexicographic_less(a.x, b.x);
            });
  return census;
}

bool point_subset(const std::vector<CriticalPoint<double>>& a, const std::vector<CriticalPoint<double>>& b,
                  double radius) {
  return std::all_of(a.begin(), a.end(), [&](const CriticalPoint<double>& p) {
    return std::any_of(b.begin(), b.end(),
                       [&](const CriticalPoint<double>& q) { return (p.x - q.x).norm() <= radius; });
  });
}

bool same_point_set(const std::vector<CriticalPoint<double>>& a, const std::vector<CriticalPoint<double>>& b,
                    double radius) {
  return point_subset(a, b, radius) && point_subset(b, a, radius);
}

}  // namespace edg
