#include "edgroups/polyres.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace edg {

namespace {

std::vector<double> strip(std::vector<double> v) {
  while (!v.empty() && v.back() == 0.0) v.pop_back();
  return v;
}

Eigen::MatrixXd strip(const Eigen::MatrixXd& m) {
  Eigen::Index rows = m.rows(), cols = m.cols();
  while (rows > 0 && m.topRows(rows).bottomRows(1).isZero(0.0)) --rows;
  while (cols > 0 && m.leftCols(cols).rightCols(1).isZero(0.0)) --cols;
  if (rows == 0 || cols == 0) return Eigen::MatrixXd();
  return m.topLeftCorner(rows, cols);
}

// Sylvester determinant with formal degrees; the leading coefficient may
// vanish at isolated sample points without invalidating the identity.
Complex numeric_resultant(const Eigen::VectorXcd& p, const Eigen::VectorXcd& q) {
  const Eigen::Index dp = p.size() - 1, dq = q.size() - 1, size = dp + dq;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
  for (Eigen::Index r = 0; r < dq; ++r)
    for (Eigen::Index k = 0; k <= dp; ++k) s(r, r + k) = p(dp - k);
  for (Eigen::Index r = 0; r < dp; ++r)
    for (Eigen::Index k = 0; k <= dq; ++k) s(dq + r, r + k) = q(dq - k);
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(s).determinant();
}

Complex root_of_unity(Eigen::Index k, Eigen::Index count) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::vector<double> coeffs, Var var) : coeffs_(strip(std::move(coeffs))), var_(var) {
  for (double x : coeffs_)
    if (!std::isfinite(x)) throw ContractError("UniPoly: non-finite coefficient");
}

UniPoly UniPoly::derivative() const {
  if (degree() < 1) return UniPoly({}, var_);
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return UniPoly(std::move(d), var_);
}

UniPoly UniPoly::unit_max() const {
  if (is_zero()) return *this;
  double m = 0;
  for (double x : coeffs_) m = std::max(m, std::abs(x));
  std::vector<double> out(coeffs_);
  for (double& x : out) x /= m;
  return UniPoly(std::move(out), var_);
}

UniPoly UniPoly::monic() const {
  if (is_zero()) throw ContractError("UniPoly::monic: zero polynomial");
  std::vector<double> out(coeffs_);
  const double lead = coeffs_.back();
  for (double& x : out) x /= lead;
  return UniPoly(std::move(out), var_);
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[static_cast<int>(k)] + b[static_cast<int>(k)];
  return UniPoly(std::move(out), a.var_);
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[static_cast<int>(k)] - b[static_cast<int>(k)];
  return UniPoly(std::move(out), a.var_);
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly({}, a.var_);
  std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UniPoly(std::move(out), a.var_);
}

// ----------------------------------------------------------------- BiPoly

BiPoly::BiPoly(Eigen::MatrixXd coeffs) : coeffs_(strip(coeffs)) {
  if (!coeffs_.allFinite()) throw ContractError("BiPoly: non-finite coefficient");
}

BiPoly BiPoly::constant(double v) { return monomial(v, 0, 0); }

BiPoly BiPoly::monomial(double coef, int lambda_degree, int c_degree) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(lambda_degree + 1, c_degree + 1);
  m(lambda_degree, c_degree) = coef;
  return BiPoly(m);
}

double BiPoly::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i > degree_lambda() || j > degree_c()) return 0.0;
  return coeffs_(i, j);
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  const Eigen::Index rows = std::max(a.coeffs_.rows(), b.coeffs_.rows());
  const Eigen::Index cols = std::max(a.coeffs_.cols(), b.coeffs_.cols());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, cols);
  out.topLeftCorner(a.coeffs_.rows(), a.coeffs_.cols()) += a.coeffs_;
  out.topLeftCorner(b.coeffs_.rows(), b.coeffs_.cols()) += b.coeffs_;
  return BiPoly(out);
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + b * BiPoly::constant(-1.0); }

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero() || b.is_zero()) return BiPoly();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.coeffs_.rows() + b.coeffs_.rows() - 1,
                                              a.coeffs_.cols() + b.coeffs_.cols() - 1);
  for (Eigen::Index i = 0; i < a.coeffs_.rows(); ++i)
    for (Eigen::Index j = 0; j < a.coeffs_.cols(); ++j) {
      if (a.coeffs_(i, j) == 0.0) continue;
      out.block(i, j, b.coeffs_.rows(), b.coeffs_.cols()) += a.coeffs_(i, j) * b.coeffs_;
    }
  return BiPoly(out);
}

bool operator==(const BiPoly& a, const BiPoly& b) {
  return a.coeffs_.rows() == b.coeffs_.rows() && a.coeffs_.cols() == b.coeffs_.cols() &&
         a.coeffs_ == b.coeffs_;
}

// ---------------------------------------------------------------- chain

std::vector<Eigen::VectorXcd> chain_levels(Complex c, std::span<const double> mu) {
  const auto n = static_cast<int>(mu.size());
  if (n < 1) throw ContractError("chain_levels: empty mu");
  std::vector<Eigen::VectorXcd> levels(static_cast<std::size_t>(n) + 1);

  // R_n = c^2 L^2 + (2c - mu_n) L + 1 in L = lambda_(n-1).
  Eigen::VectorXcd top(3);
  top << 1.0, 2.0 * c - mu[static_cast<std::size_t>(n - 1)], c * c;
  levels[static_cast<std::size_t>(n)] = top;
  if (n == 1) {
    levels[1] = Eigen::VectorXcd::Constant(1, top.sum());
    return levels;
  }

  for (int i = n - 1; i >= 1; --i) {
    const Eigen::VectorXcd& prev = levels[static_cast<std::size_t>(i + 1)];
    const Eigen::Index db = prev.size() - 1;
    Eigen::VectorXcd f(3);
    f << c * c, 2.0 * c - mu[static_cast<std::size_t>(i - 1)], 1.0;

    // R_{i+1}(lambda_(i-1) lambda_i) as a polynomial in lambda_i.
    auto at = [&](Complex ell) {
      Eigen::VectorXcd p(db + 1);
      Complex power = 1.0;
      for (Eigen::Index k = 0; k <= db; ++k) {
        p(k) = prev(k) * power;
        power *= ell;
      }
      return numeric_resultant(p, f);
    };

    if (i == 1) {
      levels[1] = Eigen::VectorXcd::Constant(1, at(1.0));
      break;
    }
    // R_i has lambda_(i-1)-degree exactly 2 db; interpolate on roots of unity.
    const Eigen::Index count = 2 * db + 1;
    Eigen::VectorXcd values(count);
    for (Eigen::Index k = 0; k < count; ++k) values(k) = at(root_of_unity(k, count));
    Eigen::VectorXcd coeffs(count);
    for (Eigen::Index j = 0; j < count; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index k = 0; k < count; ++k) acc += values(k) * std::conj(root_of_unity((j * k) % count, count));
      coeffs(j) = acc / static_cast<double>(count);
    }
    levels[static_cast<std::size_t>(i)] = coeffs;
  }
  return levels;
}

ChainResult resultant_chain(std::span<const double> mu, const ChainOptions& options) {
  const auto n = static_cast<int>(mu.size());
  if (n < 1) throw ContractError("resultant_chain: empty mu");
  if (n > 6) throw UnsupportedError("resultant_chain: n > 6 is out of range");
  Eigen::VectorXd sorted(n);
  for (int i = 0; i < n; ++i) {
    const double m = mu[static_cast<std::size_t>(i)];
    if (!std::isfinite(m) || m <= 0.0) throw DegeneracyError("resultant_chain: mu must be positive");
    sorted(i) = m;
  }
  std::sort(sorted.data(), sorted.data() + n, std::greater<>());
  if (!spectrum_separated(sorted, kGeneralGap)) {
    throw DegeneracyError("resultant_chain: mu values are not separated");
  }

  const int degree = n * (1 << n);
  const int count = degree + 1;

  double phase = 0.0, stretch = 1.0;
  if (options.seed != 0) {
    std::mt19937_64 rng(options.seed);
    phase = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi / count)(rng);
    stretch = std::uniform_real_distribution<double>(0.8, 1.25)(rng);
  }

  // Coefficient j read off the circle of radius r carries an error of about
  // eps * max_{|z|=r} |R_1| / r^j, so each coefficient is taken from the
  // circle minimizing that estimate.
  const double top = std::max(1.0, 2.0 * std::sqrt(sorted(0)));
  const int kmax = static_cast<int>(std::ceil(std::log2(top))) + 1;
  ChainResult out;
  for (int k = -3; k <= kmax; ++k) out.radii.push_back(stretch * std::ldexp(1.0, k));

  struct Circle {
    double radius;
    std::vector<Complex> nodes;
    std::vector<Complex> values;
    double peak;
  };
  std::vector<Circle> circles;
  std::vector<double> coeffs(static_cast<std::size_t>(count), 0.0);
  std::vector<double> best(static_cast<std::size_t>(count), std::numeric_limits<double>::infinity());

  for (double r : out.radii) {
    Circle circle{r, {}, {}, 0.0};
    for (int k = 0; k < count; ++k) {
      const double angle = 2.0 * std::numbers::pi * k / count + phase;
      const Complex z = std::polar(r, angle);
      circle.nodes.push_back(z);
      circle.values.push_back(evaluate_r1(z, mu));
      circle.peak = std::max(circle.peak, std::abs(circle.values.back()));
    }
    for (int j = 0; j < count; ++j) {
      Complex acc = 0.0;
      for (int k = 0; k < count; ++k) {
        acc += circle.values[static_cast<std::size_t>(k)] *
               std::conj(root_of_unity((static_cast<Eigen::Index>(j) * k) % count, count));
      }
      // p(r e^{i(2 pi k / K + phase)}) = sum_j a_j r^j e^{i j phase} w^{jk}
      const Complex a = acc / static_cast<double>(count) / std::polar(std::pow(r, j), j * phase);
      const double estimate = circle.peak / std::pow(r, j);
      if (estimate < best[static_cast<std::size_t>(j)]) {
        best[static_cast<std::size_t>(j)] = estimate;
        coeffs[static_cast<std::size_t>(j)] = a.real();
      }
    }
    circles.push_back(std::move(circle));
  }

  const UniPoly raw(coeffs, Var::c);
  for (const Circle& circle : circles) {
    double worst = 0.0;
    for (std::size_t k = 0; k < circle.nodes.size(); ++k) {
      worst = std::max(worst, std::abs(raw(circle.nodes[k]) - circle.values[k]));
    }
    out.interpolation_residual = std::max(out.interpolation_residual, worst / circle.peak);
  }
  if (out.interpolation_residual > 1e-6) {
    throw ConditioningError("resultant_chain: interpolation residual " +
                            std::to_string(out.interpolation_residual));
  }
  if (raw.degree() != degree) {
    throw ConditioningError("resultant_chain: leading coefficient vanished");
  }
  out.raw_leading = raw.leading();
  out.raw_constant = raw[0];
  out.r1 = raw.unit_max();
  return out;
}

// ----------------------------------------------------------------- roots

namespace {

struct Evaluation {
  Complex value;
  Complex slope;
  double scale;  // sum |a_k| |z|^k
};

Evaluation evaluate(const std::vector<double>& a, Complex z) {
  Complex p = 0.0, dp = 0.0;
  double s = 0.0;
  const double az = std::abs(z);
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
    s = s * az + std::abs(*it);
  }
  return {p, dp, s};
}

}  // namespace

std::vector<Complex> poly_roots(const UniPoly& poly) {
  const int degree = poly.degree();
  if (degree < 1) throw ContractError("poly_roots: degree must be at least 1");
  if (std::abs(poly.leading()) < 1e-300) throw ContractError("poly_roots: leading coefficient too small");

  std::vector<Complex> roots;
  std::vector<double> a = poly.coeffs();
  std::size_t zeros = 0;
  while (zeros < a.size() && a[zeros] == 0.0) ++zeros;
  roots.assign(zeros, Complex(0.0));
  a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(zeros));
  const int d = static_cast<int>(a.size()) - 1;
  const double lead = a.back();
  for (double& x : a) x /= lead;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (d == 1) {
    roots.emplace_back(-a[0]);
  } else if (d > 1) {
    const double radius = std::pow(std::abs(a[0]), 1.0 / d);
    std::vector<Complex> z(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * std::numbers::pi * k / d + 0.4);
    std::vector<bool> done(static_cast<std::size_t>(d), false);

    int iteration = 0;
    for (; iteration < 500; ++iteration) {
      bool all = true;
      for (int k = 0; k < d; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        if (done[ku]) continue;
        const Evaluation e = evaluate(a, z[ku]);
        if (std::abs(e.value) <= 8.0 * d * eps * e.scale) {
          done[ku] = true;
          continue;
        }
        all = false;
        const Complex ratio = e.value / e.slope;
        Complex repulsion = 0.0;
        for (int j = 0; j < d; ++j) {
          if (j != k) repulsion += 1.0 / (z[ku] - z[static_cast<std::size_t>(j)]);
        }
        const Complex step = ratio / (1.0 - ratio * repulsion);
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
        z[ku] -= step;
        if (std::abs(step) <= 2.0 * eps * std::abs(z[ku])) done[ku] = true;
      }
      if (all) break;
    }

    for (Complex& root : z) {
      for (int polish = 0; polish < 3; ++polish) {
        const Evaluation e = evaluate(a, root);
        if (e.slope == 0.0) break;
        const Complex candidate = root - e.value / e.slope;
        if (std::abs(evaluate(a, candidate).value) < std::abs(e.value)) root = candidate;
      }
      const Evaluation e = evaluate(a, root);
      if (!(std::abs(e.value) <= 1e-8 * e.scale)) {
        throw ConvergenceError("poly_roots: Aberth iteration did not converge");
      }
    }
    roots.insert(roots.end(), z.begin(), z.end());
  }

  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return roots;
}

int distinct_root_count(std::span<const Complex> roots, double tol) {
  if (roots.empty()) return 0;
  double scale = 1.0;
  for (const Complex& r : roots) scale = std::max(scale, std::abs(r));
  const double radius = tol * scale;
  std::vector<std::size_t> parent(roots.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) <= radius) parent[find(i)] = find(j);
  int clusters = 0;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (find(i) == i) ++clusters;
  return clusters;
}

}  // namespace edg
