#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "edgroups/error.hpp"
#include "edgroups/matcore.hpp"

namespace edg {

enum class Var { c, lambda, t };

/// Dense univariate polynomial, coefficient index = degree. Trailing zeros are
/// stripped, so the zero polynomial has no coefficients and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<double> coeffs, Var var = Var::c);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Var var() const { return var_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double operator[](int k) const {
    return k >= 0 && k <= degree() ? coeffs_[static_cast<std::size_t>(k)] : 0.0;
  }
  double leading() const { return is_zero() ? 0.0 : coeffs_.back(); }

  template <typename S>
  S operator()(S x) const {
    S acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + S(*it);
    return acc;
  }

  UniPoly derivative() const;
  /// Rescaled so the largest |coefficient| is 1.
  UniPoly unit_max() const;
  UniPoly monic() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<double> coeffs_;
  Var var_ = Var::c;
};

/// Dense polynomial in (lambda, c); coefficient (i, j) multiplies
/// lambda^i c^j. Trailing all-zero rows and columns are stripped.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(Eigen::MatrixXd coeffs);
  static BiPoly constant(double v);
  static BiPoly monomial(double coef, int lambda_degree, int c_degree);

  int degree_lambda() const { return static_cast<int>(coeffs_.rows()) - 1; }
  int degree_c() const { return static_cast<int>(coeffs_.cols()) - 1; }
  bool is_zero() const { return coeffs_.size() == 0; }
  double coeff(int i, int j) const;
  const Eigen::MatrixXd& coeffs() const { return coeffs_; }

  template <typename S>
  S operator()(S lambda, S c) const {
    S acc(0);
    for (Eigen::Index i = coeffs_.rows() - 1; i >= 0; --i) {
      S row(0);
      for (Eigen::Index j = coeffs_.cols() - 1; j >= 0; --j) row = row * c + S(coeffs_(i, j));
      acc = acc * lambda + row;
    }
    return acc;
  }

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend bool operator==(const BiPoly& a, const BiPoly& b);

 private:
  Eigen::MatrixXd coeffs_;
};

template <typename C>
using Grid = std::vector<std::vector<C>>;

/// Sylvester matrix of p and q, both given as coefficient lists (index =
/// power of the elimination variable). Rows hold the shifted coefficients of
/// p (deg q rows) followed by those of q (deg p rows), highest power first,
/// so det equals Res(p, q).
template <typename C>
Grid<C> sylvester(std::span<const C> p, std::span<const C> q, const C& zero) {
  auto nonzero = [&](std::span<const C> v) {
    for (const C& x : v)
      if (!(x == zero)) return true;
    return false;
  };
  if (p.size() < 2 || q.size() < 2 || !nonzero(p) || !nonzero(q)) {
    throw ContractError("sylvester: both polynomials need positive degree");
  }
  if (p.back() == zero || q.back() == zero) {
    throw ContractError("sylvester: leading coefficient is zero");
  }
  const std::size_t dp = p.size() - 1, dq = q.size() - 1, size = dp + dq;
  Grid<C> out(size, std::vector<C>(size, zero));
  for (std::size_t r = 0; r < dq; ++r)
    for (std::size_t k = 0; k <= dp; ++k) out[r][r + k] = p[dp - k];
  for (std::size_t r = 0; r < dp; ++r)
    for (std::size_t k = 0; k <= dq; ++k) out[dq + r][r + k] = q[dq - k];
  return out;
}

template <typename S>
Mat<S> sylvester_matrix(std::span<const S> p, std::span<const S> q) {
  const Grid<S> g = sylvester<S>(p, q, S(0));
  const auto size = static_cast<Eigen::Index>(g.size());
  Mat<S> out(size, size);
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = 0; j < size; ++j)
      out(i, j) = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

/// Polynomials of the elimination chain at one fixed value of c.
/// levels[i], 2 <= i <= n, holds the coefficients of R_i in the aggregate
/// variable lambda_(i-1) = lambda_1 ... lambda_(i-1); levels[1] holds the single
/// value R_1(c). levels[0] is empty.
std::vector<Eigen::VectorXcd> chain_levels(Complex c, std::span<const double> mu);

inline Complex evaluate_r1(Complex c, std::span<const double> mu) {
  return chain_levels(c, mu)[1](0);
}

struct ChainOptions {
  /// Nonzero seeds rotate and rescale the sampling circles; the resulting
  /// polynomial must not depend on it beyond rounding.
  std::uint64_t seed = 0;
};

struct ChainResult {
  UniPoly r1;                 // normalized to max |coefficient| = 1
  double raw_leading = 0;     // leading coefficient before normalization
  double raw_constant = 0;    // R_1(0) before normalization
  double interpolation_residual = 0;
  std::vector<double> radii;  // sampling circles used
};

/// Eliminates lambda_n, ..., lambda_1 from
///   c^2 + (2c - mu_i) lambda_i + lambda_i^2 = 0,  lambda_1 ... lambda_n = 1
/// by evaluation and interpolation, returning R_1(c) of degree n 2^n.
ChainResult resultant_chain(std::span<const double> mu, const ChainOptions& options = {});

/// Aberth-Ehrlich iteration followed by three Newton polishing steps. Roots
/// are returned with multiplicity, sorted by (real, imaginary) part.
std::vector<Complex> poly_roots(const UniPoly& p);

/// Single-linkage clusters at radius tol * max(1, max |root|).
int distinct_root_count(std::span<const Complex> roots, double tol);

}  // namespace edg
