#include "edgroups/orthonear.hpp"

#include <cmath>

namespace edg {

namespace {

// Distinct-eigenvalue threshold for the polar constructions.
constexpr double kPolarGap = 1e-8;

struct RealSpectrum {
  Matrix y;
  Eigen::VectorXd root;  // sqrt(lambda_i), descending
};

RealSpectrum polar_spectrum(const Matrix& u) {
  require_square_finite(u, "polar");
  if (!numerically_invertible(u, det(u))) throw SingularityError("polar: u is singular");
  const auto dec = sym_eig<double>(u.transpose() * u);
  if (!spectrum_separated(dec.values, kPolarGap) || dec.values.minCoeff() <= 0.0) {
    throw DegeneracyError("polar: u^t u has a repeated eigenvalue");
  }
  return {dec.q, dec.values.cwiseSqrt()};
}

struct ComplexSpectrum {
  CMatrix y;
  Eigen::VectorXd root;
};

ComplexSpectrum polar_spectrum(const CMatrix& u) {
  require_square_finite(u, "polar");
  if (!numerically_invertible(u, det(u))) throw SingularityError("polar: u is singular");
  const auto dec = hermitian_eig(u.adjoint() * u);
  if (!spectrum_separated(dec.values, kPolarGap) || dec.values.minCoeff() <= 0.0) {
    throw DegeneracyError("polar: u^* u has a repeated eigenvalue");
  }
  return {dec.q, dec.values.cwiseSqrt()};
}

// Sign vector number `mask`, lexicographic with + before -.
Eigen::VectorXd signs(std::size_t mask, Eigen::Index n) {
  Eigen::VectorXd eps(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    eps(i) = (mask >> static_cast<std::size_t>(n - 1 - i)) & 1U ? -1.0 : 1.0;
  }
  return eps;
}

CriticalPoint<double> real_point(const Matrix& u, const RealSpectrum& sp, const Eigen::VectorXd& eps) {
  const Eigen::VectorXd inv = eps.cwiseQuotient(sp.root);
  CriticalPoint<double> p;
  p.x = u * sp.y * inv.asDiagonal() * sp.y.transpose();
  p.distance_sq = (u - p.x).squaredNorm();
  p.det_sign = det(p.x) > 0 ? 1 : -1;
  p.residual = orthogonal_residual(p.x, u);
  return p;
}

CriticalPoint<Complex> complex_point(const CMatrix& u, const ComplexSpectrum& sp,
                                     const Eigen::VectorXd& eps) {
  const Eigen::VectorXcd inv = eps.cwiseQuotient(sp.root).cast<Complex>();
  CriticalPoint<Complex> p;
  p.x = u * sp.y * inv.asDiagonal() * sp.y.adjoint();
  p.distance_sq = 2.0 * (u - p.x).squaredNorm();
  // The real embedding of a complex-linear map has determinant |det|^2 > 0.
  p.det_sign = 1;
  p.residual = unitary_residual(p.x, u);
  return p;
}

}  // namespace

double orthogonal_residual(const Matrix& x, const Matrix& u) {
  const Matrix m = x.transpose() * (u - x);
  return (0.5 * (m - m.transpose())).norm();
}

double unitary_residual(const CMatrix& x, const CMatrix& u) {
  const CMatrix m = x.adjoint() * (u - x);
  return std::sqrt(2.0) * (0.5 * (m - m.adjoint())).norm();
}

CriticalPoint<double> nearest_orthogonal(const Matrix& u) {
  const RealSpectrum sp = polar_spectrum(u);
  return real_point(u, sp, Eigen::VectorXd::Ones(u.rows()));
}

std::vector<CriticalPoint<double>> enumerate_orthogonal_critical(const Matrix& u) {
  const RealSpectrum sp = polar_spectrum(u);
  const auto n = u.rows();
  if (n > 20) throw UnsupportedError("enumerate_orthogonal_critical: n too large to enumerate");
  std::vector<CriticalPoint<double>> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    out.push_back(real_point(u, sp, signs(mask, n)));
  }
  return out;
}

CriticalPoint<double> nearest_special_orthogonal(const Matrix& u) {
  const RealSpectrum sp = polar_spectrum(u);
  Eigen::VectorXd eps = Eigen::VectorXd::Ones(u.rows());
  if (det(u) < 0) eps(u.rows() - 1) = -1.0;  // smallest root sits last
  return real_point(u, sp, eps);
}

CriticalPoint<Complex> nearest_unitary(const CMatrix& u) {
  const ComplexSpectrum sp = polar_spectrum(u);
  return complex_point(u, sp, Eigen::VectorXd::Ones(u.rows()));
}

std::vector<CriticalPoint<Complex>> enumerate_unitary_critical(const CMatrix& u) {
  const ComplexSpectrum sp = polar_spectrum(u);
  const auto m = u.rows();
  if (m > 20) throw UnsupportedError("enumerate_unitary_critical: m too large to enumerate");
  std::vector<CriticalPoint<Complex>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    out.push_back(complex_point(u, sp, signs(mask, m)));
  }
  return out;
}

GperpDecomposition<double> gperp_decompose(const Matrix& u, const Matrix& x, const GroupSpec& group) {
  require_square_finite(u, "gperp_decompose");
  require_square_finite(x, "gperp_decompose");
  require_same_size(u, x, "gperp_decompose");
  if (!group.preserves_inner_product()) {
    throw ContractError("gperp_decompose: group does not preserve the inner product");
  }
  if (group.n != x.rows()) throw DimensionError("gperp_decompose: group size mismatch");
  if (membership_violation(x, group) > 1e-7) throw ContractError("gperp_decompose: x is not in the group");

  GperpDecomposition<double> out;
  out.s = x.transpose() * u;  // x^{-1} = x^t
  double asym = (out.s - out.s.transpose()).norm();
  if (group.kind == GroupKind::unitary_embedded) {
    const Matrix i = complex_structure(group.n);
    asym += (out.s * i - i * out.s).norm();
  }
  out.in_gperp = asym <= 1e-7 * std::max(1.0, out.s.norm());
  out.trace = out.s.trace();
  return out;
}

GperpDecomposition<Complex> gperp_decompose(const CMatrix& u, const CMatrix& x) {
  require_square_finite(u, "gperp_decompose");
  require_square_finite(x, "gperp_decompose");
  require_same_size(u, x, "gperp_decompose");
  const CMatrix id = CMatrix::Identity(x.rows(), x.cols());
  if ((x.adjoint() * x - id).norm() > 1e-7) throw ContractError("gperp_decompose: x is not unitary");

  GperpDecomposition<Complex> out;
  out.s = x.adjoint() * u;
  out.in_gperp = (out.s - out.s.adjoint()).norm() <= 1e-7 * std::max(1.0, out.s.norm());
  out.trace = 2.0 * out.s.trace().real();
  return out;
}

}  // namespace edg
