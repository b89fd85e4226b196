#include "edgroups/matcore.hpp"

#include <random>

namespace edg {

HermitianEigen hermitian_eig(const CMatrix& h) {
  require_square_finite(h, "hermitian_eig");
  const Eigen::Index m = h.rows();
  if ((h - h.adjoint()).norm() > 1e-10 * h.norm()) {
    throw ContractError("hermitian_eig: input is not Hermitian");
  }
  const auto dec = sym_eig<double>(embed_complex(h));

  // Every eigenvalue of h appears twice in the embedding. A real eigenvector
  // (x; y) yields the complex eigenvector x + iy; Gram-Schmidt picks one
  // representative per complex line.
  HermitianEigen out{CMatrix(m, m), Eigen::VectorXd(m)};
  Eigen::Index accepted = 0;
  for (Eigen::Index k = 0; k < 2 * m && accepted < m; ++k) {
    Eigen::VectorXcd z(m);
    for (Eigen::Index i = 0; i < m; ++i) z(i) = Complex(dec.q(i, k), dec.q(m + i, k));
    for (Eigen::Index j = 0; j < accepted; ++j) {
      z -= out.q.col(j) * out.q.col(j).dot(z);
    }
    const double norm = z.norm();
    if (norm < 0.5) continue;
    out.q.col(accepted) = z / norm;
    out.values(accepted) = dec.values(k);
    ++accepted;
  }
  if (accepted != m) throw InvariantViolation("hermitian_eig: could not extract eigenbasis");
  return out;
}

Matrix embed_complex(const CMatrix& z) {
  const Eigen::Index m = z.rows();
  Matrix out(2 * m, 2 * z.cols());
  const Matrix re = z.real();
  const Matrix im = z.imag();
  out << re, -im, im, re;
  return out;
}

bool spectrum_separated(const Eigen::VectorXd& descending, double rel_gap) {
  if (descending.size() == 0) return true;
  const double scale = descending.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i + 1 < descending.size(); ++i) {
    if (descending(i) - descending(i + 1) < rel_gap * scale) return false;
  }
  return true;
}

Matrix random_general(int n, std::uint64_t seed) {
  if (n < 1) throw ContractError("random_general: n must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Matrix u(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) u(i, j) = unit(rng);
    const Matrix gram = u.transpose() * u;
    const auto dec = sym_eig<double>(gram);
    if (!spectrum_separated(dec.values, kGeneralGap)) continue;
    if (!numerically_invertible(u, det(u))) continue;
    return u;
  }
  throw DegeneracyError("random_general: no general matrix after 100 draws");
}

CMatrix random_general_complex(int m, std::uint64_t seed) {
  if (m < 1) throw ContractError("random_general_complex: m must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    CMatrix u(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const double re = unit(rng);
        u(i, j) = Complex(re, unit(rng));
      }
    const auto dec = hermitian_eig(u.adjoint() * u);
    if (!spectrum_separated(dec.values, kGeneralGap)) continue;
    if (!numerically_invertible(u, det(u))) continue;
    return u;
  }
  throw DegeneracyError("random_general_complex: no general matrix after 100 draws");
}

Matrix random_orthogonal(int n, std::uint64_t seed) {
  if (n < 1) throw ContractError("random_orthogonal: n must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace edg
