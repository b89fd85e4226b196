#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "edgroups/error.hpp"

namespace edg {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using Matrix = Mat<double>;
using CMatrix = Mat<Complex>;

template <typename Derived>
void require_square_finite(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (!a.allFinite()) throw ContractError(std::string(what) + ": non-finite entry");
}

template <typename A, typename B>
void require_same_size(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b,
                       const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": size mismatch");
  }
}

/// <a, b> = tr(a^t b). For complex arguments this is Re tr(a^* b), i.e. the
/// real part of the Hermitian pairing; see real_frobenius_inner for the
/// inner product of the underlying real vector space.
template <typename A, typename B>
typename Eigen::NumTraits<typename A::Scalar>::Real frobenius_inner(
    const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  require_same_size(a, b, "frobenius_inner");
  return std::real(a.conjugate().cwiseProduct(b).sum());
}

/// Inner product of complex-linear maps viewed as real-linear maps of the
/// doubled space: tr_R(a^t b) = 2 Re tr_C(a^* b).
inline double real_frobenius_inner(const CMatrix& a, const CMatrix& b) {
  return 2.0 * frobenius_inner(a, b);
}

template <typename Scalar>
struct EigenDecomposition {
  Mat<Scalar> q;       // orthogonal, columns are eigenvectors
  Vec<Scalar> values;  // descending
};

/// Cyclic Jacobi with a threshold on the first sweeps. Eigenvalues are sorted
/// descending, ties kept in order of first occurrence on the diagonal.
template <typename Scalar>
EigenDecomposition<Scalar> sym_eig(const Mat<Scalar>& s) {
  using std::abs;
  using std::sqrt;
  require_square_finite(s, "sym_eig");
  const Eigen::Index n = s.rows();
  const Scalar scale = s.norm();
  if ((s - s.transpose()).norm() > Scalar(1e-10) * scale) {
    throw ContractError("sym_eig: input is not symmetric");
  }

  Mat<Scalar> a = (s + s.transpose()) / Scalar(2);
  Mat<Scalar> v = Mat<Scalar>::Identity(n, n);
  const Scalar target = Scalar(1e-14) * scale;

  bool converged = false;
  for (int sweep = 0; sweep < 100; ++sweep) {
    Scalar off2(0);
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = 0; q < n; ++q)
        if (p != q) off2 += a(p, q) * a(p, q);
    const Scalar off = sqrt(off2);
    if (off <= target) {
      converged = true;
      break;
    }
    const Scalar threshold = sweep < 3 ? Scalar(0.2) * off / Scalar(n * n) : Scalar(0);

    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (abs(apq) <= threshold || apq == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        Scalar t;
        if (abs(theta) > Scalar(1e150)) {
          t = Scalar(1) / (Scalar(2) * theta);
        } else {
          t = Scalar(1) / (abs(theta) + sqrt(theta * theta + Scalar(1)));
          if (theta < Scalar(0)) t = -t;
        }
        const Scalar c = Scalar(1) / sqrt(t * t + Scalar(1));
        const Scalar sn = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = a(q, p) = Scalar(0);
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) throw ConvergenceError("sym_eig: Jacobi sweeps did not converge");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

  EigenDecomposition<Scalar> out{Mat<Scalar>(n, n), Vec<Scalar>(n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src);
    out.q.col(k) = v.col(src);
  }
  return out;
}

struct HermitianEigen {
  CMatrix q;              // unitary
  Eigen::VectorXd values; // descending
};

/// Hermitian eigenproblem solved through the real symmetric embedding
/// [[A, -B], [B, A]] of A + iB.
HermitianEigen hermitian_eig(const CMatrix& h);

/// Real 2m x 2m matrix of the complex-linear map z, in the basis
/// (e_1, ..., e_m, i e_1, ..., i e_m).
Matrix embed_complex(const CMatrix& z);

/// True iff consecutive entries of a descending list differ by at least
/// rel_gap * max|value|.
bool spectrum_separated(const Eigen::VectorXd& descending, double rel_gap);

/// |det a| must exceed 1e-12 ||a||^n for a to count as invertible.
template <typename Derived>
bool numerically_invertible(const Eigen::MatrixBase<Derived>& a,
                            typename Derived::Scalar determinant) {
  const double norm = a.norm();
  const double bound = 1e-12 * std::pow(norm, static_cast<double>(a.rows()));
  return std::abs(determinant) > bound && norm > 0.0;
}

template <typename Derived>
typename Derived::Scalar det(const Eigen::MatrixBase<Derived>& a) {
  require_square_finite(a, "det");
  using Scalar = typename Derived::Scalar;
  return Eigen::PartialPivLU<Mat<Scalar>>(a.eval()).determinant();
}

template <typename Derived>
Mat<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& a) {
  require_square_finite(a, "inverse");
  using Scalar = typename Derived::Scalar;
  Eigen::PartialPivLU<Mat<Scalar>> lu(a.eval());
  if (!numerically_invertible(a, lu.determinant())) {
    throw SingularityError("inverse: matrix is numerically singular");
  }
  return lu.inverse();
}

/// Entries i.i.d. uniform on [-1, 1], redrawn until u^t u has pairwise
/// separated eigenvalues (relative gap 1e-6) and u is invertible.
Matrix random_general(int n, std::uint64_t seed);

/// Complex analogue: real and imaginary parts uniform on [-1, 1], redrawn
/// until u^* u has separated eigenvalues.
CMatrix random_general_complex(int m, std::uint64_t seed);

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix).
Matrix random_orthogonal(int n, std::uint64_t seed);

inline constexpr double kGeneralGap = 1e-6;

}  // namespace edg
