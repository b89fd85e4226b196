#include <cmath>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "edgroups/matcore.hpp"
#include "support.hpp"

using namespace edg;

TEST_CASE("sym_eig agrees with Eigen's self-adjoint solver") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    testing::Gen gen(seed);
    const int n = gen.integer(1, 7);
    const Matrix s = gen.symmetric(n);
    const auto dec = sym_eig<double>(s);
    Eigen::SelfAdjointEigenSolver<Matrix> oracle(s);
    const Eigen::VectorXd expected = oracle.eigenvalues().reverse();
    CHECK((dec.values - expected).norm() <= 1e-12 * (1.0 + s.norm()));
    CHECK((dec.q * dec.values.asDiagonal() * dec.q.transpose() - s).norm() <= 1e-12 * (1.0 + s.norm()));
    CHECK((dec.q.transpose() * dec.q - Matrix::Identity(n, n)).norm() <= 1e-12);
    for (Eigen::Index i = 1; i < n; ++i) CHECK(dec.values(i - 1) >= dec.values(i));
  }
}

TEST_CASE("sym_eig contracts") {
  CHECK_THROWS_AS(sym_eig<double>(Matrix(2, 3)), DimensionError);
  Matrix a(2, 2);
  a << 1, 2, 0, 1;
  CHECK_THROWS_AS(sym_eig<double>(a), ContractError);
  a << 1, NAN, NAN, 1;
  CHECK_THROWS_AS(sym_eig<double>(a), ContractError);
  const auto diag = sym_eig<double>(Matrix(Eigen::Vector3d(1, 3, 2).asDiagonal()));
  CHECK(diag.values(0) == 3.0);
  CHECK(diag.values(2) == 1.0);
}

TEST_CASE("hermitian_eig reconstructs and matches the real embedding") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const CMatrix z = random_general_complex(3, seed);
    const CMatrix h = z.adjoint() * z;
    const auto dec = hermitian_eig(h);
    CHECK((dec.q * dec.values.cast<Complex>().asDiagonal() * dec.q.adjoint() - h).norm() <= 1e-11 * h.norm());
    CHECK((dec.q.adjoint() * dec.q - CMatrix::Identity(3, 3)).norm() <= 1e-11);
    Eigen::SelfAdjointEigenSolver<CMatrix> oracle(h);
    CHECK((dec.values - oracle.eigenvalues().reverse()).norm() <= 1e-11 * h.norm());
  }
}

TEST_CASE("embed_complex is a ring homomorphism") {
  const CMatrix a = random_general_complex(2, 3), b = random_general_complex(2, 4);
  CHECK((embed_complex(a * b) - embed_complex(a) * embed_complex(b)).norm() <= 1e-13);
  CHECK((embed_complex(a.adjoint()) - embed_complex(a).transpose()).norm() == 0.0);
  CHECK(std::abs(real_frobenius_inner(a, b) - frobenius_inner(embed_complex(a), embed_complex(b))) <= 1e-13);
}

TEST_CASE("det and inverse") {
  Matrix a(2, 2);
  a << 2, 1, 1, 1;
  CHECK(det(a) == doctest::Approx(1.0));
  CHECK((inverse(a) * a - Matrix::Identity(2, 2)).norm() <= 1e-14);
  Matrix singular(2, 2);
  singular << 1, 2, 2, 4;
  CHECK_THROWS_AS(inverse(singular), SingularityError);
  CHECK_FALSE(numerically_invertible(singular, det(singular)));
}

TEST_CASE("random_general draws are generic and reproducible") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix u = random_general(4, seed);
    CHECK(u == random_general(4, seed));
    CHECK(u.cwiseAbs().maxCoeff() <= 1.0);
    CHECK(numerically_invertible(u, det(u)));
    CHECK(spectrum_separated(sym_eig<double>(u.transpose() * u).values, kGeneralGap));
  }
  CHECK(random_general(3, 1) != random_general(3, 2));
  const Matrix q = random_orthogonal(5, 9);
  CHECK((q.transpose() * q - Matrix::Identity(5, 5)).norm() <= 1e-13);
}

TEST_CASE("spectrum_separated uses a relative gap") {
  CHECK(spectrum_separated(Eigen::Vector3d(3, 2, 1), 1e-6));
  CHECK_FALSE(spectrum_separated(Eigen::Vector3d(3, 1 + 1e-9, 1), 1e-6));
}
