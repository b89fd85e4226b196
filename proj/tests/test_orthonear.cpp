#include <cmath>
#include <numbers>

#include "doctest.h"
#include "edgroups/orthonear.hpp"
#include "support.hpp"

using namespace edg;

namespace {

Matrix rotation(double t) {
  Matrix r(2, 2);
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

Matrix reflection(double t) {
  Matrix r(2, 2);
  r << std::cos(t), std::sin(t), std::sin(t), -std::cos(t);
  return r;
}

// Dense scan of O(2) followed by golden-section refinement.
double brute_min(const Matrix& u, bool rotations_only) {
  double best = INFINITY;
  for (int family = 0; family < (rotations_only ? 1 : 2); ++family) {
    auto f = [&](double t) { return (u - (family == 0 ? rotation(t) : reflection(t))).squaredNorm(); };
    const int steps = 3600;
    double tbest = 0;
    for (int k = 0; k < steps; ++k) {
      const double t = 2 * std::numbers::pi * k / steps;
      if (f(t) < f(tbest)) tbest = t;
    }
    double a = tbest - 0.01, b = tbest + 0.01;
    const double g = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 100; ++it) {
      const double x1 = b - g * (b - a), x2 = a + g * (b - a);
      (f(x1) < f(x2) ? b : a) = f(x1) < f(x2) ? x2 : x1;
    }
    best = std::min(best, f(0.5 * (a + b)));
  }
  return best;
}

}  // namespace

TEST_CASE("nearest_orthogonal examples") {
  Matrix u(2, 2);
  u << 0, 2, 1, 0;
  const auto p = nearest_orthogonal(u);
  Matrix expected(2, 2);
  expected << 0, 1, 1, 0;
  CHECK((p.x - expected).norm() < 1e-12);
  CHECK(p.distance_sq == doctest::Approx(1.0));
  CHECK(p.det_sign == -1);

  const Matrix d = Eigen::Vector3d(3, 2, 0.5).asDiagonal();
  CHECK((nearest_orthogonal(d).x - Matrix::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("O(2) and SO(2) minima agree with a brute-force angle scan") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Matrix u = random_general(2, seed);
    CHECK(nearest_orthogonal(u).distance_sq == doctest::Approx(brute_min(u, false)).epsilon(1e-9));
    CHECK(nearest_special_orthogonal(u).distance_sq == doctest::Approx(brute_min(u, true)).epsilon(1e-9));
  }
}

TEST_CASE("enumerate_orthogonal_critical") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (int n = 1; n <= 5; ++n) {
      const Matrix u = random_general(n, seed);
      const auto pts = enumerate_orthogonal_critical(u);
      REQUIRE(pts.size() == (std::size_t{1} << n));
      int plus = 0;
      for (const auto& p : pts) {
        CHECK((p.x.transpose() * p.x - Matrix::Identity(n, n)).norm() < 1e-10);
        CHECK(p.residual < 1e-9);
        CHECK(p.distance_sq >= pts.front().distance_sq - 1e-12);
        CHECK(p.det_sign == (det(p.x) > 0 ? 1 : -1));
        plus += p.det_sign > 0;
      }
      CHECK(plus == (1 << (n - 1)));
      CHECK((pts.front().x - nearest_orthogonal(u).x).norm() < 1e-12);
      // All signs flipped gives -x.
      CHECK((pts.back().x + pts.front().x).norm() < 1e-10);
    }
  }
}

TEST_CASE("nearest_special_orthogonal is the best det +1 critical point") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Matrix u = random_general(4, seed);
    const auto so = nearest_special_orthogonal(u);
    CHECK(so.det_sign == 1);
    double best = INFINITY;
    for (const auto& p : enumerate_orthogonal_critical(u))
      if (p.det_sign > 0) best = std::min(best, p.distance_sq);
    CHECK(so.distance_sq == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("polar contracts") {
  CHECK_THROWS_AS(nearest_orthogonal(Matrix::Zero(2, 2)), SingularityError);
  CHECK_THROWS_AS(nearest_orthogonal(Matrix::Identity(2, 2)), DegeneracyError);
  CHECK_THROWS_AS(nearest_orthogonal(Matrix(2, 3)), DimensionError);
}

TEST_CASE("unitary critical points") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (int m = 1; m <= 3; ++m) {
      const CMatrix u = random_general_complex(m, seed);
      const auto pts = enumerate_unitary_critical(u);
      REQUIRE(pts.size() == (std::size_t{1} << m));
      for (const auto& p : pts) {
        CHECK((p.x.adjoint() * p.x - CMatrix::Identity(m, m)).norm() < 1e-10);
        CHECK(p.residual < 1e-9);
        CHECK(p.distance_sq >= pts.front().distance_sq - 1e-12);
        // Distances are measured in the real embedding.
        CHECK(p.distance_sq == doctest::Approx((embed_complex(u) - embed_complex(p.x)).squaredNorm()));
      }
      CHECK((nearest_unitary(u).x - pts.front().x).norm() < 1e-12);
    }
  }
}

TEST_CASE("gperp decomposition at critical points") {
  const Matrix u = random_general(3, 5);
  const GroupSpec o = GroupSpec::make(GroupKind::orthogonal, 3);
  const auto pts = enumerate_orthogonal_critical(u);
  for (const auto& p : pts) {
    const auto d = gperp_decompose(u, p.x, o);
    CHECK(d.in_gperp);
    CHECK((p.x * d.s - u).norm() < 1e-10);
  }
  // The minimizer maximizes the trace of s.
  const double top = gperp_decompose(u, pts.front().x, o).trace;
  for (const auto& p : pts) CHECK(gperp_decompose(u, p.x, o).trace <= top + 1e-12);
  CHECK_FALSE(gperp_decompose(u, Matrix::Identity(3, 3), o).in_gperp);
  CHECK_THROWS_AS(gperp_decompose(u, 2.0 * Matrix::Identity(3, 3), o), ContractError);
  CHECK_THROWS_AS(gperp_decompose(u, Matrix::Identity(3, 3), GroupSpec::make(GroupKind::sl, 3)), ContractError);

  const CMatrix z = random_general_complex(2, 3);
  const auto up = enumerate_unitary_critical(z);
  const auto dz = gperp_decompose(z, up.front().x);
  CHECK(dz.in_gperp);
  CHECK(dz.trace == doctest::Approx(2.0 * (up.front().x.adjoint() * z).trace().real()));
  // Real embedding: same group element, same decomposition.
  const GroupSpec u4 = GroupSpec::make(GroupKind::unitary_embedded, 4);
  const auto de = gperp_decompose(embed_complex(z), embed_complex(up.front().x), u4);
  CHECK(de.in_gperp);
  CHECK(de.trace == doctest::Approx(dz.trace));
}
