#include "edgroups/group.hpp"

#include <array>
#include <utility>

namespace edg {

namespace {

constexpr std::array<std::pair<GroupKind, std::string_view>, 6> kNames{{
    {GroupKind::orthogonal, "orthogonal"},
    {GroupKind::special_orthogonal, "special-orthogonal"},
    {GroupKind::unitary_embedded, "unitary"},
    {GroupKind::sl, "sl"},
    {GroupKind::sl_pm, "sl-pm"},
    {GroupKind::symplectic, "symplectic"},
}};

}  // namespace

GroupSpec GroupSpec::make(GroupKind kind, int n) {
  if (n < 1) throw ContractError("GroupSpec: n must be positive");
  GroupSpec g{kind, n, Matrix()};
  if (kind == GroupKind::symplectic) {
    if (n % 2 != 0) throw ContractError("GroupSpec: symplectic groups need even n");
    g.j = standard_symplectic_form(n);
  }
  if (kind == GroupKind::unitary_embedded && n % 2 != 0) {
    throw ContractError("GroupSpec: embedded unitary groups need even n");
  }
  return g;
}

Matrix standard_symplectic_form(int n) {
  const int m = n / 2;
  Matrix j = Matrix::Zero(n, n);
  j.topRightCorner(m, m) = Matrix::Identity(m, m);
  j.bottomLeftCorner(m, m) = -Matrix::Identity(m, m);
  return j;
}

Matrix complex_structure(int n) {
  const int m = n / 2;
  Matrix j = Matrix::Zero(n, n);
  j.topRightCorner(m, m) = -Matrix::Identity(m, m);
  j.bottomLeftCorner(m, m) = Matrix::Identity(m, m);
  return j;
}

std::string_view to_string(GroupKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<GroupKind> parse_group_kind(std::string_view name) {
  for (const auto& [k, known] : kNames)
    if (known == name) return k;
  return std::nullopt;
}

double membership_violation(const Matrix& x, const GroupSpec& g) {
  const Eigen::Index n = x.rows();
  const Matrix id = Matrix::Identity(n, n);
  switch (g.kind) {
    case GroupKind::orthogonal:
      return (x.transpose() * x - id).norm();
    case GroupKind::special_orthogonal:
      return (x.transpose() * x - id).norm() + std::abs(det(x) - 1.0);
    case GroupKind::unitary_embedded: {
      const Matrix i = complex_structure(static_cast<int>(n));
      return (x.transpose() * x - id).norm() + (x * i - i * x).norm();
    }
    case GroupKind::sl:
      return std::abs(det(x) - 1.0);
    case GroupKind::sl_pm:
      return std::abs(std::abs(det(x)) - 1.0);
    case GroupKind::symplectic:
      return (x.transpose() * g.j * x - g.j).norm();
  }
  return 0.0;
}

}  // namespace edg
