#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "edgroups/matcore.hpp"

namespace edg {

enum class GroupKind { orthogonal, special_orthogonal, unitary_embedded, sl, sl_pm, symplectic };

/// Target group together with its size. unitary_embedded acts on R^n = C^(n/2)
/// through embed_complex; symplectic carries the form J = [[0, I], [-I, 0]].
struct GroupSpec {
  GroupKind kind = GroupKind::orthogonal;
  int n = 1;
  Matrix j;

  static GroupSpec make(GroupKind kind, int n);

  bool preserves_inner_product() const {
    return kind == GroupKind::orthogonal || kind == GroupKind::special_orthogonal ||
           kind == GroupKind::unitary_embedded;
  }
};

Matrix standard_symplectic_form(int n);

/// Real matrix of multiplication by i on C^m = R^(2m).
Matrix complex_structure(int n);

std::string_view to_string(GroupKind kind);
std::optional<GroupKind> parse_group_kind(std::string_view name);

/// Frobenius norm of the violated defining equations of g at x
/// (x^t x - I, det constraints, x^t J x - J, commutation with i).
double membership_violation(const Matrix& x, const GroupSpec& g);

}  // namespace edg
