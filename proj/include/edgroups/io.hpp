#pragma once

#include <string>
#include <string_view>

#include "edgroups/matcore.hpp"
#include "edgroups/torused.hpp"

namespace edg {

/// {"n": int, "data": [[row0...], ...]}, row-major.
Matrix parse_matrix(std::string_view text);
/// {"n": int, "re": [[...]], "im": [[...]]}.
CMatrix parse_complex_matrix(std::string_view text);

struct WeightSetInput {
  WeightSet weights;
  int lattice_index = 1;
};

/// {"m": int, "weights": [[...], ...], "mults": [...], "lattice_index": int}.
/// Rank-1 weights may be plain integers; mults and lattice_index default to 1.
WeightSetInput parse_weightset(std::string_view text);

std::string read_text_file(const std::string& path);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace edg
