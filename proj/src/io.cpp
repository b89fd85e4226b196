#include "edgroups/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace edg {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

int read_int(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) || !obj[key].is_number_integer()) {
    throw ParseError(std::string("expected integer field '") + key + "'");
  }
  return obj[key].get<int>();
}

Matrix read_rows(const json& obj, const char* key, int n) {
  if (!obj.contains(key) || !obj[key].is_array()) throw ParseError(std::string("missing array '") + key + "'");
  const json& rows = obj[key];
  if (static_cast<int>(rows.size()) != n) throw ParseError(std::string("'") + key + "' must have n rows");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ParseError(std::string("'") + key + "' rows must have n entries");
    }
    for (int j = 0; j < n; ++j) {
      const json& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) throw ParseError("matrix entries must be numbers");
      m(i, j) = v.get<double>();
      if (!std::isfinite(m(i, j))) throw ParseError("matrix entries must be finite");
    }
  }
  return m;
}

}  // namespace

Matrix parse_matrix(std::string_view text) {
  const json obj = parse_json(text);
  const int n = read_int(obj, "n");
  if (n < 1) throw ParseError("n must be positive");
  return read_rows(obj, "data", n);
}

CMatrix parse_complex_matrix(std::string_view text) {
  const json obj = parse_json(text);
  const int n = read_int(obj, "n");
  if (n < 1) throw ParseError("n must be positive");
  const Matrix re = read_rows(obj, "re", n);
  const Matrix im = obj.contains("im") ? read_rows(obj, "im", n) : Matrix::Zero(n, n);
  CMatrix z(n, n);
  z.real() = re;
  z.imag() = im;
  return z;
}

WeightSetInput parse_weightset(std::string_view text) {
  const json obj = parse_json(text);
  WeightSetInput in;
  in.weights.m = read_int(obj, "m");
  if (in.weights.m < 1) throw ParseError("m must be positive");
  if (!obj.contains("weights") || !obj["weights"].is_array()) throw ParseError("missing array 'weights'");
  for (const json& w : obj["weights"]) {
    std::vector<int> chi;
    if (w.is_number_integer()) {
      chi.push_back(w.get<int>());
    } else if (w.is_array()) {
      for (const json& x : w) {
        if (!x.is_number_integer()) throw ParseError("weights must be integers");
        chi.push_back(x.get<int>());
      }
    } else {
      throw ParseError("weights must be integers or integer vectors");
    }
    if (static_cast<int>(chi.size()) != in.weights.m) throw ParseError("weight length must equal m");
    in.weights.weights.push_back(std::move(chi));
  }
  if (obj.contains("mults")) {
    if (!obj["mults"].is_array()) throw ParseError("'mults' must be an array");
    for (const json& x : obj["mults"]) {
      if (!x.is_number_integer()) throw ParseError("mults must be integers");
      in.weights.multiplicities.push_back(x.get<int>());
    }
  } else {
    in.weights.multiplicities.assign(in.weights.weights.size(), 1);
  }
  if (obj.contains("lattice_index")) in.lattice_index = read_int(obj, "lattice_index");
  return in;
}

std::string read_text_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace edg
