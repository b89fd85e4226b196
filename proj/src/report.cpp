#include "edgroups/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace edg {

namespace {

using nlohmann::ordered_json;

ordered_json matrix_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return ordered_json{{"n", m.rows()}, {"data", std::move(rows)}};
}

ordered_json matrix_json(const CMatrix& m) {
  ordered_json out{{"n", m.rows()}};
  out["re"] = matrix_json(Matrix(m.real()))["data"];
  out["im"] = matrix_json(Matrix(m.imag()))["data"];
  return out;
}

void write_string(std::string& out, const std::string& s) { out += ordered_json(s).dump(); }

void write_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write(std::string& out, const ordered_json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth + 2), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_string(out, key);
        out += ": ";
        write(out, value, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line so matrices read as rows.
      const bool flat = std::none_of(j.begin(), j.end(), [](const ordered_json& e) { return e.is_structured(); });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        write(out, value, depth + 1);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case ordered_json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

PointSummary summarize(const CriticalPoint<double>& p, bool with_matrix) {
  PointSummary s{p.distance_sq, p.det_sign, p.residual, p.c, std::nullopt, std::nullopt};
  if (with_matrix) s.x = p.x;
  return s;
}

PointSummary summarize(const CriticalPoint<Complex>& p, bool with_matrix) {
  PointSummary s{p.distance_sq, p.det_sign, p.residual, p.c, std::nullopt, std::nullopt};
  if (with_matrix) s.xc = p.x;
  return s;
}

std::string to_json(const RunReport& r) {
  ordered_json j;
  j["command"] = r.command;
  j["group"] = r.group;
  j["n"] = r.n;
  j["input_digest"] = r.input_digest;
  j["seed"] = r.seed;
  ordered_json results = ordered_json::array();
  for (const PointSummary& p : r.results) {
    ordered_json e;
    if (p.x) e["x"] = matrix_json(*p.x);
    if (p.xc) e["x"] = matrix_json(*p.xc);
    e["distance_sq"] = p.distance_sq;
    e["det_sign"] = p.det_sign;
    e["residual"] = p.residual;
    if (p.c) e["c"] = *p.c;
    results.push_back(std::move(e));
  }
  j["results"] = std::move(results);
  ordered_json counts = ordered_json::array();
  for (const CountEntry& c : r.counts) {
    ordered_json e{{"label", c.label}, {"expected", c.expected}};
    if (c.observed) {
      e["observed"] = *c.observed;
      e["pass"] = c.pass;
    }
    counts.push_back(std::move(e));
  }
  j["counts"] = std::move(counts);
  ordered_json values = ordered_json::object();
  for (const auto& [key, v] : r.values) values[key] = v;
  j["values"] = std::move(values);
  j["diagnostics"] = r.diagnostics;
  if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
  std::string out;
  write(out, j, 0);
  out += "\n";
  return out;
}

}  // namespace edg
