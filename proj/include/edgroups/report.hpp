#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edgroups/matcore.hpp"
#include "edgroups/orthonear.hpp"

namespace edg {

struct PointSummary {
  double distance_sq = 0.0;
  int det_sign = 1;
  double residual = 0.0;
  std::optional<double> c;
  std::optional<Matrix> x;
  std::optional<CMatrix> xc;  // unitary inputs keep their complex form
};

PointSummary summarize(const CriticalPoint<double>& p, bool with_matrix);
PointSummary summarize(const CriticalPoint<Complex>& p, bool with_matrix);

struct CountEntry {
  std::string label;
  long long expected = 0;
  std::optional<long long> observed;  // verification commands only
  bool pass = true;
};

struct RunReport {
  std::string command;
  std::string group;
  int n = 0;
  std::string input_digest;
  std::uint64_t seed = 0;
  std::vector<PointSummary> results;
  std::vector<CountEntry> counts;
  std::vector<std::pair<std::string, long long>> values;  // named scalars, e.g. bounds
  std::vector<std::string> diagnostics;
  std::optional<long long> elapsed_ms;
};

/// Fixed key order, doubles at 17 significant digits, two-space indent.
std::string to_json(const RunReport& report);

}  // namespace edg
