#include "edgroups/torused.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>

#include "edgroups/error.hpp"
#include "edgroups/polyres.hpp"

namespace edg {

namespace {

using Point2 = std::array<long long, 2>;
using Point3 = std::array<long long, 3>;

long long cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; counter-clockwise, collinear points dropped.
std::vector<std::size_t> hull_2d(const std::vector<Point2>& pts) {
  std::vector<std::size_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
  idx.erase(std::unique(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pts[a] == pts[b]; }),
            idx.end());
  if (idx.size() < 3) return idx;
  std::vector<std::size_t> h(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i : idx) {
    while (k >= 2 && cross(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  for (std::size_t j = idx.size() - 1, lower = k + 1; j-- > 0;) {
    const std::size_t i = idx[j];
    while (k >= lower && cross(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

long long twice_area(const std::vector<Point2>& pts) {
  const auto h = hull_2d(pts);
  if (h.size() < 3) return 0;
  long long acc = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Point2& a = pts[h[i]];
    const Point2& b = pts[h[(i + 1) % h.size()]];
    acc += a[0] * b[1] - a[1] * b[0];
  }
  return std::llabs(acc);
}

Point3 sub(const Point3& a, const Point3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Point3 cross3(const Point3& a, const Point3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
long long dot3(const Point3& a, const Point3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Six times the volume: enumerate supporting planes through point triples,
// triangulate each facet polygon, and fan the facets from the lexicographically
// smallest point (always a hull vertex).
long long six_volume(std::vector<Point3> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  const Point3 apex = pts.front();

  std::set<std::pair<Point3, long long>> facets;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Point3 normal = cross3(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
        if (normal == Point3{0, 0, 0}) continue;
        const long long g = std::gcd(std::gcd(std::llabs(normal[0]), std::llabs(normal[1])), std::llabs(normal[2]));
        for (auto& x : normal) x /= g;
        const long long offset = dot3(normal, pts[i]);
        bool above = false, below = false;
        for (const Point3& p : pts) {
          const long long side = dot3(normal, p) - offset;
          above |= side > 0;
          below |= side < 0;
        }
        if (above && below) continue;
        if (above) {  // orient outward
          for (auto& x : normal) x = -x;
          facets.emplace(normal, -offset);
        } else {
          facets.emplace(normal, offset);
        }
      }

  long long total = 0;
  for (const auto& [normal, offset] : facets) {
    if (dot3(normal, apex) == offset) continue;
    std::vector<Point3> face;
    for (const Point3& p : pts)
      if (dot3(normal, p) == offset) face.push_back(p);
    int drop = 0;
    for (int a = 1; a < 3; ++a)
      if (std::llabs(normal[static_cast<std::size_t>(a)]) > std::llabs(normal[static_cast<std::size_t>(drop)])) drop = a;
    std::vector<Point2> flat;
    for (const Point3& p : face) {
      Point2 q{};
      int at = 0;
      for (int a = 0; a < 3; ++a)
        if (a != drop) q[static_cast<std::size_t>(at++)] = p[static_cast<std::size_t>(a)];
      flat.push_back(q);
    }
    const auto polygon = hull_2d(flat);
    for (std::size_t t = 1; t + 1 < polygon.size(); ++t) {
      const Point3 a = sub(face[polygon[0]], apex);
      const Point3 b = sub(face[polygon[t]], apex);
      const Point3 c = sub(face[polygon[t + 1]], apex);
      total += std::llabs(dot3(a, cross3(b, c)));
    }
  }
  return total;
}

}  // namespace

int lattice_rank(const std::vector<std::vector<int>>& vectors) {
  if (vectors.empty()) return 0;
  std::vector<std::vector<long long>> rows;
  for (const auto& v : vectors) rows.emplace_back(v.begin(), v.end());
  const std::size_t cols = rows.front().size();
  int rank = 0;
  for (std::size_t col = 0; col < cols && static_cast<std::size_t>(rank) < rows.size(); ++col) {
    const auto r0 = static_cast<std::size_t>(rank);
    std::size_t pivot = r0;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r0], rows[pivot]);
    for (std::size_t r = r0 + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const long long a = rows[r0][col], b = rows[r][col];
      long long g = 0;
      for (std::size_t c = 0; c < cols; ++c) {
        rows[r][c] = rows[r][c] * a - rows[r0][c] * b;
        g = std::gcd(g, std::llabs(rows[r][c]));
      }
      if (g > 1)
        for (auto& x : rows[r]) x /= g;
    }
    ++rank;
  }
  return rank;
}

bool validate_weightset(const WeightSet& w) {
  if (w.m < 1 || w.weights.empty() || w.weights.size() != w.multiplicities.size()) return false;
  std::map<std::vector<int>, int> mult;
  for (std::size_t i = 0; i < w.weights.size(); ++i) {
    if (static_cast<int>(w.weights[i].size()) != w.m || w.multiplicities[i] < 1) return false;
    if (!mult.emplace(w.weights[i], w.multiplicities[i]).second) return false;
  }
  for (const auto& [chi, dim] : mult) {
    std::vector<int> neg(chi);
    for (int& x : neg) x = -x;
    const auto it = mult.find(neg);
    if (it == mult.end() || it->second != dim) return false;
  }
  return lattice_rank(w.weights) == w.m;
}

long long bkk_bound(const WeightSet& w) {
  if (!validate_weightset(w)) throw ContractError("bkk_bound: invalid weight set");
  if (w.m > 3) throw UnsupportedError("bkk_bound: only ranks 1 to 3 are supported");
  if (w.m == 1) {
    const auto [lo, hi] = std::minmax_element(w.weights.begin(), w.weights.end());
    return static_cast<long long>((*hi)[0]) - (*lo)[0];
  }
  if (w.m == 2) {
    std::vector<Point2> pts;
    for (const auto& v : w.weights) pts.push_back({v[0], v[1]});
    return twice_area(pts);
  }
  std::vector<Point3> pts;
  for (const auto& v : w.weights) pts.push_back({v[0], v[1], v[2]});
  return six_volume(pts);
}

int torus_critical_count_rank1(const WeightSet& w, const std::map<int, double>& coeffs, int lattice_index) {
  if (w.m != 1) throw ContractError("torus_critical_count_rank1: rank must be 1");
  if (!validate_weightset(w)) throw ContractError("torus_critical_count_rank1: invalid weight set");
  if (lattice_index != 1 && lattice_index != 2) {
    throw ContractError("torus_critical_count_rank1: lattice_index must be 1 or 2");
  }
  int lo = 0, hi = 0;
  for (const auto& v : w.weights) {
    if (v[0] % lattice_index != 0) {
      throw ContractError("torus_critical_count_rank1: weight outside the index sublattice");
    }
    lo = std::min(lo, v[0] / lattice_index);
    hi = std::max(hi, v[0] / lattice_index);
  }
  std::vector<double> poly(static_cast<std::size_t>(hi - lo + 1), 0.0);
  double scale = 0.0;
  for (const auto& v : w.weights) {
    const int chi = v[0];
    const auto it = coeffs.find(chi);
    if (it == coeffs.end()) throw ContractError("torus_critical_count_rank1: missing coefficient");
    const double term = chi * it->second;  // (w . chi) u'_chi with w = 1
    poly[static_cast<std::size_t>(chi / lattice_index - lo)] += term;
    scale = std::max(scale, std::abs(term));
  }
  if (!(std::abs(poly.front()) > 1e-12 * scale) || !(std::abs(poly.back()) > 1e-12 * scale)) {
    throw DegeneracyError("torus_critical_count_rank1: extreme coefficient vanishes");
  }
  const UniPoly p(poly, Var::t);
  if (p.degree() < 1) return 0;
  const auto roots = poly_roots(p);
  return distinct_root_count(roots, 1e-7);
}

TightnessReport bkk_tightness_experiment(const WeightSet& w, int seeds, int lattice_index) {
  TightnessReport report;
  report.bound = bkk_bound(w);
  report.corrected_bound = report.bound / lattice_index;
  for (int s = 1; s <= seeds; ++s) {
    report.counts.push_back(
        torus_critical_count_rank1(w, character_coefficients(w, static_cast<std::uint64_t>(s)), lattice_index));
  }
  return report;
}

WeightSet tensor_power_weightset(int d) {
  if (d < 1) throw ContractError("tensor_power_weightset: d must be positive");
  WeightSet w;
  w.m = 1;
  long long binom = 1;
  for (int k = 0; k <= d; ++k) {
    w.weights.push_back({d - 2 * k});
    w.multiplicities.push_back(static_cast<int>(binom));
    binom = binom * (d - k) / (k + 1);
  }
  return w;
}

std::map<int, double> character_coefficients(const WeightSet& w, std::uint64_t seed) {
  if (w.m != 1) throw ContractError("character_coefficients: rank must be 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::map<int, double> out;
  for (std::size_t i = 0; i < w.weights.size(); ++i) {
    double sum = 0.0;
    for (int k = 0; k < w.multiplicities[i]; ++k) sum += unit(rng);
    out[w.weights[i][0]] += sum;
  }
  return out;
}

}  // namespace edg
