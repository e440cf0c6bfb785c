#pragma once

// Naive reference computations for the tests. Nothing here calls the algorithms it is
// used to check; only the Rat type and the pair order are shared.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "hypercone/rational.hpp"

namespace oracle {

using hypercone::IntVec;
using hypercone::Rat;
using RatRows = std::vector<std::vector<Rat>>;

inline std::size_t pairs_of(std::size_t n) { return n * (n + 1) / 2; }

inline std::size_t pos(std::size_t i, std::size_t j, std::size_t n) {
  std::size_t p = 0;
  for (std::size_t a = 0; a < i; ++a) p += n - a;
  return p + (j - i - 1);
}

/// Squared Euclidean distances of integer points, pair order (0,1),(0,2),...
inline IntVec dist_of_points(const std::vector<IntVec>& pts) {
  const std::size_t n = pts.size() - 1;
  IntVec d(pairs_of(n));
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < pts[i].size(); ++k) s += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
      d[pos(i, j, n)] = s;
    }
  return d;
}

inline IntVec cut(std::uint32_t mask, std::size_t n) {
  IntVec d(pairs_of(n));
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) d[pos(i, j, n)] = ((mask >> i) ^ (mask >> j)) & 1U;
  return d;
}

inline std::int64_t form_value(const std::vector<std::int64_t>& b, const IntVec& d) {
  const std::size_t n = b.size() - 1;
  std::int64_t s = 0;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) s += b[i] * b[j] * d[pos(i, j, n)];
  return s;
}

inline RatRows gram(const IntVec& d, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> std::int64_t {
    if (i == j) return 0;
    return i < j ? d[pos(i, j, n)] : d[pos(j, i, n)];
  };
  RatRows g(n, std::vector<Rat>(n));
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) g[i - 1][j - 1] = Rat(at(0, i) + at(0, j) - at(i, j), 2);
  for (auto& row : g)
    for (auto& x : row) x.canonicalize();
  return g;
}

/// Gauss-Jordan on an augmented copy; nullopt when singular.
inline std::optional<std::vector<Rat>> solve_square(RatRows a, std::vector<Rat> rhs) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(rhs[p], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rat f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  for (std::size_t r = 0; r < n; ++r) rhs[r] /= a[r][r];
  return rhs;
}

inline Rat determinant(RatRows a) {
  const std::size_t n = a.size();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rat f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

inline Rat quad(const RatRows& g, const std::vector<Rat>& x) {
  Rat s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) s += x[i] * g[i][j] * x[j];
  return s;
}

struct Sphere {
  std::vector<Rat> center;
  Rat r2;
};

/// The sphere through 0 and the unit vectors: (G c)_i = G_ii / 2.
inline std::optional<Sphere> circumsphere(const RatRows& g) {
  std::vector<Rat> rhs(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) rhs[i] = g[i][i] / 2;
  auto c = solve_square(g, rhs);
  if (!c) return std::nullopt;
  return Sphere{*c, quad(g, *c)};
}

struct BoxScan {
  std::vector<IntVec> on;  ///< lexicographic
  std::size_t inside = 0;
};

inline BoxScan box_scan(const RatRows& g, const Sphere& s, std::int64_t lo, std::int64_t hi) {
  const std::size_t n = g.size();
  BoxScan out;
  IntVec x(n, lo);
  std::vector<Rat> diff(n);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) diff[i] = Rat(x[i]) - s.center[i];
    const Rat v = quad(g, diff);
    if (v == s.r2) out.on.push_back(x);
    else if (v < s.r2) ++out.inside;
    std::size_t k = n;
    while (k > 0 && x[k - 1] == hi) x[--k] = lo;
    if (k == 0) break;
    ++x[k - 1];
  }
  return out;
}

/// Annulator vectors (1 - sum x, x) of the box-scan sphere points, sorted.
inline std::vector<std::vector<std::int64_t>> box_annulator(const IntVec& d, std::size_t n,
                                                            std::int64_t lo = -5, std::int64_t hi = 6) {
  const auto g = gram(d, n);
  const auto s = circumsphere(g);
  if (!s) return {};
  std::vector<std::vector<std::int64_t>> ann;
  for (const auto& x : box_scan(g, *s, lo, hi).on) {
    std::vector<std::int64_t> b(n + 1);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += b[i + 1] = x[i];
    b[0] = 1 - sum;
    ann.push_back(std::move(b));
  }
  std::sort(ann.begin(), ann.end());
  return ann;
}

/// Every integer b in [-2, 2]^(n+1) with sum 1 that is not a unit vector. For n <= 3 these
/// valid hypermetric inequalities include every facet of the cut cone.
inline std::vector<std::vector<std::int64_t>> small_hypermetric_vectors(std::size_t n) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> b(n + 1, -2);
  for (;;) {
    std::int64_t sum = 0, ones = 0, zeros = 0;
    for (auto x : b) {
      sum += x;
      ones += x == 1;
      zeros += x == 0;
    }
    if (sum == 1 && !(ones == 1 && zeros == static_cast<std::int64_t>(n))) out.push_back(b);
    std::size_t k = n + 1;
    while (k > 0 && b[k - 1] == 2) b[--k] = -2;
    if (k == 0) break;
    ++b[k - 1];
  }
  return out;
}

inline std::size_t rank_of(std::vector<std::vector<Rat>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rat f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

struct CutFace {
  std::vector<std::uint32_t> cuts;  ///< masks of the rays on the face
  std::size_t rank = 0;
};

/// All nonzero faces of CUT_{n+1} (n <= 3) by closing every subset of cuts.
inline std::vector<CutFace> cut_cone_faces(std::size_t n) {
  const std::uint32_t ncuts = (1U << n) - 1;  // masks 1..2^n - 1 on points 1..n
  std::vector<IntVec> rays;
  for (std::uint32_t m = 1; m <= ncuts; ++m) rays.push_back(cut(m << 1, n));
  const auto ineq = small_hypermetric_vectors(n);
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<CutFace> out;
  for (std::uint32_t subset = 1; subset < (1U << ncuts); ++subset) {
    std::vector<std::size_t> tight;
    for (std::size_t h = 0; h < ineq.size(); ++h) {
      bool all = true;
      for (std::uint32_t r = 0; r < ncuts && all; ++r)
        if ((subset >> r) & 1U) all = form_value(ineq[h], rays[r]) == 0;
      if (all) tight.push_back(h);
    }
    std::vector<std::uint32_t> face;
    for (std::uint32_t r = 0; r < ncuts; ++r) {
      bool on = true;
      for (auto h : tight) on = on && form_value(ineq[h], rays[r]) == 0;
      if (on) face.push_back((r + 1) << 1);
    }
    if (!seen.insert(face).second) continue;
    std::vector<std::vector<Rat>> rows;
    for (auto m : face) {
      std::vector<Rat> row;
      for (auto x : cut(m, n)) row.emplace_back(x);
      rows.push_back(std::move(row));
    }
    out.push_back(CutFace{face, rank_of(rows)});
  }
  return out;
}

inline IntVec sum_of_cuts(const std::vector<std::uint32_t>& masks, std::size_t n) {
  IntVec d(pairs_of(n), 0);
  for (auto m : masks) {
    const auto c = cut(m, n);
    for (std::size_t k = 0; k < d.size(); ++k) d[k] += c[k];
  }
  return d;
}

/// Coordinates 0/1 points for the standard bases used in the cube-type checks.
inline std::vector<IntVec> unit_points(std::size_t dim, const std::vector<std::vector<int>>& supports) {
  std::vector<IntVec> pts;
  for (const auto& s : supports) {
    IntVec p(dim, 0);
    for (int k : s) p[k] = 1;
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace oracle
