#include "hypercone/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hypercone/catalog.hpp"
#include "hypercone/errors.hpp"

namespace hypercone {

RatMatrix gram_from_distance(const DistVec& d) {
  const std::size_t n = d.n();
  RatMatrix g(n, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) g(i - 1, j - 1) = (d.at(0, i) + d.at(0, j) - d.at(i, j)) / 2;
  return g;
}

bool is_nondegenerate(const DistVec& d) {
  if (!is_hypermetric(d)) throw DomainError("distance vector is not hypermetric");
  return det(gram_from_distance(d)) != 0;
}

namespace {

Circumsphere sphere_of_gram(const RatMatrix& g) {
  const std::size_t n = g.rows();
  RatVec rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = g(i, i) / 2;
  auto c = solve(g, rhs);
  if (!c) throw DomainError("circumsphere: inconsistent system");
  Rat r2 = dot(*c, g * *c);
  return {std::move(*c), std::move(r2)};
}

// Q(y) = sum_i q(i,i) * (y_i + sum_{j>i} q(i,j) y_j)^2, square-root free.
struct QuadraticDecomposition {
  RatMatrix q;
};

QuadraticDecomposition decompose(const RatMatrix& g) {
  const std::size_t n = g.rows();
  RatMatrix q = g;
  for (std::size_t i = 0; i < n; ++i) {
    if (q(i, i) <= 0) throw DomainError("Gram matrix is not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) /= q(i, i);
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
  }
  return {std::move(q)};
}

std::int64_t floor_of(const Rat& x) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return f.get_si();
}

class SphereEnumerator {
 public:
  SphereEnumerator(const RatMatrix& g, const RatVec& c, const Rat& r2)
      : n_(g.rows()), q_(decompose(g).q), c_(c), r2_(r2), x_(n_, 0), y_(n_) {}

  SphereScan run() {
    if (n_ == 0) {
      scan_.points.push_back({});
      return std::move(scan_);
    }
    recurse(n_ - 1, r2_);
    std::sort(scan_.points.begin(), scan_.points.end());
    return std::move(scan_);
  }

 private:
  void recurse(std::size_t i, const Rat& budget) {
    Rat t = c_[i];
    for (std::size_t j = i + 1; j < n_; ++j) t -= q_(i, j) * y_[j];
    const Rat& qi = q_(i, i);
    auto fits = [&](std::int64_t x) {
      Rat dx = Rat(static_cast<long>(x)) - t;
      return qi * dx * dx <= budget;
    };
    const double s = std::sqrt(std::max(0.0, Rat(budget / qi).get_d()));
    std::int64_t lo = floor_of(t) - static_cast<std::int64_t>(std::ceil(s)) - 1;
    std::int64_t hi = floor_of(t) + static_cast<std::int64_t>(std::ceil(s)) + 2;
    while (fits(lo - 1)) --lo;
    while (fits(hi + 1)) ++hi;
    while (lo <= hi && !fits(lo)) ++lo;
    while (hi >= lo && !fits(hi)) --hi;
    for (std::int64_t x = lo; x <= hi; ++x) {
      Rat dx = Rat(static_cast<long>(x)) - t;
      Rat rest = budget - qi * dx * dx;
      x_[i] = x;
      y_[i] = Rat(static_cast<long>(x)) - c_[i];
      if (i == 0) {
        if (rest == 0) {
          scan_.points.push_back(x_);
        } else if (!scan_.interior) {
          scan_.interior = x_;
        }
      } else {
        recurse(i - 1, rest);
      }
    }
  }

  std::size_t n_;
  RatMatrix q_;
  RatVec c_;
  Rat r2_;
  IntVec x_;
  RatVec y_;
  SphereScan scan_;
};

std::vector<BVector> to_bvectors(const std::vector<IntVec>& points) {
  std::vector<BVector> out;
  out.reserve(points.size());
  for (const auto& x : points) {
    std::vector<std::int64_t> b(x.size() + 1);
    std::int64_t s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      b[i + 1] = x[i];
      s += x[i];
    }
    b[0] = 1 - s;
    out.emplace_back(std::move(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Circumsphere circumsphere(const DistVec& d) {
  const auto g = gram_from_distance(d);
  if (det(g) == 0) throw DomainError("circumsphere of a degenerate distance vector");
  return sphere_of_gram(g);
}

SphereScan enumerate_sphere(const RatMatrix& g, const RatVec& c, const Rat& r2) {
  if (!g.square() || c.size() != g.rows()) throw DimensionError("enumerate_sphere: shape mismatch");
  return SphereEnumerator(g, c, r2).run();
}

namespace detail {

std::optional<std::vector<BVector>> annulator_in_cone(const DistVec& d) {
  const auto g = gram_from_distance(d);
  if (det(g) == 0) return std::nullopt;
  const auto sphere = sphere_of_gram(g);
  auto scan = enumerate_sphere(g, sphere.center, sphere.radius_sq);
  if (scan.interior) throw SelfCheckError("hypermetric distance vector with a non-empty sphere");
  return to_bvectors(scan.points);
}

}  // namespace detail

std::vector<BVector> annulator(const DistVec& d) {
  if (!is_hypermetric(d)) throw DomainError("annulator: distance vector is not hypermetric");
  auto ann = detail::annulator_in_cone(d);
  if (!ann) throw DomainError("annulator: degenerate distance vector has an infinite annulator");
  return std::move(*ann);
}

DelaunayRealization realize(const DistVec& d) {
  if (!is_hypermetric(d)) throw DomainError("realize: distance vector is not hypermetric");
  DelaunayRealization r;
  r.gram = gram_from_distance(d);
  if (det(r.gram) == 0) throw DomainError("realize: degenerate distance vector");
  auto sphere = sphere_of_gram(r.gram);
  r.center = std::move(sphere.center);
  r.radius_sq = std::move(sphere.radius_sq);
  auto scan = enumerate_sphere(r.gram, r.center, r.radius_sq);
  if (scan.interior) throw SelfCheckError("hypermetric distance vector with a non-empty sphere");
  r.vertices = std::move(scan.points);
  r.ann = to_bvectors(r.vertices);
  return r;
}

std::string export_realization(const DelaunayRealization& r) {
  std::ostringstream os;
  const std::size_t n = r.gram.rows();
  os << "n " << n << '\n';
  os << "gram\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) os << (j ? " " : "") << to_string(r.gram(i, j));
    os << '\n';
  }
  os << "center";
  for (const auto& x : r.center) os << ' ' << to_string(x);
  os << '\n';
  os << "radius_sq " << to_string(r.radius_sq) << '\n';
  os << "vertices " << r.vertices.size() << '\n';
  for (const auto& v : r.vertices) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    os << '\n';
  }
  return os.str();
}

}  // namespace hypercone
