#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypercone/forms.hpp"
#include "hypercone/matrix.hpp"

namespace hypercone {

/// Gram matrix in the basis v_1 - v_0, ..., v_n - v_0:
/// G_ij = (d(0,i) + d(0,j) - d(i,j)) / 2.
RatMatrix gram_from_distance(const DistVec& d);

/// True iff the Gram matrix is nonsingular. Throws DomainError when d is not hypermetric.
bool is_nondegenerate(const DistVec& d);

struct Circumsphere {
  RatVec center;  ///< basis coordinates
  Rat radius_sq;
};

/// The sphere through 0, e_1, ..., e_n in the Gram metric. Throws DomainError if degenerate.
Circumsphere circumsphere(const DistVec& d);

struct SphereScan {
  /// Integer points with (x-c)^T G (x-c) = r2, lexicographically sorted.
  std::vector<IntVec> points;
  /// First lattice point found strictly inside the sphere, if any.
  std::optional<IntVec> interior;
};

/// Complete list of lattice points on the sphere (x-c)^T G (x-c) = r2, with an emptiness
/// check fused in. Throws DomainError when G is not positive definite.
SphereScan enumerate_sphere(const RatMatrix& g, const RatVec& c, const Rat& r2);

/// Ann(d) via sphere enumeration: each sphere point x gives b = (1 - sum x, x_1, ..., x_n).
/// Throws DomainError on a degenerate or non-hypermetric d, SelfCheckError if the sphere
/// is not empty.
std::vector<BVector> annulator(const DistVec& d);

struct DelaunayRealization {
  RatMatrix gram;
  RatVec center;
  Rat radius_sq;
  std::vector<IntVec> vertices;
  std::vector<BVector> ann;
};

DelaunayRealization realize(const DistVec& d);

/// Text block: n, Gram rows, center, radius_sq, vertex list; rationals as "p/q".
std::string export_realization(const DelaunayRealization& r);

namespace detail {
/// Annulator of a point already known to lie in the cone; skips the membership test.
/// Returns nullopt when d is degenerate.
std::optional<std::vector<BVector>> annulator_in_cone(const DistVec& d);
}  // namespace detail

}  // namespace hypercone
