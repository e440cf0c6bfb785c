#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hypercone/forms.hpp"

namespace hypercone {

struct FacetOrbit {
  BVector representative;
  /// All distinct coordinate permutations of the representative, lexicographically sorted.
  std::vector<BVector> members;
};

/// Facet-defining hypermetric vectors of HYP_{n+1} grouped into Sym(n+1) orbits.
class FacetCatalog {
 public:
  FacetCatalog(std::size_t n, std::vector<BVector> representatives);

  std::size_t n() const { return n_; }
  const std::vector<FacetOrbit>& orbits() const { return orbits_; }
  /// Orbit-major flat list; facet ids used everywhere else index into this.
  const std::vector<BVector>& facets() const { return flat_; }
  const std::vector<IntVec>& forms() const { return forms_; }
  std::size_t size() const { return flat_.size(); }
  std::size_t orbit_of(std::size_t facet) const { return orbit_index_[facet]; }
  /// Flat index of the representative of orbit k.
  std::size_t representative_index(std::size_t k) const { return orbit_start_[k]; }
  /// Flat index of b, or size() when b is not in the catalog.
  std::size_t find(const BVector& b) const;

 private:
  std::size_t n_;
  std::vector<FacetOrbit> orbits_;
  std::vector<BVector> flat_;
  std::vector<IntVec> forms_;
  std::vector<std::size_t> orbit_index_;
  std::vector<std::size_t> orbit_start_;
};

/// Orbit representatives for n in 2..6. For n = 6 these are the fourteen classical
/// representatives in their published order; for n <= 5 the hypermetric facets of the cut cone.
std::vector<BVector> facet_representatives(std::size_t n);

/// Throws DomainError for n outside 2..6.
FacetCatalog facet_catalog(std::size_t n);

/// Process-wide immutable catalog for n (built on first use).
const FacetCatalog& cached_catalog(std::size_t n);

/// All distinct permutations of b's coordinates.
std::vector<BVector> permutation_orbit(const BVector& b);

/// True iff H(b) d <= 0 for every facet of the catalog (for n = 1, d >= 0). Throws
/// DomainError for n = 0 or n > 6.
bool is_hypermetric(const DistVec& d);

/// Orbits merged by the geometric-partner relation: each class lists orbit indices.
std::vector<std::vector<std::size_t>> partner_classes(const FacetCatalog& catalog);

/// One vector per line, "# orbit k size m" headers before each orbit.
std::string export_catalog(const FacetCatalog& catalog);

}  // namespace hypercone
