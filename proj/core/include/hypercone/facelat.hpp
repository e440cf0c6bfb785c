#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hypercone/bits.hpp"
#include "hypercone/catalog.hpp"
#include "hypercone/certificate.hpp"
#include "hypercone/forms.hpp"
#include "hypercone/rays.hpp"

namespace hypercone {

/// Facets, extreme rays and their incidences for HYP_{n+1}, n in 2..6.
///
/// For n <= 5 the extreme rays are the nonzero cuts; for n = 6 they are the cuts plus the
/// Schlafli rays. Construction checks that every ray satisfies every facet inequality.
class ConeContext {
 public:
  explicit ConeContext(std::size_t n);

  /// Shared instance, built on first use.
  static const ConeContext& get(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t pairs() const { return pair_count(n_); }
  const FacetCatalog& catalog() const { return *catalog_; }
  const RayInventory& rays() const { return *rays_; }
  std::size_t facet_count() const { return catalog_->size(); }
  std::size_t ray_count() const { return rays_->rays.size(); }

  const Bits& facet_rays(std::size_t facet) const { return facet_rays_[facet]; }
  const Bits& ray_facets(std::size_t ray) const { return ray_facets_[ray]; }
  const Bits& schlafli_rays() const { return schlafli_rays_; }
  bool is_schlafli(std::size_t ray) const { return schlafli_rays_.test(ray); }

  /// Ann of a Schlafli ray (27 vectors in the ray's own coordinates) with the Schlafli
  /// vertex each one addresses.
  std::vector<BVector> schlafli_ann(std::size_t ray, std::vector<int>* vertices = nullptr) const;

 private:
  std::size_t n_;
  const FacetCatalog* catalog_;
  const RayInventory* rays_;
  RayInventory own_rays_;
  std::vector<Bits> facet_rays_;
  std::vector<Bits> ray_facets_;
  Bits schlafli_rays_;
};

/// A face of HYP_{n+1}, stored as a mutually closed pair of incidence sets.
struct Face {
  Bits facet_bits;
  Bits ray_bits;
  std::size_t rank = 0;
  bool ann_known = false;
  bool degenerate = false;
  std::vector<BVector> ann;
  std::optional<Certificate> cert;

  std::size_t corank(std::size_t pairs) const { return pairs - rank; }
};

/// Linear rank of the distance vectors of the given rays; stops early once `stop_at` is hit.
std::size_t ray_span_rank(const ConeContext& ctx, const Bits& rays,
                          std::size_t stop_at = static_cast<std::size_t>(-1));

/// Smallest face containing the rays. Throws DomainError on an empty set.
Face closure(const ConeContext& ctx, const Bits& rays);
Face closure(const ConeContext& ctx, std::span<const std::uint32_t> rays);

Face full_cone(const ConeContext& ctx);
Face facet_face(const ConeContext& ctx, std::size_t facet);

/// True iff the rays on the facet span a hyperplane.
bool is_facet_by_rays(const ConeContext& ctx, std::size_t facet);

/// All faces of rank exactly f.rank - 1 contained in f, ordered by facet_bits.
/// Throws DomainError when f.rank < 2.
std::vector<Face> subfaces(const ConeContext& ctx, const Face& f);

/// Sum of all extreme rays of f.
IntVec interior_point(const ConeContext& ctx, const Face& f);

std::optional<std::size_t> first_schlafli_ray(const ConeContext& ctx, const Face& f);

/// Ann(F), or nullopt when the face is degenerate.
std::optional<std::vector<BVector>> face_annulator(const ConeContext& ctx, const Face& f);

/// Fills ann / degenerate / ann_known on f.
void compute_annulator(const ConeContext& ctx, Face& f);

/// pairs - rank{H(b) : b in ann}; throws SelfCheckError if it disagrees with f.rank.
std::size_t face_rank(const ConeContext& ctx, const Face& f);

/// True iff {b : b(S) = 0 for every cut, sum b = 0} has a nonzero solution.
bool is_degenerate_cutface(std::size_t n, std::span<const std::uint32_t> cut_masks);

}  // namespace hypercone
