#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <span>
#include <vector>

#include "hypercone/canon.hpp"
#include "hypercone/forms.hpp"
#include "hypercone/rays.hpp"

namespace hypercone {

/// The 27-vertex Delaunay polytope of E_6, modelled on the 27 lines of a cubic surface.
///
/// Vertices 0..5 are the lines a_1..a_6, 6..11 are b_1..b_6 and 12..26 are c_ij in
/// lexicographic order. Two vertices are adjacent in the skeleton (squared distance 2)
/// when the lines are skew, and at squared distance 4 when they meet.
struct SchlafliModel {
  static constexpr int kVertices = 27;

  ColoredGraph graph{kVertices};
  /// Neighbourhood bitmasks of the skeleton graph.
  std::array<std::uint32_t, kVertices> adjacency{};
  std::vector<Perm> aut_generators;
  std::vector<std::array<std::uint8_t, kVertices>> aut_group;
  /// The affine basis used as the coordinate frame.
  std::array<int, 7> base{};
  /// Affine coordinates (sum 1) of each vertex in `base`.
  std::vector<BVector> coords;

  int dist(int u, int v) const;
  IntVec basis_distances(const std::array<int, 7>& basis) const;
  static std::string vertex_name(int v);
};

/// Builds the model and proves it at runtime: strongly regular parameters, automorphism
/// group order, and an empty circumsphere carrying all 27 vertices for the chosen base.
/// Throws SelfCheckError if any check fails.
/// `labeling`, when given, assigns the 27 lines to vertex ids (line k becomes vertex
/// labeling[k]); the default is the identity.
SchlafliModel build_schlafli(std::span<const int> labeling = {});
const SchlafliModel& schlafli_model();

/// One class of affine bases of the Schlafli polytope; classes are the distance vectors
/// d_B up to coordinate permutation.
struct BasisOrbit {
  std::array<int, 7> representative{};
  /// d_B in pair order for the representative ordering.
  IntVec dist;
  /// Number of unordered 7-subsets that are affine bases in this class.
  std::size_t basis_count = 0;
  /// Size of the Aut(Sch)-orbit of the representative 7-subset.
  std::size_t orbit_size_under_aut = 0;
  /// Number of Aut(Sch)-orbits of 7-subsets making up the class.
  std::size_t aut_orbits = 0;
  /// Ann(d_B): coordinates of all 27 vertices in the representative basis, sorted,
  /// with ann_vertex[k] the vertex addressed by ann[k].
  std::vector<BVector> ann;
  std::vector<int> ann_vertex;
};

/// True iff the 7 vertices form an affine basis (unimodular in the model's coordinates).
bool is_affine_basis(const SchlafliModel& model, const std::array<int, 7>& subset);

/// Affine coordinates of all 27 vertices with respect to `basis`, or nullopt when some
/// vertex is not an integral combination (or the basis is affinely dependent).
std::optional<std::vector<BVector>> coords_in_basis(const SchlafliModel& model,
                                                    const std::array<int, 7>& basis);

std::vector<BasisOrbit> affine_bases(const SchlafliModel& model);
const std::vector<BasisOrbit>& cached_affine_bases();

/// 63 nonzero cuts (3 orbits) followed by the Sym(7)-expansions of every basis class.
RayInventory extreme_rays_hyp7(const SchlafliModel& model, const std::vector<BasisOrbit>& bases);
const RayInventory& cached_hyp7_rays();

}  // namespace hypercone
