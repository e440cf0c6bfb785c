#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hypercone/rational.hpp"

namespace hypercone {

enum class RayKind : std::uint8_t { cut, schlafli };

struct Ray {
  RayKind kind = RayKind::cut;
  std::size_t orbit = 0;
  /// Exact squared distances in pair order: 0/1 for cuts, 2/4 for Schlafli rays.
  IntVec dist;
  /// Canonical cut side (bitmask excluding point 0); cuts only.
  std::uint32_t cut_mask = 0;
  /// Schlafli rays: index of the affine-basis class and the coordinate permutation taking
  /// that class's representative distance vector to this one (perm[k] = new position of k).
  std::size_t basis_class = 0;
  std::array<std::uint8_t, 7> perm{};
};

/// Extreme rays of HYP_{n+1}, cuts first, grouped by Sym(n+1) orbit.
struct RayInventory {
  std::size_t n = 0;
  std::vector<Ray> rays;
  std::vector<std::string> orbit_labels;
  std::vector<std::size_t> orbit_sizes;

  std::size_t orbit_count() const { return orbit_sizes.size(); }
  std::size_t count(RayKind kind) const;

  /// JSON lines: {"id":..,"kind":"cut"|"schlafli","orbit":..,"dist":["p/q",..]}.
  std::string to_jsonl() const;
  /// 64-bit FNV-1a of to_jsonl(), as 16 hex digits.
  std::string digest() const;
};

/// The 2^n - 1 nonzero cuts on points 0..n, orbits by the size of the smaller side.
RayInventory cut_inventory(std::size_t n);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& data);

}  // namespace hypercone
