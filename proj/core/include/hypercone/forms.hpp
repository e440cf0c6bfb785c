#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypercone/rational.hpp"

namespace hypercone {

/// Number of unordered pairs on points 0..n, i.e. binomial(n+1, 2).
constexpr std::size_t pair_count(std::size_t n) { return n * (n + 1) / 2; }

/// Position of pair (i, j), i < j, in the lexicographic order (0,1), (0,2), ..., (n-1,n).
std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n);
std::pair<std::size_t, std::size_t> pair_at(std::size_t index, std::size_t n);

/// Infers n from a pair count N = binomial(n+1, 2); throws DimensionError otherwise.
std::size_t dimension_from_pairs(std::size_t pairs);

/// Integer vector b_0..b_n with coordinate sum 1: a hypermetric inequality label and, for a
/// Delaunay polytope with a chosen affine basis, the address of a vertex.
class BVector {
 public:
  BVector() = default;
  /// Throws DomainError when the coordinates do not sum to 1 or fewer than two are given.
  explicit BVector(std::vector<std::int64_t> coords);

  /// The basic vector e_i of length n+1.
  static BVector basic(std::size_t n, std::size_t i);

  std::size_t n() const { return coords_.size() - 1; }
  std::size_t size() const { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<std::int64_t>& coords() const { return coords_; }

  /// b(S) for a subset given as a bitmask over 0..n.
  std::int64_t sum_over(std::uint32_t mask) const;

  std::string to_string() const;

  auto operator<=>(const BVector&) const = default;

 private:
  std::vector<std::int64_t> coords_;
};

/// Squared-distance vector on points 0..n indexed by pair_index.
class DistVec {
 public:
  DistVec() = default;
  DistVec(std::size_t n, RatVec d);
  static DistVec zero(std::size_t n);
  static DistVec from_ints(std::size_t n, const IntVec& d);

  std::size_t n() const { return n_; }
  const RatVec& values() const { return d_; }
  /// d(i, j) with d(i, i) = 0; i and j may come in either order.
  const Rat& at(std::size_t i, std::size_t j) const;

  bool operator==(const DistVec&) const = default;

 private:
  static const Rat kZero;
  std::size_t n_ = 0;
  RatVec d_;
};

/// A cut delta_S on points 0..n. Stored canonically by the side not containing 0.
class CutSet {
 public:
  CutSet(std::size_t n, std::uint32_t members);
  static CutSet of(std::size_t n, std::initializer_list<std::size_t> members);

  std::size_t n() const { return n_; }
  std::uint32_t mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  bool contains(std::size_t i) const { return (mask_ >> i) & 1U; }
  std::size_t size() const;

  auto operator<=>(const CutSet&) const = default;

 private:
  std::size_t n_;
  std::uint32_t mask_;
};

/// Coefficients b_i b_j of the quadratic form H(b) in pair order.
IntVec h_form(const BVector& b);

/// H(b) for a rational b; used for fractional hypermetric vectors (no sum constraint).
RatVec h_form(const RatVec& b);

/// H(b) d = sum_{i<j} b_i b_j d_ij. Throws DimensionError if the sizes disagree.
Rat h_eval(const BVector& b, const DistVec& d);

/// Same as h_eval on integer data.
std::int64_t h_eval(const IntVec& form, const IntVec& d);

DistVec cut_vector(const CutSet& s, std::size_t n);
IntVec cut_ints(std::uint32_t mask, std::size_t n);

/// Negates b on A; requires b(A) = 0 (DomainError otherwise).
BVector switch_root(const BVector& b, std::span<const std::size_t> a);

/// The vector with every coordinate negated except position i; requires b_i = 1.
BVector geometric_partner(const BVector& b, std::size_t i);

/// Appends a zero coordinate.
BVector zero_extension(const BVector& b);

/// Coordinates sorted descending: a key for the orbit of b under coordinate permutations.
std::vector<std::int64_t> orbit_key(const BVector& b);

/// Applies a permutation of 0..n to a distance vector: out(p[i], p[j]) = d(i, j).
IntVec permute_pairs(const IntVec& d, std::span<const std::uint8_t> perm, std::size_t n);

}  // namespace hypercone
