#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hypercone/rational.hpp"

namespace hypercone {

using Perm = std::vector<int>;

/// Undirected, loop-free graph with small-integer vertex colors.
class ColoredGraph {
 public:
  explicit ColoredGraph(std::size_t n = 0);

  std::size_t size() const { return adj_.size(); }
  void add_edge(int u, int v);
  bool adjacent(int u, int v) const;
  void set_color(int v, int color) { colors_.at(v) = color; }
  int color(int v) const { return colors_[v]; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  const std::vector<int>& colors() const { return colors_; }
  std::size_t edge_count() const;

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<int> colors_;
};

/// Copy of g with vertex v renamed perm[v].
ColoredGraph relabel(const ColoredGraph& g, std::span<const int> perm);

struct CanonicalForm {
  /// Encoding of the canonically relabeled graph; equal bytes iff isomorphic.
  std::string bytes;
  /// Generators of the color-preserving automorphism group.
  std::vector<Perm> generators;
  /// labeling[k] is the original vertex placed at canonical position k.
  std::vector<int> labeling;
  std::size_t leaves = 0;
};

/// Canonical labeling by equitable refinement, individualization and backtracking with
/// automorphism pruning.
CanonicalForm canonical_form(const ColoredGraph& g);

bool is_automorphism(const ColoredGraph& g, std::span<const int> perm);

/// Order of the permutation group on n points generated by `generators` (Schreier-Sims).
Int group_order(const std::vector<Perm>& generators, std::size_t n);

/// All elements of the group generated by `generators`; throws DomainError past `limit`.
std::vector<Perm> enumerate_group(const std::vector<Perm>& generators, std::size_t n,
                                  std::size_t limit = 1'000'000);

}  // namespace hypercone
