#pragma once

#include <cstddef>
#include <vector>

#include "hypercone/rational.hpp"

namespace hypercone {

/// Outcome of an exact feasibility problem  sum_l lambda_l g_l = target, lambda >= 0.
struct LpResult {
  bool feasible = false;
  /// One coefficient per generator (only the support entries when `strict` was requested).
  RatVec lambda;
  /// Indices of generators with lambda > 0.
  std::vector<std::size_t> support;
  /// When infeasible: y with y.g_l <= 0 for every generator and y.target > 0.
  RatVec farkas;
  std::size_t pivots = 0;
};

/// Exact tableau simplex: largest-coefficient pricing, switching to Bland's rule after
/// a run of degenerate pivots.
/// With `strict` the returned lambda is compressed onto its positive support.
/// Throws DimensionError if vector lengths disagree.
LpResult lp_feasible(const std::vector<RatVec>& generators, const RatVec& target,
                     bool strict = false);

/// Same answer as lp_feasible, found faster on large generator sets: a double-precision
/// phase one only proposes a final basis, from which lambda or the Farkas vector is
/// recomputed exactly and checked. If the check fails it falls back to lp_feasible, so
/// no result depends on a tolerance.
LpResult lp_feasible_guided(const std::vector<RatVec>& generators, const RatVec& target,
                            bool strict = false);

/// Checks the LP answer: lambda reproduces the target exactly, or the Farkas vector
/// separates the target from the cone of generators.
bool verify_lp_result(const std::vector<RatVec>& generators, const RatVec& target,
                      const LpResult& result);

}  // namespace hypercone
