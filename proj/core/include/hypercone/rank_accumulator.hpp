#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hypercone/rational.hpp"

namespace hypercone {

/// Incremental exact rank of integer vectors of a fixed length.
///
/// Keeps a fraction-free echelon basis with content-normalized rows. Works in 64-bit
/// integers and transparently switches to GMP integers the first time an intermediate
/// product would overflow.
class RankAccumulator {
 public:
  explicit RankAccumulator(std::size_t dim);

  /// Returns true when `v` is independent of the vectors added so far.
  bool add(std::span<const std::int64_t> v);

  std::size_t rank() const { return wide_ ? wide_rows_.size() : rows_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  struct Row {
    std::size_t pivot;
    std::vector<std::int64_t> v;
  };
  struct WideRow {
    std::size_t pivot;
    std::vector<Int> v;
  };

  bool add_narrow(std::span<const std::int64_t> v, bool& overflow);
  bool add_wide(std::span<const std::int64_t> v);
  void widen();

  std::size_t dim_;
  bool wide_ = false;
  std::vector<Row> rows_;
  std::vector<WideRow> wide_rows_;
};

/// Rank of a list of integer vectors of common length `dim`.
std::size_t integer_rank(const std::vector<IntVec>& vectors, std::size_t dim);

}  // namespace hypercone
