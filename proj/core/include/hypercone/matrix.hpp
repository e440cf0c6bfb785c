#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hypercone/rational.hpp"

namespace hypercone {

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_rows(const std::vector<RatVec>& rows);
  static RatMatrix from_int_rows(const std::vector<IntVec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rat> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  RatMatrix transpose() const;
  RatMatrix operator*(const RatMatrix& other) const;
  RatVec operator*(const RatVec& v) const;

  bool operator==(const RatMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

/// Exact determinant by Bareiss elimination on the row-integerized matrix.
/// Throws DimensionError when `m` is not square.
Rat det(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// One exact solution of A x = rhs (free variables set to zero), or nullopt when the
/// system is inconsistent.
std::optional<RatVec> solve(const RatMatrix& a, const RatVec& rhs);

/// Basis of the null space of `a`; empty when the kernel is trivial.
std::vector<RatVec> kernel(const RatMatrix& a);

/// Exact determinant of a small integer matrix.
Int det(const std::vector<IntVec>& rows);

}  // namespace hypercone
