#include "hypercone/matrix.hpp"

#include <numeric>
#include <utility>

#include "hypercone/errors.hpp"

namespace hypercone {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVec>& rows) {
  if (rows.empty()) return {};
  RatMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw DimensionError("ragged rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RatMatrix RatMatrix::from_int_rows(const std::vector<IntVec>& rows) {
  std::vector<RatVec> rat_rows;
  rat_rows.reserve(rows.size());
  for (const auto& r : rows) rat_rows.push_back(to_rat(r));
  return from_rows(rat_rows);
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& other) const {
  if (cols_ != other.rows_) throw DimensionError("matrix product shape mismatch");
  RatMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

RatVec RatMatrix::operator*(const RatVec& v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
  RatVec out(rows_, Rat(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

namespace {

using IntRow = std::vector<Int>;

// Scales a rational row to an integer row; returns the multiplier used.
Int integerize(std::span<const Rat> row, IntRow& out) {
  Int l = 1;
  for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  out.resize(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) out[i] = row[i].get_num() * (l / row[i].get_den());
  return l;
}

void remove_content(IntRow& row) {
  Int g = 0;
  for (const auto& x : row) {
    if (x == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

std::vector<IntRow> integer_rows(const RatMatrix& m, std::vector<Int>* scales = nullptr) {
  std::vector<IntRow> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Int s = integerize(m.row(r), rows[r]);
    if (scales) scales->push_back(s);
  }
  return rows;
}

Int bareiss(std::vector<IntRow> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Fraction-free forward elimination over the first `ncols` columns. Returns pivot columns.
std::vector<std::size_t> echelon(std::vector<IntRow>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Int f = rows[i][c];
      const Int g = rows[r][c];
      for (std::size_t j = c; j < rows[i].size(); ++j) rows[i][j] = g * rows[i][j] - f * rows[r][j];
      remove_content(rows[i]);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Rat det(const RatMatrix& m) {
  if (!m.square()) throw DimensionError("determinant of a non-square matrix");
  std::vector<Int> scales;
  auto rows = integer_rows(m, &scales);
  Rat d(bareiss(std::move(rows)));
  for (const auto& s : scales) d /= s;
  return d;
}

Int det(const std::vector<IntVec>& rows) {
  std::vector<IntRow> a(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw DimensionError("determinant of a non-square matrix");
    for (auto x : rows[r]) a[r].emplace_back(static_cast<long>(x));
  }
  return bareiss(std::move(a));
}

std::size_t rank(const RatMatrix& m) {
  auto rows = integer_rows(m);
  return echelon(rows, m.cols()).size();
}

std::optional<RatVec> solve(const RatMatrix& a, const RatVec& rhs) {
  if (rhs.size() != a.rows()) throw DimensionError("right-hand side length mismatch");
  const std::size_t n = a.cols();
  std::vector<IntRow> rows(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::vector<Rat> aug(a.row(r).begin(), a.row(r).end());
    aug.push_back(rhs[r]);
    integerize(aug, rows[r]);
  }
  const auto pivots = echelon(rows, n);
  for (std::size_t r = pivots.size(); r < rows.size(); ++r)
    if (rows[r][n] != 0) return std::nullopt;

  RatVec x(n, Rat(0));
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const std::size_t c = pivots[k];
    Rat acc(rows[k][n]);
    for (std::size_t j = c + 1; j < n; ++j)
      if (rows[k][j] != 0) acc -= Rat(rows[k][j]) * x[j];
    x[c] = acc / Rat(rows[k][c]);
  }
  return x;
}

std::vector<RatVec> kernel(const RatMatrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  RatMatrix m = a;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
    const Rat inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rat f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(cols, Rat(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -m(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace hypercone
