#include "hypercone/rank_accumulator.hpp"

#include <algorithm>
#include <numeric>

#include "hypercone/errors.hpp"

namespace hypercone {

namespace {

bool mul_sub(std::int64_t a, std::int64_t x, std::int64_t b, std::int64_t y, std::int64_t& out) {
  std::int64_t p, q;
  if (__builtin_mul_overflow(a, x, &p)) return false;
  if (__builtin_mul_overflow(b, y, &q)) return false;
  return !__builtin_sub_overflow(p, q, &out);
}

template <class T>
void normalize(std::vector<T>& v, std::size_t from) {
  T g = 0;
  for (std::size_t i = from; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if constexpr (std::is_same_v<T, Int>) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[i].get_mpz_t());
    } else {
      g = std::gcd(g, v[i] < 0 ? -v[i] : v[i]);
    }
    if (g == 1) break;
  }
  std::size_t lead = from;
  while (lead < v.size() && v[lead] == 0) ++lead;
  if (lead == v.size()) return;
  if (v[lead] < 0) g = -g;
  if (g != 1)
    for (std::size_t i = from; i < v.size(); ++i) v[i] /= g;
}

}  // namespace

RankAccumulator::RankAccumulator(std::size_t dim) : dim_(dim) {}

bool RankAccumulator::add(std::span<const std::int64_t> v) {
  if (v.size() != dim_) throw DimensionError("rank accumulator: vector length mismatch");
  if (rank() == dim_) return false;
  if (!wide_) {
    bool overflow = false;
    const bool grew = add_narrow(v, overflow);
    if (!overflow) return grew;
    widen();
  }
  return add_wide(v);
}

bool RankAccumulator::add_narrow(std::span<const std::int64_t> v, bool& overflow) {
  std::vector<std::int64_t> w(v.begin(), v.end());
  for (const auto& row : rows_) {
    const std::int64_t f = w[row.pivot];
    if (f == 0) continue;
    const std::int64_t g = row.v[row.pivot];
    for (std::size_t j = 0; j < dim_; ++j) {
      if (!mul_sub(g, w[j], f, row.v[j], w[j])) {
        overflow = true;
        return false;
      }
    }
    normalize(w, 0);
  }
  std::size_t pivot = 0;
  while (pivot < dim_ && w[pivot] == 0) ++pivot;
  if (pivot == dim_) return false;
  normalize(w, 0);
  auto pos = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                              [](const Row& r, std::size_t p) { return r.pivot < p; });
  rows_.insert(pos, Row{pivot, std::move(w)});
  return true;
}

bool RankAccumulator::add_wide(std::span<const std::int64_t> v) {
  std::vector<Int> w;
  w.reserve(dim_);
  for (auto x : v) w.emplace_back(static_cast<long>(x));
  for (const auto& row : wide_rows_) {
    if (w[row.pivot] == 0) continue;
    const Int f = w[row.pivot];
    const Int& g = row.v[row.pivot];
    for (std::size_t j = 0; j < dim_; ++j) w[j] = g * w[j] - f * row.v[j];
    normalize(w, 0);
  }
  std::size_t pivot = 0;
  while (pivot < dim_ && w[pivot] == 0) ++pivot;
  if (pivot == dim_) return false;
  normalize(w, 0);
  auto pos = std::lower_bound(wide_rows_.begin(), wide_rows_.end(), pivot,
                              [](const WideRow& r, std::size_t p) { return r.pivot < p; });
  wide_rows_.insert(pos, WideRow{pivot, std::move(w)});
  return true;
}

void RankAccumulator::widen() {
  wide_ = true;
  for (const auto& row : rows_) {
    WideRow wr{row.pivot, {}};
    for (auto x : row.v) wr.v.emplace_back(static_cast<long>(x));
    wide_rows_.push_back(std::move(wr));
  }
  rows_.clear();
}

std::size_t integer_rank(const std::vector<IntVec>& vectors, std::size_t dim) {
  RankAccumulator acc(dim);
  for (const auto& v : vectors) {
    acc.add(v);
    if (acc.rank() == dim) break;
  }
  return acc.rank();
}

}  // namespace hypercone
