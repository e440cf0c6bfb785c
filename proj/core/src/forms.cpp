#include "hypercone/forms.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "hypercone/errors.hpp"

namespace hypercone {

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
  if (i > j) std::swap(i, j);
  if (i == j || j > n) throw DimensionError("pair_index: invalid pair");
  return i * n - i * (i - 1) / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> pair_at(std::size_t index, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t row = n - i;
    if (index < row) return {i, i + 1 + index};
    index -= row;
  }
  throw DimensionError("pair_at: index out of range");
}

std::size_t dimension_from_pairs(std::size_t pairs) {
  for (std::size_t n = 1; pair_count(n) <= pairs; ++n)
    if (pair_count(n) == pairs) return n;
  throw DimensionError("vector length " + std::to_string(pairs) + " is not binomial(n+1, 2)");
}

BVector::BVector(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw DomainError("BVector needs at least two coordinates");
  if (std::accumulate(coords_.begin(), coords_.end(), std::int64_t{0}) != 1)
    throw DomainError("BVector coordinates must sum to 1: " + to_string());
}

BVector BVector::basic(std::size_t n, std::size_t i) {
  std::vector<std::int64_t> c(n + 1, 0);
  c.at(i) = 1;
  return BVector(std::move(c));
}

std::int64_t BVector::sum_over(std::uint32_t mask) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if ((mask >> i) & 1U) s += coords_[i];
  return s;
}

std::string BVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i];
  os << ')';
  return os.str();
}

const Rat DistVec::kZero = 0;

DistVec::DistVec(std::size_t n, RatVec d) : n_(n), d_(std::move(d)) {
  if (d_.size() != pair_count(n)) throw DimensionError("DistVec length does not match n");
}

DistVec DistVec::zero(std::size_t n) { return DistVec(n, RatVec(pair_count(n), Rat(0))); }

DistVec DistVec::from_ints(std::size_t n, const IntVec& d) { return DistVec(n, to_rat(d)); }

const Rat& DistVec::at(std::size_t i, std::size_t j) const {
  if (i == j) return kZero;
  return d_[pair_index(i, j, n_)];
}

CutSet::CutSet(std::size_t n, std::uint32_t members) : n_(n) {
  if (n >= 31) throw DimensionError("CutSet supports at most 31 points");
  const std::uint32_t all = (1U << (n + 1)) - 1;
  members &= all;
  mask_ = (members & 1U) ? (all & ~members) : members;
}

CutSet CutSet::of(std::size_t n, std::initializer_list<std::size_t> members) {
  std::uint32_t m = 0;
  for (auto i : members) {
    if (i > n) throw DimensionError("CutSet member out of range");
    m |= 1U << i;
  }
  return CutSet(n, m);
}

std::size_t CutSet::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

IntVec h_form(const BVector& b) {
  const std::size_t n = b.n();
  IntVec f(pair_count(n));
  std::size_t k = 0;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) f[k++] = b[i] * b[j];
  return f;
}

RatVec h_form(const RatVec& b) {
  const std::size_t n = b.size() - 1;
  RatVec f(pair_count(n));
  std::size_t k = 0;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) f[k++] = b[i] * b[j];
  return f;
}

Rat h_eval(const BVector& b, const DistVec& d) {
  if (b.n() != d.n()) throw DimensionError("h_eval: dimension mismatch");
  Rat s = 0;
  const std::size_t n = b.n();
  std::size_t k = 0;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j, ++k)
      if (b[i] != 0 && b[j] != 0) s += Rat(static_cast<long>(b[i] * b[j])) * d.values()[k];
  return s;
}

std::int64_t h_eval(const IntVec& form, const IntVec& d) {
  if (form.size() != d.size()) throw DimensionError("h_eval: length mismatch");
  std::int64_t s = 0;
  for (std::size_t k = 0; k < form.size(); ++k) s += form[k] * d[k];
  return s;
}

IntVec cut_ints(std::uint32_t mask, std::size_t n) {
  IntVec v(pair_count(n));
  std::size_t k = 0;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      v[k++] = (((mask >> i) ^ (mask >> j)) & 1U) ? 1 : 0;
  return v;
}

DistVec cut_vector(const CutSet& s, std::size_t n) {
  if (s.n() != n) throw DimensionError("cut_vector: dimension mismatch");
  return DistVec::from_ints(n, cut_ints(s.mask(), n));
}

BVector switch_root(const BVector& b, std::span<const std::size_t> a) {
  std::int64_t s = 0;
  std::vector<bool> in(b.size(), false);
  for (auto i : a) {
    if (i >= b.size()) throw DimensionError("switch_root: index out of range");
    if (in[i]) throw DomainError("switch_root: repeated index");
    in[i] = true;
    s += b[i];
  }
  if (s != 0) throw DomainError("switch_root: b(A) must be 0 for " + b.to_string());
  auto c = b.coords();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (in[i]) c[i] = -c[i];
  return BVector(std::move(c));
}

BVector geometric_partner(const BVector& b, std::size_t i) {
  if (i >= b.size()) throw DimensionError("geometric_partner: index out of range");
  if (b[i] != 1) throw DomainError("geometric_partner: b_i must be 1 for " + b.to_string());
  auto c = b.coords();
  for (std::size_t k = 0; k < c.size(); ++k)
    if (k != i) c[k] = -c[k];
  return BVector(std::move(c));
}

BVector zero_extension(const BVector& b) {
  auto c = b.coords();
  c.push_back(0);
  return BVector(std::move(c));
}

std::vector<std::int64_t> orbit_key(const BVector& b) {
  auto c = b.coords();
  std::sort(c.begin(), c.end(), std::greater<>());
  return c;
}

IntVec permute_pairs(const IntVec& d, std::span<const std::uint8_t> perm, std::size_t n) {
  IntVec out(d.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) out[pair_index(perm[i], perm[j], n)] = d[k++];
  return out;
}

}  // namespace hypercone
