#include "hypercone/equiv.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "hypercone/errors.hpp"
#include "hypercone/matrix.hpp"
#include "hypercone/schlafli.hpp"

namespace hypercone {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ static_cast<std::uint64_t>(x)) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

// Aut(Sch)-invariant prefix: the sorted multiset of (in mask, neighbours in mask) over the
// 27 vertices. Fixed length, so lexicographic order on keys compares it first.
std::string subset_invariant(std::uint32_t mask) {
  const auto& m = schlafli_model();
  std::string inv(SchlafliModel::kVertices, '\0');
  for (int v = 0; v < SchlafliModel::kVertices; ++v)
    inv[v] = static_cast<char>(((mask >> v) & 1U) * 32 + std::popcount(m.adjacency[v] & mask));
  std::sort(inv.begin(), inv.end());
  return inv;
}

}  // namespace

ColoredGraph schlafli_colored(std::uint32_t mask) {
  ColoredGraph g = schlafli_model().graph;
  for (int v = 0; v < SchlafliModel::kVertices; ++v) g.set_color(v, (mask >> v) & 1U);
  return g;
}

std::string schlafli_subset_key(std::uint32_t mask) {
  static std::shared_mutex mu;
  static std::unordered_map<std::uint32_t, std::string> cache;
  {
    std::shared_lock lock(mu);
    if (auto it = cache.find(mask); it != cache.end()) return it->second;
  }
  std::string key = subset_invariant(mask) + canonical_form(schlafli_colored(mask)).bytes;
  std::unique_lock lock(mu);
  cache.emplace(mask, key);
  return key;
}

std::uint32_t schlafli_subset(const ConeContext& ctx, const Face& f, std::size_t ray) {
  const IntVec d = interior_point(ctx, f);
  std::vector<int> vertex;
  const auto ann = ctx.schlafli_ann(ray, &vertex);
  std::uint32_t mask = 0;
  for (std::size_t k = 0; k < ann.size(); ++k)
    if (h_eval(h_form(ann[k]), d) == 0) mask |= 1U << vertex[k];
  return mask;
}

Certificate schlafli_certificate(const ConeContext& ctx, const Face& f) {
  const Bits rays = f.ray_bits & ctx.schlafli_rays();
  if (rays.none()) throw DomainError("schlafli_certificate: face has no Schlafli ray");
  const IntVec d = interior_point(ctx, f);

  std::vector<std::uint32_t> masks;
  rays.for_each([&](std::size_t r) {
    std::vector<int> vertex;
    const auto ann = ctx.schlafli_ann(r, &vertex);
    std::uint32_t mask = 0;
    for (std::size_t k = 0; k < ann.size(); ++k)
      if (h_eval(h_form(ann[k]), d) == 0) mask |= 1U << vertex[k];
    masks.push_back(mask);
  });
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());

  // only masks with the least invariant can reach the minimum key
  std::string best_inv;
  std::vector<std::uint32_t> tied;
  for (auto m : masks) {
    auto inv = subset_invariant(m);
    if (tied.empty() || inv < best_inv) {
      best_inv = std::move(inv);
      tied.assign(1, m);
    } else if (inv == best_inv) {
      tied.push_back(m);
    }
  }
  std::string best;
  for (auto m : tied) {
    auto key = schlafli_subset_key(m);
    if (best.empty() || key < best) best = std::move(key);
  }
  return Certificate{"schlafli", std::move(best)};
}

Certificate cut_certificate(const ConeContext& ctx, const Face& f) {
  if ((f.ray_bits & ctx.schlafli_rays()).any())
    throw DomainError("cut_certificate: face contains a Schlafli ray");
  if (!f.ann_known) throw DomainError("cut_certificate: annulator not computed");
  if (f.degenerate) throw DomainError("cut_certificate: degenerate face");

  const std::size_t v = f.ann.size();
  std::vector<std::vector<char>> sides;
  f.ray_bits.for_each([&](std::size_t r) {
    const auto mask = ctx.rays().rays[r].cut_mask;
    std::vector<char> side(v);
    for (std::size_t k = 0; k < v; ++k) side[k] = static_cast<char>(f.ann[k].sum_over(mask));
    if (side[0]) std::transform(side.begin(), side.end(), side.begin(), [](char c) { return 1 - c; });
    sides.push_back(std::move(side));
  });
  std::sort(sides.begin(), sides.end());
  sides.erase(std::unique(sides.begin(), sides.end()), sides.end());

  ColoredGraph g(v + 2 * sides.size());
  for (std::size_t j = 0; j < sides.size(); ++j) {
    const int a = static_cast<int>(v + 2 * j);
    g.set_color(a, 1);
    g.set_color(a + 1, 1);
    g.add_edge(a, a + 1);
    for (std::size_t k = 0; k < v; ++k) g.add_edge(static_cast<int>(k), a + sides[j][k]);
  }
  return Certificate{"cutgraph", canonical_form(g).bytes};
}

Certificate certify(const ConeContext& ctx, Face& f) {
  if (!f.ann_known) compute_annulator(ctx, f);
  if (f.degenerate) throw DomainError("certify: degenerate face");
  f.cert = (f.ray_bits & ctx.schlafli_rays()).any() ? schlafli_certificate(ctx, f)
                                                     : cut_certificate(ctx, f);
  return *f.cert;
}

namespace {

// pair_inv[x][y] = number of unordered pairs {z, w} (z = w allowed) with z + w = x + y.
std::vector<std::vector<int>> pair_invariant(const std::vector<BVector>& a) {
  std::unordered_map<std::vector<std::int64_t>, int, VecHash> sums;
  const std::size_t m = a.size();
  auto sum = [&](std::size_t x, std::size_t y) {
    std::vector<std::int64_t> s(a[x].size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = a[x][i] + a[y][i];
    return s;
  };
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = x; y < m; ++y) ++sums[sum(x, y)];
  std::vector<std::vector<int>> p(m, std::vector<int>(m));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = x; y < m; ++y) p[x][y] = p[y][x] = sums[sum(x, y)];
  return p;
}

class OracleSearch {
 public:
  OracleSearch(const std::vector<BVector>& source, const std::vector<BVector>& target)
      : src_(source), dst_(target), n1_(source.front().size()) {
    for (std::size_t k = 0; k < dst_.size(); ++k) dst_index_.emplace(dst_[k].coords(), k);
    for (std::size_t i = 0; i < n1_; ++i) {
      const auto e = BVector::basic(n1_ - 1, i);
      const auto it = std::find(src_.begin(), src_.end(), e);
      if (it == src_.end()) throw DomainError("oracle_equivalent: annulator lacks a basic vector");
      basic_.push_back(static_cast<std::size_t>(it - src_.begin()));
    }
    // source elements checked once the images of e_0..e_k are known, k = last nonzero index
    by_depth_.resize(n1_);
    for (std::size_t c = 0; c < src_.size(); ++c) {
      std::size_t last = 0;
      for (std::size_t i = 0; i < n1_; ++i)
        if (src_[c][i] != 0) last = i;
      by_depth_[last].push_back(c);
    }
    ps_ = pair_invariant(src_);
    pd_ = pair_invariant(dst_);
  }

  bool quick_reject() const {
    auto flat = [](const std::vector<std::vector<int>>& p) {
      std::vector<int> out;
      for (const auto& row : p) out.insert(out.end(), row.begin(), row.end());
      std::sort(out.begin(), out.end());
      return out;
    };
    return flat(ps_) != flat(pd_);
  }

  bool run() {
    image_.assign(n1_, 0);
    used_.assign(dst_.size(), 0);
    return descend(0);
  }

 private:
  bool descend(std::size_t k) {
    if (k == n1_) {
      std::vector<IntVec> rows;
      for (auto y : image_) rows.push_back(dst_[y].coords());
      const Int dt = det(rows);
      return dt == 1 || dt == -1;
    }
    const std::size_t ek = basic_[k];
    for (std::size_t y = 0; y < dst_.size(); ++y) {
      if (used_[y] || pd_[y][y] != ps_[ek][ek]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = pd_[image_[j]][y] == ps_[basic_[j]][ek];
      if (!ok) continue;
      image_[k] = y;
      if (!images_land(k)) continue;
      used_[y] = 1;
      if (descend(k + 1)) return true;
      used_[y] = 0;
    }
    return false;
  }

  bool images_land(std::size_t k) const {
    std::vector<std::int64_t> img(n1_);
    for (auto c : by_depth_[k]) {
      std::fill(img.begin(), img.end(), 0);
      for (std::size_t i = 0; i <= k; ++i) {
        const auto ci = src_[c][i];
        if (ci == 0) continue;
        const auto& b = dst_[image_[i]];
        for (std::size_t t = 0; t < n1_; ++t) img[t] += ci * b[t];
      }
      if (!dst_index_.count(img)) return false;
    }
    return true;
  }

  const std::vector<BVector>& src_;
  const std::vector<BVector>& dst_;
  std::size_t n1_;
  std::unordered_map<std::vector<std::int64_t>, std::size_t, VecHash> dst_index_;
  std::vector<std::size_t> basic_;
  std::vector<std::vector<std::size_t>> by_depth_;
  std::vector<std::vector<int>> ps_, pd_;
  std::vector<std::size_t> image_;
  std::vector<char> used_;
};

}  // namespace

bool oracle_equivalent(const std::vector<BVector>& source, const std::vector<BVector>& target) {
  if (source.empty() || target.empty()) throw DomainError("oracle_equivalent: empty annulator");
  if (source.size() != target.size()) return false;
  if (source.front().size() != target.front().size())
    throw DimensionError("oracle_equivalent: dimension mismatch");
  OracleSearch search(source, target);
  if (search.quick_reject()) return false;
  return search.run();
}

bool oracle_equivalent(const Face& f, const Face& g) {
  if (!f.ann_known || !g.ann_known || f.degenerate || g.degenerate)
    throw DomainError("oracle_equivalent: annulator missing");
  return oracle_equivalent(f.ann, g.ann);
}

}  // namespace hypercone
