#include "hypercone/facelat.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "hypercone/delaunay.hpp"
#include "hypercone/errors.hpp"
#include "hypercone/matrix.hpp"
#include "hypercone/rank_accumulator.hpp"
#include "hypercone/schlafli.hpp"

namespace hypercone {

namespace {

void check(bool ok, const char* what) {
  if (!ok) throw SelfCheckError(std::string("facelat: ") + what);
}

template <class F>
void parallel_for(std::size_t count, F&& body) {
  const std::size_t threads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  if (count < 64 || threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

ConeContext::ConeContext(std::size_t n) : n_(n), catalog_(&cached_catalog(n)) {
  if (n == 6) {
    rays_ = &cached_hyp7_rays();
  } else {
    own_rays_ = cut_inventory(n);
    rays_ = &own_rays_;
  }
  const std::size_t nf = facet_count();
  const std::size_t nr = ray_count();
  facet_rays_.assign(nf, Bits(nr));
  ray_facets_.assign(nr, Bits(nf));
  schlafli_rays_ = Bits(nr);
  for (std::size_t r = 0; r < nr; ++r)
    if (rays_->rays[r].kind == RayKind::schlafli) schlafli_rays_.set(r);

  std::vector<char> violated(nf, 0);
  parallel_for(nf, [&](std::size_t h) {
    const auto& form = catalog_->forms()[h];
    for (std::size_t r = 0; r < nr; ++r) {
      const auto v = h_eval(form, rays_->rays[r].dist);
      if (v > 0) violated[h] = 1;
      if (v == 0) facet_rays_[h].set(r);
    }
  });
  check(std::none_of(violated.begin(), violated.end(), [](char c) { return c; }),
        "an extreme ray violates a facet inequality");
  for (std::size_t h = 0; h < nf; ++h)
    facet_rays_[h].for_each([&](std::size_t r) { ray_facets_[r].set(h); });
}

const ConeContext& ConeContext::get(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<ConeContext>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<ConeContext>(n);
  return *slot;
}

std::vector<BVector> ConeContext::schlafli_ann(std::size_t ray, std::vector<int>* vertices) const {
  const auto& r = rays_->rays.at(ray);
  if (r.kind != RayKind::schlafli) throw DomainError("schlafli_ann: not a Schlafli ray");
  const auto& cls = cached_affine_bases()[r.basis_class];
  std::vector<BVector> out;
  out.reserve(cls.ann.size());
  for (const auto& b : cls.ann) {
    std::vector<std::int64_t> c(7);
    for (std::size_t k = 0; k < 7; ++k) c[r.perm[k]] = b[k];
    out.emplace_back(std::move(c));
  }
  if (vertices) *vertices = cls.ann_vertex;
  return out;
}

std::size_t ray_span_rank(const ConeContext& ctx, const Bits& rays, std::size_t stop_at) {
  RankAccumulator acc(ctx.pairs());
  for (auto r : rays.indices()) {
    acc.add(ctx.rays().rays[r].dist);
    if (acc.rank() >= stop_at || acc.rank() == ctx.pairs()) break;
  }
  return acc.rank();
}

Face closure(const ConeContext& ctx, const Bits& rays) {
  if (rays.none()) throw DomainError("closure: empty ray set");
  Face f;
  f.facet_bits = Bits(ctx.facet_count(), true);
  rays.for_each([&](std::size_t r) { f.facet_bits &= ctx.ray_facets(r); });
  f.ray_bits = Bits(ctx.ray_count(), true);
  f.facet_bits.for_each([&](std::size_t h) { f.ray_bits &= ctx.facet_rays(h); });
  f.rank = ray_span_rank(ctx, f.ray_bits);
  return f;
}

Face closure(const ConeContext& ctx, std::span<const std::uint32_t> rays) {
  Bits b(ctx.ray_count());
  for (auto r : rays) b.set(r);
  return closure(ctx, b);
}

Face full_cone(const ConeContext& ctx) {
  Face f;
  f.facet_bits = Bits(ctx.facet_count());
  f.ray_bits = Bits(ctx.ray_count(), true);
  f.rank = ctx.pairs();
  return f;
}

Face facet_face(const ConeContext& ctx, std::size_t facet) {
  return closure(ctx, ctx.facet_rays(facet));
}

bool is_facet_by_rays(const ConeContext& ctx, std::size_t facet) {
  return ray_span_rank(ctx, ctx.facet_rays(facet)) == ctx.pairs() - 1;
}

std::vector<Face> subfaces(const ConeContext& ctx, const Face& f) {
  if (f.rank < 2) throw DomainError("subfaces: rank must be at least 2");
  std::unordered_set<Bits, BitsHash> seen;
  std::vector<Bits> candidates;
  for (std::size_t h = 0; h < ctx.facet_count(); ++h) {
    if (f.facet_bits.test(h)) continue;
    Bits r = f.ray_bits & ctx.facet_rays(h);
    if (r.none()) continue;
    if (seen.insert(r).second) candidates.push_back(std::move(r));
  }
  // A candidate is a proper face of f, so its rank is at most f.rank - 1; reaching that rank
  // proves it is a facet of f.
  std::vector<char> keep(candidates.size(), 0);
  parallel_for(candidates.size(), [&](std::size_t k) {
    keep[k] = ray_span_rank(ctx, candidates[k], f.rank - 1) == f.rank - 1;
  });
  std::vector<Face> out;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (!keep[k]) continue;
    Face g;
    g.ray_bits = std::move(candidates[k]);
    g.facet_bits = Bits(ctx.facet_count(), true);
    g.ray_bits.for_each([&](std::size_t r) { g.facet_bits &= ctx.ray_facets(r); });
    g.rank = f.rank - 1;
    out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end(),
            [](const Face& a, const Face& b) { return a.facet_bits < b.facet_bits; });
  return out;
}

IntVec interior_point(const ConeContext& ctx, const Face& f) {
  IntVec d(ctx.pairs(), 0);
  f.ray_bits.for_each([&](std::size_t r) {
    const auto& v = ctx.rays().rays[r].dist;
    for (std::size_t k = 0; k < d.size(); ++k) d[k] += v[k];
  });
  return d;
}

std::optional<std::size_t> first_schlafli_ray(const ConeContext& ctx, const Face& f) {
  const Bits s = f.ray_bits & ctx.schlafli_rays();
  std::optional<std::size_t> out;
  s.for_each([&](std::size_t r) {
    if (!out) out = r;
  });
  return out;
}

bool is_degenerate_cutface(std::size_t n, std::span<const std::uint32_t> cut_masks) {
  std::vector<IntVec> rows;
  rows.emplace_back(n + 1, 1);
  for (auto m : cut_masks) {
    IntVec row(n + 1, 0);
    for (std::size_t i = 0; i <= n; ++i) row[i] = (m >> i) & 1U;
    rows.push_back(std::move(row));
  }
  return integer_rank(rows, n + 1) < n + 1;
}

std::optional<std::vector<BVector>> face_annulator(const ConeContext& ctx, const Face& f) {
  const IntVec d = interior_point(ctx, f);
  if (auto s = first_schlafli_ray(ctx, f)) {
    std::vector<BVector> ann;
    for (auto& b : ctx.schlafli_ann(*s))
      if (h_eval(h_form(b), d) == 0) ann.push_back(std::move(b));
    std::sort(ann.begin(), ann.end());
    check(ann.size() == 7 + f.corank(ctx.pairs()), "|Ann| differs from 7 + corank");
    return ann;
  }
  std::vector<std::uint32_t> masks;
  f.ray_bits.for_each([&](std::size_t r) { masks.push_back(ctx.rays().rays[r].cut_mask); });
  const bool degenerate = is_degenerate_cutface(ctx.n(), masks);
  auto ann = detail::annulator_in_cone(DistVec::from_ints(ctx.n(), d));
  check(degenerate == !ann.has_value(), "cut-system test disagrees with the Gram determinant");
  if (ann) std::sort(ann->begin(), ann->end());
  return ann;
}

void compute_annulator(const ConeContext& ctx, Face& f) {
  auto ann = face_annulator(ctx, f);
  f.ann_known = true;
  f.degenerate = !ann.has_value();
  f.ann = ann ? std::move(*ann) : std::vector<BVector>{};
}

std::size_t face_rank(const ConeContext& ctx, const Face& f) {
  if (!f.ann_known || f.degenerate) throw DomainError("face_rank: annulator not available");
  std::vector<IntVec> forms;
  forms.reserve(f.ann.size());
  for (const auto& b : f.ann) forms.push_back(h_form(b));
  const std::size_t r = ctx.pairs() - integer_rank(forms, ctx.pairs());
  check(r == f.rank, "annulator rank disagrees with ray span");
  return r;
}

}  // namespace hypercone
