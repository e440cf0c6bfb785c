#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "hypercone/delaunay.hpp"
#include "hypercone/equiv.hpp"
#include "hypercone/facelat.hpp"
#include "hypercone/lp.hpp"
#include "hypercone/schlafli.hpp"

using namespace hypercone;

static void BM_CanonicalFormSchlafli(benchmark::State& state) {
  auto g = schlafli_model().graph;
  for (int v : {0, 5, 13}) g.set_color(v, 1);
  std::mt19937_64 rng(1);
  Perm p(g.size());
  std::iota(p.begin(), p.end(), 0);
  for (auto _ : state) {
    std::shuffle(p.begin(), p.end(), rng);
    benchmark::DoNotOptimize(canonical_form(relabel(g, p)));
  }
}
BENCHMARK(BM_CanonicalFormSchlafli);

static void BM_SubfacesOfFacet(benchmark::State& state) {
  const auto& ctx = ConeContext::get(6);
  const auto f = facet_face(ctx, ctx.catalog().representative_index(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(subfaces(ctx, f));
}
BENCHMARK(BM_SubfacesOfFacet)->Arg(0)->Arg(4)->Arg(13);

static void BM_AnnulatorSixCube(benchmark::State& state) {
  // d(i,j) = 1 for 0-e_i, 2 between unit vectors
  IntVec d;
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = i + 1; j < 7; ++j) d.push_back(i == 0 ? 1 : 2);
  const auto dv = DistVec::from_ints(6, d);
  for (auto _ : state) benchmark::DoNotOptimize(annulator(dv));
}
BENCHMARK(BM_AnnulatorSixCube);

static void BM_CertifyFacetFace(benchmark::State& state) {
  const auto& ctx = ConeContext::get(6);
  const auto f = facet_face(ctx, ctx.catalog().representative_index(state.range(0)));
  for (auto _ : state) {
    Face g = f;
    benchmark::DoNotOptimize(certify(ctx, g));
  }
}
BENCHMARK(BM_CertifyFacetFace)->Arg(0)->Arg(7);

static void BM_LpFacetCone(benchmark::State& state) {
  // is the first facet form a nonnegative combination of the others?
  const auto& forms = ConeContext::get(6).catalog().forms();
  auto to_rat = [](const IntVec& v) {
    RatVec r;
    for (auto x : v) r.emplace_back(x);
    return r;
  };
  std::vector<RatVec> gens;
  for (long k = 1; k <= state.range(0); ++k) gens.push_back(to_rat(forms[k]));
  const RatVec target = to_rat(forms.front());
  for (auto _ : state) {
    if (state.range(1)) benchmark::DoNotOptimize(lp_feasible_guided(gens, target));
    else benchmark::DoNotOptimize(lp_feasible(gens, target));
  }
}
BENCHMARK(BM_LpFacetCone)->Args({200, 0})->Args({200, 1})->Args({1000, 1});

BENCHMARK_MAIN();
