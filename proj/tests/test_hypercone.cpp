#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "hypercone/catalog.hpp"
#include "hypercone/errors.hpp"
#include "hypercone/facelat.hpp"
#include "hypercone/forms.hpp"
#include "oracles.hpp"

using namespace hypercone;

namespace {

std::int64_t side_sum(const BVector& b, std::uint32_t mask) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < b.size(); ++i)
    if ((mask >> i) & 1U) s += b[i];
  return s;
}

// Every BVector with coordinates in [-2, 2], plus cuts on all subsets.
void exhaustive_cut_identity(std::size_t n) {
  std::vector<std::int64_t> c(n + 1, -2);
  std::size_t checked = 0;
  for (;;) {
    if (std::accumulate(c.begin(), c.end(), std::int64_t{0}) == 1) {
      const BVector b(c);
      const auto form = h_form(b);
      for (std::uint32_t mask = 0; mask < (1U << (n + 1)); ++mask) {
        const std::int64_t s = side_sum(b, mask);
        ASSERT_EQ(h_eval(form, oracle::cut(mask, n)), s * (1 - s)) << b.to_string() << " mask " << mask;
        ++checked;
      }
    }
    std::size_t k = n + 1;
    while (k > 0 && c[k - 1] == 2) c[--k] = -2;
    if (k == 0) break;
    ++c[k - 1];
  }
  EXPECT_GT(checked, 0u);
}

}  // namespace

TEST(Pairs, LexicographicOrder) {
  EXPECT_EQ(pair_count(6), 21u);
  EXPECT_EQ(pair_index(0, 1, 2), 0u);
  EXPECT_EQ(pair_index(0, 2, 2), 1u);
  EXPECT_EQ(pair_index(1, 2, 2), 2u);
  std::size_t k = 0;
  for (std::size_t i = 0; i <= 6; ++i)
    for (std::size_t j = i + 1; j <= 6; ++j) {
      EXPECT_EQ(pair_index(i, j, 6), k);
      EXPECT_EQ(pair_at(k, 6), std::make_pair(i, j));
      ++k;
    }
  EXPECT_EQ(dimension_from_pairs(21), 6u);
  EXPECT_THROW(dimension_from_pairs(20), DimensionError);
}

TEST(BVector, RequiresSumOne) {
  EXPECT_THROW(BVector({1, 1}), DomainError);
  EXPECT_THROW(BVector({1}), DomainError);
  EXPECT_NO_THROW(BVector({-1, 1, 1}));
}

TEST(Forms, Examples) {
  EXPECT_EQ(h_form(BVector::basic(6, 0)), IntVec(21, 0));
  EXPECT_EQ(h_form(BVector({-1, 1, 1})), (IntVec{-1, -1, 1}));
  IntVec expect(21, 0);
  expect[pair_index(0, 1, 6)] = 1;
  expect[pair_index(0, 2, 6)] = -1;
  expect[pair_index(1, 2, 6)] = -1;
  EXPECT_EQ(h_form(BVector({1, 1, -1, 0, 0, 0, 0})), expect);
}

TEST(Forms, Evaluation) {
  auto d = [](IntVec v) { return DistVec::from_ints(2, v); };
  EXPECT_EQ(h_eval(BVector({1, 1, -1}), d({1, 1, 0})), 0);
  EXPECT_EQ(h_eval(BVector({-1, 1, 1}), d({1, 1, 1})), -1);
  EXPECT_EQ(h_eval(BVector({-1, 1, 1}), d({1, 1, 3})), 1);
  EXPECT_THROW(h_eval(BVector({-1, 1, 1, 0}), d({1, 1, 1})), DimensionError);
}

TEST(Forms, CutVectors) {
  EXPECT_EQ(cut_vector(CutSet::of(2, {0}), 2), DistVec::from_ints(2, {1, 1, 0}));
  EXPECT_EQ(cut_vector(CutSet::of(2, {}), 2), DistVec::zero(2));
  EXPECT_EQ(cut_vector(CutSet::of(2, {1, 2}), 2), DistVec::from_ints(2, {1, 1, 0}));
  EXPECT_EQ(CutSet::of(2, {0}), CutSet::of(2, {1, 2}));
  for (std::uint32_t m = 0; m < 128; ++m)
    EXPECT_EQ(cut_ints(m, 6), oracle::cut(m, 6));
}

TEST(Forms, CutIdentityExhaustiveSmall) {
  for (std::size_t n = 1; n <= 4; ++n) exhaustive_cut_identity(n);
}

TEST(Forms, CutIdentityRandomSeven) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<std::uint32_t> mask(0, 127);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<std::int64_t> c(7);
    std::int64_t s = 0;
    for (std::size_t i = 0; i < 6; ++i) s += c[i] = coef(rng);
    c[6] = 1 - s;
    const BVector b(c);
    const auto m = mask(rng);
    const std::int64_t bs = side_sum(b, m);
    ASSERT_EQ(h_eval(b, cut_vector(CutSet(6, m), 6)), Rat(bs * (1 - bs)));
  }
}

TEST(Forms, SwitchRoot) {
  const BVector b({2, 2, 1, -1, -1, -1, -1});
  const std::size_t a[] = {0, 3, 4};  // b(A) = 0
  const auto s = switch_root(b, a);
  EXPECT_EQ(s, BVector({-2, 2, 1, 1, 1, -1, -1}));
  EXPECT_EQ(orbit_key(s), orbit_key(BVector({2, 1, 1, 1, -1, -1, -2})));
  EXPECT_EQ(switch_root(s, a), b);
  EXPECT_EQ(switch_root(b, std::span<const std::size_t>{}), b);
  const std::size_t bad[] = {1, 2, 3, 4, 5, 6};
  EXPECT_THROW(switch_root(b, bad), DomainError);
}

TEST(Forms, GeometricPartner) {
  const BVector b3({1, 1, 1, 1, -1, -2, 0});
  const auto p = geometric_partner(b3, 0);
  EXPECT_EQ(p, BVector({1, -1, -1, -1, 1, 2, 0}));
  EXPECT_EQ(orbit_key(p), orbit_key(BVector({2, 1, 1, -1, -1, -1, 0})));
  EXPECT_EQ(geometric_partner(p, 0), b3);
  EXPECT_EQ(geometric_partner(BVector::basic(6, 0), 0), BVector::basic(6, 0));
  const auto q = geometric_partner(BVector({2, 2, 1, -1, -1, -1, -1}), 2);
  EXPECT_EQ(q, BVector({-2, -2, 1, 1, 1, 1, 1}));
  EXPECT_EQ(orbit_key(q), orbit_key(BVector({1, 1, 1, 1, 1, -2, -2})));
  EXPECT_THROW(geometric_partner(b3, 4), DomainError);
}

TEST(Forms, ZeroExtension) {
  EXPECT_EQ(zero_extension(BVector({1, 1, -1, 0, 0, 0})), BVector({1, 1, -1, 0, 0, 0, 0}));
  EXPECT_EQ(zero_extension(BVector::basic(5, 0)), BVector::basic(6, 0));
  EXPECT_EQ(zero_extension(BVector({1, 1, 1, -1, -1, 0})), BVector({1, 1, 1, -1, -1, 0, 0}));
}

TEST(Forms, PermutePairsMatchesPointRelabeling) {
  const std::vector<IntVec> pts{{0, 0}, {1, 0}, {0, 2}, {3, 1}};
  const auto d = oracle::dist_of_points(pts);
  const std::uint8_t perm[] = {2, 0, 3, 1};
  std::vector<IntVec> moved(4);
  for (std::size_t i = 0; i < 4; ++i) moved[perm[i]] = pts[i];
  EXPECT_EQ(permute_pairs(d, perm, 3), oracle::dist_of_points(moved));
}

TEST(Catalog, Sizes) {
  const std::size_t totals[] = {0, 0, 3, 12, 40, 210, 3773};
  for (std::size_t n = 2; n <= 6; ++n) EXPECT_EQ(facet_catalog(n).size(), totals[n]) << n;
  EXPECT_EQ(facet_catalog(2).orbits().size(), 1u);
  EXPECT_EQ(orbit_key(facet_catalog(2).orbits()[0].representative), orbit_key(BVector({1, 1, -1})));
  EXPECT_THROW(facet_catalog(1), DomainError);
  EXPECT_THROW(facet_catalog(7), DomainError);
}

TEST(Catalog, SevenPointOrbits) {
  const auto& cat = cached_catalog(6);
  ASSERT_EQ(cat.orbits().size(), 14u);
  std::set<BVector> all;
  std::size_t total = 0;
  for (const auto& o : cat.orbits()) {
    total += o.members.size();
    for (const auto& b : o.members) EXPECT_TRUE(all.insert(b).second) << "orbits overlap";
  }
  EXPECT_EQ(total, 3773u);
  EXPECT_EQ(cat.orbits()[0].representative, BVector({1, 1, -1, 0, 0, 0, 0}));

  // orbit size by brute force over all 5040 permutations
  std::vector<std::int64_t> c{1, 1, -1, 0, 0, 0, 0};
  std::sort(c.begin(), c.end());
  std::set<std::vector<std::int64_t>> images;
  std::vector<int> p(7);
  std::iota(p.begin(), p.end(), 0);
  do {
    std::vector<std::int64_t> img(7);
    for (int i = 0; i < 7; ++i) img[p[i]] = c[i];
    images.insert(img);
  } while (std::next_permutation(p.begin(), p.end()));
  EXPECT_EQ(images.size(), 105u);
  EXPECT_EQ(cat.orbits()[0].members.size(), 105u);
}

TEST(Catalog, FindAndFlatLayout) {
  const auto& cat = cached_catalog(6);
  for (std::size_t k = 0; k < cat.orbits().size(); ++k) {
    const auto r = cat.representative_index(k);
    EXPECT_EQ(cat.facets()[r], cat.orbits()[k].representative);
    EXPECT_EQ(cat.orbit_of(r), k);
    EXPECT_EQ(cat.find(cat.facets()[r]), r);
  }
  EXPECT_EQ(cat.find(BVector::basic(6, 0)), cat.size());
}

TEST(Catalog, NineClasses) {
  const auto classes = partner_classes(cached_catalog(6));
  EXPECT_EQ(classes.size(), 9u);
  std::size_t covered = 0;
  for (const auto& c : classes) covered += c.size();
  EXPECT_EQ(covered, 14u);
}

TEST(Catalog, Membership) {
  EXPECT_TRUE(is_hypermetric(DistVec::from_ints(2, {1, 1, 1})));
  EXPECT_FALSE(is_hypermetric(DistVec::from_ints(2, {1, 1, 3})));
  for (std::uint32_t m = 1; m < 128; ++m)
    EXPECT_TRUE(is_hypermetric(DistVec::from_ints(6, oracle::cut(m, 6))));
  EXPECT_TRUE(is_hypermetric(DistVec::from_ints(1, {0})));
  EXPECT_FALSE(is_hypermetric(DistVec::from_ints(1, {-1})));
}

TEST(Catalog, MembershipIntegerAndRationalAgree) {
  // halving d keeps membership but forces the rational path
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::uint32_t> mask(1, 127);
  std::uniform_int_distribution<int> pair(0, 20), nudge(-1, 1);
  std::size_t in = 0;
  for (int t = 0; t < 500; ++t) {
    // a few cuts with one entry nudged: lands on both sides of the boundary
    IntVec d(21, 0);
    for (int k = 0; k < 3; ++k) {
      const auto c = oracle::cut(mask(rng), 6);
      for (std::size_t i = 0; i < 21; ++i) d[i] += c[i];
    }
    d[pair(rng)] += nudge(rng);
    RatVec half;
    for (auto x : d) half.push_back(Rat(x, 2));
    for (auto& x : half) x.canonicalize();
    const bool a = is_hypermetric(DistVec::from_ints(6, d));
    EXPECT_EQ(a, is_hypermetric(DistVec(6, half)));
    EXPECT_EQ(a, std::all_of(cached_catalog(6).forms().begin(), cached_catalog(6).forms().end(),
                             [&](const IntVec& f) { return h_eval(f, d) <= 0; }));
    in += a;
  }
  EXPECT_GT(in, 25u);
  EXPECT_LT(in, 475u);
}

TEST(Catalog, RepresentativesAreFacets) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto& ctx = ConeContext::get(n);
    for (std::size_t k = 0; k < ctx.catalog().orbits().size(); ++k)
      EXPECT_TRUE(is_facet_by_rays(ctx, ctx.catalog().representative_index(k))) << n << " " << k;
  }
}

TEST(Catalog, ExportFormat) {
  const auto text = export_catalog(facet_catalog(2));
  EXPECT_EQ(text.rfind("# orbit 1 size 3\n", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
}
