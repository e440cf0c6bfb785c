#include <gtest/gtest.h>

#include <random>

#include "hypercone/catalog.hpp"
#include "hypercone/errors.hpp"
#include "hypercone/forms.hpp"
#include "hypercone/lp.hpp"
#include "hypercone/matrix.hpp"
#include "hypercone/rank_accumulator.hpp"
#include "hypercone/rational.hpp"
#include "oracles.hpp"

using namespace hypercone;

namespace {

RatMatrix random_matrix(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> coef(lo, hi);
  std::uniform_int_distribution<int> den(1, 4);
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = make_rat(coef(rng), den(rng));
  return m;
}

RatVec h_rat(std::vector<std::int64_t> b) { return to_rat(h_form(BVector(std::move(b)))); }

}  // namespace

TEST(Rational, MakeRatIsCanonical) {
  const Rat r = make_rat(2, 4);
  EXPECT_EQ(r.get_num(), 1);
  EXPECT_EQ(r.get_den(), 2);
  EXPECT_EQ(make_rat(3, -6), make_rat(-1, 2));
}

TEST(Rational, TextRoundTrip) {
  EXPECT_EQ(to_string(make_rat(5)), "5/1");
  EXPECT_EQ(to_string(make_rat(-3, 9)), "-1/3");
  EXPECT_EQ(parse_rat("-6/4"), make_rat(-3, 2));
  EXPECT_EQ(parse_rat("+7"), make_rat(7));
  EXPECT_THROW(parse_rat("1/0"), DomainError);
  EXPECT_THROW(parse_rat("x"), DomainError);
  EXPECT_THROW(parse_rat(""), DomainError);
}

TEST(Matrix, DeterminantExamples) {
  EXPECT_EQ(det(RatMatrix::identity(3)), 1);
  RatMatrix d(3, 3);
  for (int i = 0; i < 3; ++i) d(i, i) = 2;
  EXPECT_EQ(det(d), 8);
  auto eq = RatMatrix::from_int_rows({{1, 2, 3}, {1, 2, 3}, {0, 1, 5}});
  EXPECT_EQ(det(eq), 0);
  EXPECT_THROW(det(RatMatrix(2, 3)), DimensionError);
}

TEST(Matrix, DeterminantIsMultiplicative) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    auto a = random_matrix(rng, n, -4, 4);
    auto b = random_matrix(rng, n, -4, 4);
    EXPECT_EQ(det(a * b), det(a) * det(b));
  }
}

TEST(Matrix, DeterminantMatchesNaiveElimination) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    auto a = random_matrix(rng, n, -3, 3);
    oracle::RatRows rows(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = a(i, j);
    EXPECT_EQ(det(a), oracle::determinant(rows));
  }
}

TEST(Matrix, IntegerDeterminant) {
  EXPECT_EQ(det(std::vector<IntVec>{{2, 1}, {1, 1}}), 1);
  EXPECT_EQ(det(std::vector<IntVec>{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}), 2);
}

TEST(Matrix, RankExamples) {
  EXPECT_EQ(rank(RatMatrix(3, 4)), 0u);
  EXPECT_EQ(rank(RatMatrix::identity(5)), 5u);
  EXPECT_EQ(rank(RatMatrix::from_int_rows({{1, 2}, {2, 4}, {0, 0}})), 1u);
}

TEST(Matrix, SolveExamples) {
  auto x = solve(RatMatrix::identity(3), RatVec{1, 2, 3});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (RatVec{1, 2, 3}));
  EXPECT_FALSE(solve(RatMatrix::from_int_rows({{1, 1}, {1, 1}}), RatVec{1, 2}));

  // circumcenter of the unit 3-cube basis: Gram = identity, G c = diag(G) / 2
  auto c = solve(RatMatrix::identity(3), RatVec{make_rat(1, 2), make_rat(1, 2), make_rat(1, 2)});
  ASSERT_TRUE(c);
  for (const auto& v : *c) EXPECT_EQ(v, make_rat(1, 2));
}

TEST(Matrix, SolveReproducesRhs) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + trial % 5, cols = 1 + (trial / 5) % 5;
    RatMatrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a(i, j) = coef(rng);
    RatVec x0(cols);
    for (auto& v : x0) v = make_rat(coef(rng), 3);
    const RatVec rhs = a * x0;  // consistent by construction
    auto x = solve(a, rhs);
    ASSERT_TRUE(x);
    EXPECT_EQ(a * *x, rhs);
  }
}

TEST(Matrix, KernelExamples) {
  EXPECT_TRUE(kernel(RatMatrix::identity(4)).empty());
  const auto a = RatMatrix::from_int_rows({{1, 1, 1}});
  const auto k = kernel(a);
  EXPECT_EQ(k.size(), 2u);
  for (const auto& v : k) EXPECT_EQ(a * v, RatVec{0});

  // b(S) = 0 for all 63 cuts of 7 points and sum b = 0 forces b = 0
  std::vector<IntVec> rows{IntVec(7, 1)};
  for (std::uint32_t m = 1; m < 64; ++m) {
    IntVec row(7, 0);
    for (int i = 0; i < 6; ++i) row[i + 1] = (m >> i) & 1U;
    rows.push_back(row);
  }
  EXPECT_TRUE(kernel(RatMatrix::from_int_rows(rows)).empty());
}

TEST(RankAccumulator, MatchesMatrixRank) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + trial % 8, count = 1 + (trial / 8) % 10;
    std::vector<IntVec> vs;
    for (std::size_t k = 0; k < count; ++k) {
      IntVec v(dim);
      for (auto& x : v) x = coef(rng);
      // repeat combinations now and then so ranks are not always full
      if (k >= 2 && trial % 3 == 0)
        for (std::size_t i = 0; i < dim; ++i) v[i] = vs[k - 1][i] - 2 * vs[k - 2][i];
      vs.push_back(v);
    }
    EXPECT_EQ(integer_rank(vs, dim), rank(RatMatrix::from_int_rows(vs)));
  }
}

TEST(RankAccumulator, WidensOnOverflow) {
  const std::int64_t big = std::int64_t{1} << 40;
  std::vector<IntVec> vs{{big, big + 1, 3, 7}, {big + 5, big - 3, 11, 2}, {3, big, big, 1},
                         {big - 1, 17, big + 9, big}};
  RankAccumulator acc(4);
  for (const auto& v : vs) acc.add(v);
  EXPECT_EQ(acc.rank(), rank(RatMatrix::from_int_rows(vs)));
}

TEST(RankAccumulator, BasicFormsAreZero) {
  RankAccumulator acc(21);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_FALSE(acc.add(h_form(BVector::basic(6, i))));
  EXPECT_TRUE(acc.add(h_form(BVector({1, 1, -1, 0, 0, 0, 0}))));
  EXPECT_EQ(acc.rank(), 1u);
}

TEST(Lp, ThreeTriangleDecomposition) {
  const std::vector<RatVec> gens{h_rat({-1, 1, 1, 0}), h_rat({-1, 0, 1, 1}), h_rat({-1, 1, 0, 1})};
  const auto target = h_rat({-2, 1, 1, 1});
  auto res = lp_feasible(gens, target);
  ASSERT_TRUE(res.feasible);
  EXPECT_EQ(res.lambda, (RatVec{1, 1, 1}));
  EXPECT_TRUE(verify_lp_result(gens, target, res));
}

TEST(Lp, TargetIsAGenerator) {
  const std::vector<RatVec> gens{h_rat({-1, 1, 1, 0}), h_rat({-1, 0, 1, 1}), h_rat({-1, 1, 0, 1})};
  auto res = lp_feasible(gens, gens[1]);
  ASSERT_TRUE(res.feasible);
  EXPECT_EQ(res.lambda, (RatVec{0, 1, 0}));
  auto strict = lp_feasible(gens, gens[1], true);
  EXPECT_EQ(strict.support, std::vector<std::size_t>{1});
  EXPECT_EQ(strict.lambda, RatVec{1});
}

TEST(Lp, InfeasibleReturnsFarkasVector) {
  const std::vector<RatVec> gens{{1, 0}, {1, 1}};
  const RatVec target{0, -1};
  auto res = lp_feasible(gens, target);
  EXPECT_FALSE(res.feasible);
  EXPECT_TRUE(verify_lp_result(gens, target, res));
  EXPECT_THROW(lp_feasible({{1, 0, 0}}, target), DimensionError);
}

TEST(Lp, FacetFormIsNotACombinationOfOtherFacets) {
  const auto& cat = cached_catalog(6);
  const BVector b1({1, 1, -1, 0, 0, 0, 0});
  const std::size_t self = cat.find(b1);
  ASSERT_LT(self, cat.size());
  std::vector<RatVec> gens;
  for (std::size_t h = 0; h < cat.size(); ++h)
    if (h != self) gens.push_back(to_rat(cat.forms()[h]));
  const auto target = to_rat(h_form(b1));
  auto res = lp_feasible_guided(gens, target);
  EXPECT_FALSE(res.feasible);
  EXPECT_TRUE(verify_lp_result(gens, target, res));
}

TEST(Lp, GuidedAgreesWithExact) {
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = 2 + trial % 4, n = 1 + (trial / 4) % 7;
    std::vector<RatVec> gens(n, RatVec(m));
    for (auto& g : gens)
      for (auto& x : g) x = make_rat(coef(rng), 1 + trial % 3);
    RatVec target(m, Rat(0));
    if (trial % 2 == 0) {
      for (auto& g : gens) {  // inside the cone
        const Rat w = make_rat(std::abs(coef(rng)), 2);
        for (std::size_t i = 0; i < m; ++i) target[i] += w * g[i];
      }
    } else {
      for (auto& x : target) x = coef(rng);
    }
    const auto exact = lp_feasible(gens, target);
    const auto guided = lp_feasible_guided(gens, target);
    EXPECT_EQ(exact.feasible, guided.feasible);
    EXPECT_TRUE(verify_lp_result(gens, target, exact));
    EXPECT_TRUE(verify_lp_result(gens, target, guided));
  }
}
