#include "hypercone/lp.hpp"

#include <cmath>
#include <optional>

#include "hypercone/errors.hpp"
#include "hypercone/matrix.hpp"

namespace hypercone {

namespace {

void fill_lambda(LpResult& result, RatVec lambda, bool strict) {
  result.feasible = true;
  for (std::size_t j = 0; j < lambda.size(); ++j)
    if (lambda[j] > 0) result.support.push_back(j);
  if (strict) {
    RatVec compact;
    for (auto j : result.support) compact.push_back(lambda[j]);
    result.lambda = std::move(compact);
  } else {
    result.lambda = std::move(lambda);
  }
}

struct FloatRun {
  std::vector<std::size_t> basis;
  bool feasible = false;
  std::size_t pivots = 0;
};

// Same phase-one tableau in doubles. Only the final basis is used; the answer is then
// certified exactly.
std::optional<FloatRun> float_phase_one(const std::vector<RatVec>& generators,
                                        const RatVec& target, const std::vector<int>& sign) {
  constexpr double eps = 1e-9;
  const std::size_t m = target.size();
  const std::size_t n = generators.size();
  const std::size_t cols = n + m;
  std::vector<std::vector<double>> t(m, std::vector<double>(cols, 0.0));
  std::vector<double> rhs(m), reduced(cols, 0.0);
  double value = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign[i] * generators[j][i].get_d();
    t[i][n + i] = 1;
    rhs[i] = sign[i] * target[i].get_d();
    for (std::size_t j = 0; j < n; ++j) reduced[j] -= t[i][j];
    value += rhs[i];
  }
  FloatRun run;
  run.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) run.basis[i] = n + i;
  std::size_t stalled = 0;
  bool bland = false;
  const std::size_t limit = 50 * (cols + m);
  for (;;) {
    if (run.pivots > limit) return std::nullopt;
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (reduced[j] < -eps && (enter == cols || (!bland && reduced[j] < reduced[enter]))) {
        enter = j;
        if (bland) break;
      }
    if (enter == cols) break;
    std::size_t leave = m;
    double best = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= eps) continue;
      const double ratio = rhs[i] / t[i][enter];
      if (leave == m || ratio < best - eps ||
          (std::abs(ratio - best) <= eps && run.basis[i] < run.basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) return std::nullopt;
    stalled = best <= eps ? stalled + 1 : 0;
    if (stalled > 2 * m) bland = true;
    const double piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    rhs[leave] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const double f = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
      rhs[i] -= f * rhs[leave];
    }
    const double f = reduced[enter];
    for (std::size_t j = 0; j < cols; ++j) reduced[j] -= f * t[leave][j];
    value += f * rhs[leave];
    run.basis[leave] = enter;
    ++run.pivots;
  }
  run.feasible = value <= 1e-7;
  return run;
}

// Turns a floating-point basis into an exact answer, or nullopt if it does not certify.
std::optional<LpResult> certify_basis(const std::vector<RatVec>& generators, const RatVec& target,
                                      const std::vector<int>& sign, const FloatRun& run,
                                      bool strict) {
  const std::size_t m = target.size();
  const std::size_t n = generators.size();
  RatMatrix b(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t j = run.basis[k];
    for (std::size_t i = 0; i < m; ++i)
      b(i, k) = j < n ? Rat(sign[i] * generators[j][i]) : Rat(i == j - n ? 1 : 0);
  }
  RatVec rhs(m);
  for (std::size_t i = 0; i < m; ++i) rhs[i] = sign[i] * target[i];

  LpResult result;
  result.pivots = run.pivots;
  if (run.feasible) {
    auto x = solve(b, rhs);
    if (!x) return std::nullopt;
    RatVec lambda(n, Rat(0));
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t j = run.basis[k];
      if ((*x)[k] < 0 || (j >= n && (*x)[k] != 0)) return std::nullopt;
      if (j < n) lambda[j] += (*x)[k];
    }
    fill_lambda(result, std::move(lambda), strict);
    if (!verify_lp_result(generators, target, result)) return std::nullopt;
    return result;
  }
  RatVec cost(m);
  for (std::size_t k = 0; k < m; ++k) cost[k] = run.basis[k] >= n ? 1 : 0;
  auto y = solve(b.transpose(), cost);
  if (!y) return std::nullopt;
  result.farkas.resize(m);
  for (std::size_t i = 0; i < m; ++i) result.farkas[i] = sign[i] * (*y)[i];
  if (!verify_lp_result(generators, target, result)) return std::nullopt;
  return result;
}

LpResult exact_phase_one(const std::vector<RatVec>& generators, const RatVec& target,
                         const std::vector<int>& sign, bool strict) {
  const std::size_t m = target.size();
  const std::size_t n = generators.size();
  const std::size_t cols = n + m;
  std::vector<RatVec> t(m, RatVec(cols, Rat(0)));
  RatVec rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign[i] * generators[j][i];
    t[i][n + i] = 1;
    rhs[i] = sign[i] * target[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  // Phase-one objective: minimize the sum of artificial variables.
  RatVec reduced(cols, Rat(0));
  Rat value = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) reduced[j] -= t[i][j];
    value += rhs[i];
  }

  LpResult result;
  std::size_t stalled = 0;
  bool bland = false;
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (reduced[j] < 0 && (enter == cols || (!bland && reduced[j] < reduced[enter]))) {
        enter = j;
        if (bland) break;
      }
    if (enter == cols) break;

    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = rhs[i] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) throw SelfCheckError("lp_feasible: phase-one objective unbounded");
    // degenerate pivots can cycle under the largest-coefficient rule
    stalled = best == 0 ? stalled + 1 : 0;
    if (stalled > 2 * m) bland = true;

    const Rat piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    rhs[leave] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rat f = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j)
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
      rhs[i] -= f * rhs[leave];
    }
    const Rat f = reduced[enter];
    for (std::size_t j = 0; j < cols; ++j)
      if (t[leave][j] != 0) reduced[j] -= f * t[leave][j];
    value += f * rhs[leave];
    basis[leave] = enter;
    ++result.pivots;
  }

  if (value > 0) {
    result.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) result.farkas[i] = sign[i] * (1 - reduced[n + i]);
    return result;
  }

  RatVec lambda(n, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) lambda[basis[i]] = rhs[i];
  fill_lambda(result, std::move(lambda), strict);
  return result;
}

}  // namespace

LpResult lp_feasible_guided(const std::vector<RatVec>& generators, const RatVec& target,
                            bool strict) {
  const std::size_t m = target.size();
  for (const auto& g : generators)
    if (g.size() != m) throw DimensionError("lp_feasible: generator length mismatch");
  std::vector<int> sign(m, 1);
  for (std::size_t i = 0; i < m; ++i) sign[i] = target[i] < 0 ? -1 : 1;
  if (auto run = float_phase_one(generators, target, sign))
    if (auto res = certify_basis(generators, target, sign, *run, strict)) return *res;
  return exact_phase_one(generators, target, sign, strict);
}

LpResult lp_feasible(const std::vector<RatVec>& generators, const RatVec& target, bool strict) {
  const std::size_t m = target.size();
  for (const auto& g : generators)
    if (g.size() != m) throw DimensionError("lp_feasible: generator length mismatch");
  std::vector<int> sign(m, 1);
  for (std::size_t i = 0; i < m; ++i) sign[i] = target[i] < 0 ? -1 : 1;
  return exact_phase_one(generators, target, sign, strict);
}

bool verify_lp_result(const std::vector<RatVec>& generators, const RatVec& target,
                      const LpResult& result) {
  const std::size_t m = target.size();
  if (result.feasible) {
    const bool compact = result.lambda.size() == result.support.size();
    RatVec sum(m, Rat(0));
    for (std::size_t k = 0; k < result.support.size(); ++k) {
      const std::size_t j = result.support[k];
      const Rat& coef = compact ? result.lambda[k] : result.lambda[j];
      if (coef < 0) return false;
      for (std::size_t i = 0; i < m; ++i) sum[i] += coef * generators[j][i];
    }
    if (!compact)
      for (const auto& c : result.lambda)
        if (c < 0) return false;
    return sum == target;
  }
  if (result.farkas.size() != m) return false;
  for (const auto& g : generators)
    if (dot(result.farkas, g) > 0) return false;
  return dot(result.farkas, target) > 0;
}

}  // namespace hypercone
