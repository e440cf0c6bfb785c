#include "hypercone/schlafli.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>

#include "hypercone/catalog.hpp"
#include "hypercone/delaunay.hpp"
#include "hypercone/errors.hpp"
#include "hypercone/matrix.hpp"

namespace hypercone {

namespace {

constexpr int kV = SchlafliModel::kVertices;

// c_ij for i < j in 0..5, lexicographic
std::array<std::pair<int, int>, 15> c_pairs() {
  std::array<std::pair<int, int>, 15> out{};
  int k = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) out[k++] = {i, j};
  return out;
}

bool lines_meet(int u, int v) {
  if (u == v) return false;
  if (u > v) std::swap(u, v);
  static const auto cp = c_pairs();
  if (v < 6) return false;                    // a, a
  if (u < 6 && v < 12) return u != v - 6;     // a_i, b_j
  if (u < 6) {                                // a_i, c_jk
    const auto [j, k] = cp[v - 12];
    return u == j || u == k;
  }
  if (u < 12 && v < 12) return false;         // b, b
  if (u < 12) {                               // b_i, c_jk
    const auto [j, k] = cp[v - 12];
    return u - 6 == j || u - 6 == k;
  }
  const auto [i, j] = cp[u - 12];
  const auto [k, l] = cp[v - 12];
  return i != k && i != l && j != k && j != l;
}

void check(bool ok, const char* what) {
  if (!ok) throw SelfCheckError(std::string("schlafli: ") + what);
}

// 7x7 integer determinant by Bareiss elimination.
std::int64_t det7(std::array<std::array<std::int64_t, 7>, 7> m) {
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (int k = 0; k < 7; ++k) {
    if (m[k][k] == 0) {
      int p = k + 1;
      while (p < 7 && m[p][k] == 0) ++p;
      if (p == 7) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < 7; ++i) {
      for (int j = k + 1; j < 7; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[6][6];
}

std::uint32_t image_mask(std::uint32_t mask, const std::array<std::uint8_t, kV>& g) {
  std::uint32_t out = 0;
  while (mask) {
    const int v = std::countr_zero(mask);
    mask &= mask - 1;
    out |= 1U << g[v];
  }
  return out;
}

}  // namespace

int SchlafliModel::dist(int u, int v) const {
  if (u == v) return 0;
  return ((adjacency[u] >> v) & 1U) ? 2 : 4;
}

IntVec SchlafliModel::basis_distances(const std::array<int, 7>& basis) const {
  IntVec d;
  d.reserve(pair_count(6));
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) d.push_back(dist(basis[i], basis[j]));
  return d;
}

std::string SchlafliModel::vertex_name(int v) {
  if (v < 6) return "a" + std::to_string(v + 1);
  if (v < 12) return "b" + std::to_string(v - 5);
  const auto [i, j] = c_pairs()[v - 12];
  return "c" + std::to_string(i + 1) + std::to_string(j + 1);
}

std::optional<std::vector<BVector>> coords_in_basis(const SchlafliModel& model,
                                                    const std::array<int, 7>& basis) {
  const auto d = DistVec::from_ints(6, model.basis_distances(basis));
  const RatMatrix g = gram_from_distance(d);
  if (det(g) == 0) return std::nullopt;
  std::vector<BVector> out;
  out.reserve(kV);
  for (int v = 0; v < kV; ++v) {
    RatVec rhs(6);
    for (int j = 1; j < 7; ++j)
      rhs[j - 1] = make_rat(model.dist(v, basis[0]) + model.dist(basis[j], basis[0]) -
                                model.dist(v, basis[j]), 2);
    const auto x = solve(g, rhs);
    if (!x) return std::nullopt;
    std::vector<std::int64_t> b(7);
    std::int64_t s = 0;
    for (int k = 0; k < 6; ++k) {
      if ((*x)[k].get_den() != 1) return std::nullopt;
      b[k + 1] = (*x)[k].get_num().get_si();
      s += b[k + 1];
    }
    b[0] = 1 - s;
    out.emplace_back(std::move(b));
  }
  return out;
}

bool is_affine_basis(const SchlafliModel& model, const std::array<int, 7>& subset) {
  std::array<std::array<std::int64_t, 7>, 7> m{};
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c) m[r][c] = model.coords[subset[r]][c];
  const auto dt = det7(m);
  return dt == 1 || dt == -1;
}

SchlafliModel build_schlafli(std::span<const int> labeling) {
  std::vector<int> label(kV);
  std::iota(label.begin(), label.end(), 0);
  if (!labeling.empty()) {
    if (labeling.size() != static_cast<std::size_t>(kV))
      throw DimensionError("build_schlafli: labeling must have 27 entries");
    label = std::vector<int>(labeling.begin(), labeling.end());
    auto sorted = label;
    std::sort(sorted.begin(), sorted.end());
    for (int v = 0; v < kV; ++v)
      if (sorted[v] != v) throw DomainError("build_schlafli: labeling is not a permutation");
  }

  SchlafliModel m;
  for (int x = 0; x < kV; ++x)
    for (int y = x + 1; y < kV; ++y)
      if (!lines_meet(x, y)) {
        m.graph.add_edge(label[x], label[y]);
        m.adjacency[label[x]] |= 1U << label[y];
        m.adjacency[label[y]] |= 1U << label[x];
      }

  // strongly regular (27,16,10,8)
  for (int u = 0; u < kV; ++u) {
    check(std::popcount(m.adjacency[u]) == 16, "graph is not 16-regular");
    for (int v = u + 1; v < kV; ++v) {
      const int common = std::popcount(m.adjacency[u] & m.adjacency[v]);
      check(common == (m.dist(u, v) == 2 ? 10 : 8), "graph is not strongly regular");
    }
  }

  const auto cf = canonical_form(m.graph);
  m.aut_generators = cf.generators;
  check(group_order(m.aut_generators, kV) == 51840, "automorphism group order");
  for (const auto& p : enumerate_group(m.aut_generators, kV)) {
    std::array<std::uint8_t, kV> a{};
    for (int v = 0; v < kV; ++v) a[v] = static_cast<std::uint8_t>(p[v]);
    m.aut_group.push_back(a);
  }
  check(m.aut_group.size() == 51840, "automorphism group enumeration");

  // first lexicographic 7-subset in which every vertex has integral coordinates
  std::array<int, 7> s{0, 1, 2, 3, 4, 5, 6};
  bool found = false;
  while (!found) {
    if (auto c = coords_in_basis(m, s)) {
      m.base = s;
      m.coords = std::move(*c);
      found = true;
      break;
    }
    int i = 6;
    while (i >= 0 && s[i] == kV - 7 + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < 7; ++j) s[j] = s[j - 1] + 1;
  }
  check(found, "no integral affine basis");

  // the coordinates reproduce every distance
  const auto d = DistVec::from_ints(6, m.basis_distances(m.base));
  const RatMatrix g = gram_from_distance(d);
  for (int u = 0; u < kV; ++u)
    for (int v = u + 1; v < kV; ++v) {
      RatVec x(6);
      for (int k = 0; k < 6; ++k) x[k] = Rat(m.coords[u][k + 1] - m.coords[v][k + 1]);
      check(dot(x, g * x) == m.dist(u, v), "coordinates do not reproduce distances");
    }

  // the base distance vector is hypermetric with an empty sphere carrying exactly 27 points
  check(is_hypermetric(d), "base distance vector is not hypermetric");
  auto ann = annulator(d);
  auto mine = m.coords;
  std::sort(ann.begin(), ann.end());
  std::sort(mine.begin(), mine.end());
  check(ann == mine, "annulator differs from vertex set");
  return m;
}

const SchlafliModel& schlafli_model() {
  static const SchlafliModel model = build_schlafli();
  return model;
}

std::vector<BasisOrbit> affine_bases(const SchlafliModel& model) {
  // One bit per 27-bit vertex mask: set once the mask's Aut-orbit has been recorded.
  std::vector<std::uint64_t> seen((std::size_t{1} << kV) / 64, 0);
  auto test_and_set = [&](std::uint32_t mask) {
    auto& w = seen[mask >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (mask & 63);
    const bool was = w & bit;
    w |= bit;
    return was;
  };

  std::map<std::string, std::size_t> class_of;  // canonical induced-graph bytes
  std::vector<BasisOrbit> classes;

  std::array<int, 7> s{0, 1, 2, 3, 4, 5, 6};
  for (;;) {
    std::uint32_t mask = 0;
    for (int v : s) mask |= 1U << v;
    if (!((seen[mask >> 6] >> (mask & 63)) & 1U) && is_affine_basis(model, s)) {
      std::size_t orbit = 0;
      for (const auto& g : model.aut_group)
        if (!test_and_set(image_mask(mask, g))) ++orbit;

      ColoredGraph induced(7);
      for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
          if (model.dist(s[i], s[j]) == 2) induced.add_edge(i, j);
      const auto key = canonical_form(induced).bytes;
      auto [it, fresh] = class_of.emplace(key, classes.size());
      if (fresh) {
        BasisOrbit b;
        b.representative = s;
        b.dist = model.basis_distances(s);
        auto coords = coords_in_basis(model, s);
        check(coords.has_value(), "affine basis without integral coordinates");
        std::vector<std::pair<BVector, int>> tagged;
        for (int v = 0; v < kV; ++v) tagged.emplace_back((*coords)[v], v);
        std::sort(tagged.begin(), tagged.end());
        for (auto& [bv, v] : tagged) {
          b.ann.push_back(bv);
          b.ann_vertex.push_back(v);
        }
        classes.push_back(std::move(b));
      }
      auto& c = classes[it->second];
      if (c.aut_orbits++ == 0) c.orbit_size_under_aut = orbit;
      c.basis_count += orbit;
    }
    int i = 6;
    while (i >= 0 && s[i] == kV - 7 + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < 7; ++j) s[j] = s[j - 1] + 1;
  }
  return classes;
}

const std::vector<BasisOrbit>& cached_affine_bases() {
  static const std::vector<BasisOrbit> bases = affine_bases(schlafli_model());
  return bases;
}

RayInventory extreme_rays_hyp7(const SchlafliModel& model, const std::vector<BasisOrbit>& bases) {
  (void)model;
  RayInventory inv = cut_inventory(6);
  const std::size_t first = inv.orbit_count();
  for (std::size_t c = 0; c < bases.size(); ++c) {
    std::set<IntVec> seen;
    std::array<std::uint8_t, 7> p{0, 1, 2, 3, 4, 5, 6};
    std::size_t size = 0;
    do {
      IntVec d = permute_pairs(bases[c].dist, p, 6);
      if (!seen.insert(d).second) continue;
      Ray r;
      r.kind = RayKind::schlafli;
      r.orbit = first + c;
      r.dist = std::move(d);
      r.basis_class = c;
      r.perm = p;
      inv.rays.push_back(std::move(r));
      ++size;
    } while (std::next_permutation(p.begin(), p.end()));
    inv.orbit_sizes.push_back(size);
    inv.orbit_labels.push_back("schlafli class " + std::to_string(c + 1));
  }
  return inv;
}

const RayInventory& cached_hyp7_rays() {
  static const RayInventory inv = extreme_rays_hyp7(schlafli_model(), cached_affine_bases());
  return inv;
}

}  // namespace hypercone
