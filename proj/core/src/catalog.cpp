#include "hypercone/catalog.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "hypercone/errors.hpp"

namespace hypercone {

std::vector<BVector> permutation_orbit(const BVector& b) {
  auto c = b.coords();
  std::sort(c.begin(), c.end());
  std::vector<BVector> out;
  do {
    out.emplace_back(c);
  } while (std::next_permutation(c.begin(), c.end()));
  return out;
}

std::vector<BVector> facet_representatives(std::size_t n) {
  using V = std::vector<std::int64_t>;
  std::vector<V> reps;
  switch (n) {
    case 2:
      reps = {{-1, 1, 1}};
      break;
    case 3:
      reps = {{1, 1, -1, 0}};
      break;
    case 4:
      reps = {{1, 1, -1, 0, 0}, {1, 1, 1, -1, -1}};
      break;
    case 5:
      reps = {{1, 1, -1, 0, 0, 0}, {1, 1, 1, -1, -1, 0}, {1, 1, 1, 1, -1, -2}, {2, 1, 1, -1, -1, -1}};
      break;
    case 6:
      reps = {{1, 1, -1, 0, 0, 0, 0},   {1, 1, 1, -1, -1, 0, 0},   {1, 1, 1, 1, -1, -2, 0},
              {2, 1, 1, -1, -1, -1, 0}, {1, 1, 1, 1, -1, -1, -1},  {2, 1, 1, 1, -1, -1, -2},
              {2, 2, 1, -1, -1, -1, -1}, {1, 1, 1, 1, 1, -2, -2},  {3, 1, 1, -1, -1, -1, -1},
              {1, 1, 1, 1, 1, -1, -3},  {2, 2, 1, 1, -1, -1, -3},  {3, 1, 1, 1, -1, -2, -2},
              {3, 2, 1, -1, -1, -1, -2}, {2, 1, 1, 1, 1, -2, -3}};
      break;
    default:
      throw DomainError("facet catalog is available for n in 2..6, got " + std::to_string(n));
  }
  std::vector<BVector> out;
  for (auto& r : reps) out.emplace_back(std::move(r));
  return out;
}

FacetCatalog::FacetCatalog(std::size_t n, std::vector<BVector> representatives) : n_(n) {
  for (auto& rep : representatives) {
    if (rep.n() != n) throw DimensionError("facet representative has the wrong length");
    FacetOrbit orbit{rep, permutation_orbit(rep)};
    orbit_start_.push_back(flat_.size());
    // Keep the representative itself at the start of its orbit block.
    std::size_t at = std::find(orbit.members.begin(), orbit.members.end(), rep) - orbit.members.begin();
    std::vector<BVector> ordered;
    ordered.push_back(rep);
    for (std::size_t i = 0; i < orbit.members.size(); ++i)
      if (i != at) ordered.push_back(orbit.members[i]);
    for (auto& m : ordered) {
      orbit_index_.push_back(orbits_.size());
      forms_.push_back(h_form(m));
      flat_.push_back(m);
    }
    orbits_.push_back(std::move(orbit));
  }
  auto sorted = flat_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw SelfCheckError("facet orbits are not disjoint");
}

std::size_t FacetCatalog::find(const BVector& b) const {
  return std::find(flat_.begin(), flat_.end(), b) - flat_.begin();
}

FacetCatalog facet_catalog(std::size_t n) { return FacetCatalog(n, facet_representatives(n)); }

const FacetCatalog& cached_catalog(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<FacetCatalog>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FacetCatalog>(facet_catalog(n));
  return *slot;
}

bool is_hypermetric(const DistVec& d) {
  if (d.n() > 6) throw DomainError("hypermetric membership is implemented for n <= 6");
  if (d.n() == 0) throw DomainError("hypermetric membership needs n >= 1");
  if (d.n() == 1) return d.values()[0] >= 0;  // b0 * b1 <= 0 whenever b0 + b1 = 1
  const auto& cat = cached_catalog(d.n());
  // common case: integral d with small entries, exact in 64 bits
  bool small = true;
  std::vector<std::int64_t> z;
  for (const auto& x : d.values()) {
    small = small && x.get_den() == 1 && x.get_num().fits_slong_p() && abs(x.get_num()) <= (1L << 40);
    if (!small) break;
    z.push_back(x.get_num().get_si());
  }
  if (small) {
    for (const auto& form : cat.forms()) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < form.size(); ++k) s += form[k] * z[k];
      if (s > 0) return false;
    }
    return true;
  }
  for (const auto& form : cat.forms()) {
    Rat s = 0;
    for (std::size_t k = 0; k < form.size(); ++k)
      if (form[k] != 0) s += Rat(static_cast<long>(form[k])) * d.values()[k];
    if (s > 0) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> partner_classes(const FacetCatalog& catalog) {
  const std::size_t k = catalog.orbits().size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<std::vector<std::int64_t>, std::size_t> by_key;
  for (std::size_t o = 0; o < k; ++o) by_key[orbit_key(catalog.orbits()[o].representative)] = o;
  for (std::size_t o = 0; o < k; ++o) {
    const auto& rep = catalog.orbits()[o].representative;
    for (std::size_t i = 0; i < rep.size(); ++i) {
      if (rep[i] != 1) continue;
      auto it = by_key.find(orbit_key(geometric_partner(rep, i)));
      if (it == by_key.end()) throw SelfCheckError("geometric partner of a facet is not a facet");
      parent[root(it->second)] = root(o);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t o = 0; o < k; ++o) groups[root(o)].push_back(o);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [r, g] : groups) out.push_back(std::move(g));
  std::sort(out.begin(), out.end());
  return out;
}

std::string export_catalog(const FacetCatalog& catalog) {
  std::ostringstream os;
  for (std::size_t k = 0; k < catalog.orbits().size(); ++k) {
    const auto begin = catalog.representative_index(k);
    const auto size = catalog.orbits()[k].members.size();
    os << "# orbit " << k + 1 << " size " << size << '\n';
    for (std::size_t f = begin; f < begin + size; ++f) {
      const auto& c = catalog.facets()[f].coords();
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace hypercone
