#include "hypercone/rays.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <sstream>

#include "hypercone/errors.hpp"
#include "hypercone/forms.hpp"

namespace hypercone {

std::size_t RayInventory::count(RayKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(rays.begin(), rays.end(), [&](const Ray& r) { return r.kind == kind; }));
}

std::string RayInventory::to_jsonl() const {
  std::ostringstream os;
  for (std::size_t id = 0; id < rays.size(); ++id) {
    const auto& r = rays[id];
    os << "{\"id\":" << id << ",\"kind\":\"" << (r.kind == RayKind::cut ? "cut" : "schlafli")
       << "\",\"orbit\":" << r.orbit << ",\"dist\":[";
    for (std::size_t k = 0; k < r.dist.size(); ++k) os << (k ? "," : "") << '"' << r.dist[k] << "/1\"";
    os << "]}\n";
  }
  return os.str();
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string RayInventory::digest() const { return fnv1a_hex(to_jsonl()); }

RayInventory cut_inventory(std::size_t n) {
  if (n < 1 || n > 30) throw DomainError("cut_inventory: unsupported n");
  RayInventory inv;
  inv.n = n;
  const std::size_t points = n + 1;
  const std::size_t orbits = points / 2;
  for (std::size_t k = 1; k <= orbits; ++k) {
    inv.orbit_labels.push_back("cut |S|=" + std::to_string(k));
    std::size_t size = 0;
    // canonical sides exclude 0, so they are subsets of {1..n}
    for (std::uint32_t mask = 2; mask < (1U << points); mask += 2) {
      const auto s = static_cast<std::size_t>(std::popcount(mask));
      if (std::min(s, points - s) != k) continue;
      Ray r;
      r.kind = RayKind::cut;
      r.orbit = k - 1;
      r.cut_mask = mask;
      r.dist = cut_ints(mask, n);
      inv.rays.push_back(std::move(r));
      ++size;
    }
    inv.orbit_sizes.push_back(size);
  }
  return inv;
}

}  // namespace hypercone
