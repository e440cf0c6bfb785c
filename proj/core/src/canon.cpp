#include "hypercone/canon.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_set>

#include "hypercone/errors.hpp"

namespace hypercone {

ColoredGraph::ColoredGraph(std::size_t n)
    : adj_(n), rows_(n, std::vector<std::uint64_t>((n + 63) / 64, 0)), colors_(n, 0) {}

void ColoredGraph::add_edge(int u, int v) {
  if (u == v) throw DomainError("ColoredGraph: loops are not allowed");
  if (adjacent(u, v)) return;
  adj_.at(u).push_back(v);
  adj_.at(v).push_back(u);
  rows_[u][v / 64] |= std::uint64_t{1} << (v % 64);
  rows_[v][u / 64] |= std::uint64_t{1} << (u % 64);
}

bool ColoredGraph::adjacent(int u, int v) const { return (rows_.at(u)[v / 64] >> (v % 64)) & 1U; }

std::size_t ColoredGraph::edge_count() const {
  std::size_t e = 0;
  for (const auto& a : adj_) e += a.size();
  return e / 2;
}

ColoredGraph relabel(const ColoredGraph& g, std::span<const int> perm) {
  ColoredGraph out(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    out.set_color(perm[v], g.color(static_cast<int>(v)));
    for (int u : g.neighbors(static_cast<int>(v)))
      if (static_cast<int>(v) < u) out.add_edge(perm[v], perm[u]);
  }
  return out;
}

bool is_automorphism(const ColoredGraph& g, std::span<const int> perm) {
  const std::size_t n = g.size();
  if (perm.size() != n) return false;
  for (std::size_t v = 0; v < n; ++v) {
    if (g.color(static_cast<int>(v)) != g.color(perm[v])) return false;
    for (int u : g.neighbors(static_cast<int>(v)))
      if (!g.adjacent(perm[v], perm[u])) return false;
  }
  return true;
}

namespace {

// Ordered partition stored as contiguous cells of `lab`; a cell is named by its start.
struct Partition {
  std::vector<int> lab;
  std::vector<int> cell_of;   // vertex -> start of its cell
  std::vector<int> cell_end;  // start -> one past its end

  bool discrete() const {
    for (std::size_t s = 0; s < lab.size(); s = cell_end[s])
      if (cell_end[s] - static_cast<int>(s) > 1) return false;
    return true;
  }
};

class Refiner {
 public:
  explicit Refiner(const ColoredGraph& g) : g_(g), cnt_(g.size(), 0), inq_(g.size(), false) {}

  void refine(Partition& p, std::deque<int> queue) {
    for (int s : queue) inq_[s] = true;
    std::vector<int> touched;
    std::vector<int> cells;
    while (!queue.empty()) {
      const int w = queue.front();
      queue.pop_front();
      inq_[w] = false;
      const int w_end = p.cell_end[w];
      touched.clear();
      for (int pos = w; pos < w_end; ++pos)
        for (int u : g_.neighbors(p.lab[pos]))
          if (cnt_[u]++ == 0) touched.push_back(u);
      cells.clear();
      for (int u : touched) cells.push_back(p.cell_of[u]);
      std::sort(cells.begin(), cells.end());
      cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
      for (int s : cells) split(p, s, queue);
      for (int u : touched) cnt_[u] = 0;
    }
  }

 private:
  void split(Partition& p, int s, std::deque<int>& queue) {
    const int e = p.cell_end[s];
    if (e - s == 1) return;
    auto first = p.lab.begin() + s;
    auto last = p.lab.begin() + e;
    std::sort(first, last, [&](int a, int b) { return cnt_[a] < cnt_[b]; });
    if (cnt_[p.lab[s]] == cnt_[p.lab[e - 1]]) return;
    std::vector<int> starts;
    starts.push_back(s);
    for (int pos = s + 1; pos < e; ++pos)
      if (cnt_[p.lab[pos]] != cnt_[p.lab[pos - 1]]) starts.push_back(pos);
    starts.push_back(e);
    int largest = 0;
    for (std::size_t k = 0; k + 1 < starts.size(); ++k) {
      const int a = starts[k], b = starts[k + 1];
      p.cell_end[a] = b;
      for (int pos = a; pos < b; ++pos) p.cell_of[p.lab[pos]] = a;
      if (b - a > starts[largest + 1] - starts[largest]) largest = static_cast<int>(k);
    }
    const bool was_queued = inq_[s];
    for (std::size_t k = 0; k + 1 < starts.size(); ++k) {
      const int a = starts[k];
      if (inq_[a]) continue;
      if (!was_queued && static_cast<int>(k) == largest) continue;
      inq_[a] = true;
      queue.push_back(a);
    }
  }

  const ColoredGraph& g_;
  std::vector<int> cnt_;
  std::vector<bool> inq_;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

class Searcher {
 public:
  explicit Searcher(const ColoredGraph& g) : g_(g), n_(g.size()), refiner_(g) {}

  CanonicalForm run() {
    Partition p;
    p.lab.resize(n_);
    p.cell_of.resize(n_);
    p.cell_end.assign(n_ + 1, 0);
    std::iota(p.lab.begin(), p.lab.end(), 0);
    std::stable_sort(p.lab.begin(), p.lab.end(),
                     [&](int a, int b) { return g_.color(a) < g_.color(b); });
    std::deque<int> queue;
    for (std::size_t pos = 0; pos < n_;) {
      std::size_t end = pos;
      while (end < n_ && g_.color(p.lab[end]) == g_.color(p.lab[pos])) ++end;
      p.cell_end[pos] = static_cast<int>(end);
      for (std::size_t k = pos; k < end; ++k) p.cell_of[p.lab[k]] = static_cast<int>(pos);
      queue.push_back(static_cast<int>(pos));
      pos = end;
    }
    refiner_.refine(p, std::move(queue));
    std::vector<int> seq;
    search(p, seq);

    CanonicalForm out;
    out.labeling = best_lab_;
    out.generators = std::move(gens_);
    out.leaves = leaves_;
    out.bytes = header(best_lab_) + best_code_;
    return out;
  }

 private:
  static constexpr int kNoJump = INT_MAX;

  std::string header(const std::vector<int>& lab) const {
    std::string h;
    auto put = [&](std::uint32_t x) {
      for (int k = 0; k < 4; ++k) h.push_back(static_cast<char>((x >> (8 * k)) & 0xFF));
    };
    put(static_cast<std::uint32_t>(n_));
    for (int v : lab) put(static_cast<std::uint32_t>(g_.color(v)));
    return h;
  }

  std::string code(const std::vector<int>& lab) const {
    std::string c((n_ * n_ + 7) / 8, '\0');
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j, ++bit)
        if (g_.adjacent(lab[i], lab[j])) c[bit / 8] = static_cast<char>(c[bit / 8] | (1 << (bit % 8)));
    c.resize((bit + 7) / 8);
    return c;
  }

  static std::size_t common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return k;
  }

  void record_automorphism(const std::vector<int>& from, const std::vector<int>& to) {
    Perm gamma(n_);
    for (std::size_t i = 0; i < n_; ++i) gamma[from[i]] = to[i];
    bool identity = true;
    for (std::size_t v = 0; v < n_; ++v)
      if (gamma[v] != static_cast<int>(v)) identity = false;
    if (!identity) gens_.push_back(std::move(gamma));
  }

  int leaf(const Partition& p, const std::vector<int>& seq) {
    ++leaves_;
    std::string c = code(p.lab);
    if (!have_leaf_) {
      have_leaf_ = true;
      first_lab_ = best_lab_ = p.lab;
      first_seq_ = best_seq_ = seq;
      first_code_ = best_code_ = c;
      return kNoJump;
    }
    if (c == first_code_) {
      record_automorphism(first_lab_, p.lab);
      return static_cast<int>(common_prefix(seq, first_seq_));
    }
    if (c == best_code_) {
      record_automorphism(best_lab_, p.lab);
      return static_cast<int>(common_prefix(seq, best_seq_));
    }
    if (c < best_code_) {
      best_code_ = std::move(c);
      best_lab_ = p.lab;
      best_seq_ = seq;
    }
    return kNoJump;
  }

  int search(const Partition& p, std::vector<int>& seq) {
    if (p.discrete()) return leaf(p, seq);
    const int depth = static_cast<int>(seq.size());

    // Target cell: first smallest non-singleton cell.
    int target = -1;
    int target_size = INT_MAX;
    for (int s = 0; s < static_cast<int>(n_); s = p.cell_end[s]) {
      const int size = p.cell_end[s] - s;
      if (size > 1 && size < target_size) {
        target = s;
        target_size = size;
      }
    }
    std::vector<int> children(p.lab.begin() + target, p.lab.begin() + p.cell_end[target]);
    std::sort(children.begin(), children.end());

    std::vector<int> explored;
    for (int v : children) {
      if (!explored.empty() && pruned(v, explored, seq)) continue;
      explored.push_back(v);

      Partition child = p;
      const int s = target;
      const int e = p.cell_end[s];
      auto it = std::find(child.lab.begin() + s, child.lab.begin() + e, v);
      std::iter_swap(child.lab.begin() + s, it);
      child.cell_end[s] = s + 1;
      child.cell_end[s + 1] = e;
      for (int pos = s + 1; pos < e; ++pos) child.cell_of[child.lab[pos]] = s + 1;
      child.cell_of[v] = s;
      refiner_.refine(child, std::deque<int>{s});

      seq.push_back(v);
      const int jump = search(child, seq);
      seq.pop_back();
      if (jump < depth) return jump;
    }
    return kNoJump;
  }

  // v is skipped when some automorphism fixing `seq` pointwise maps an explored child to it.
  bool pruned(int v, const std::vector<int>& explored, const std::vector<int>& seq) {
    UnionFind uf(n_);
    for (const auto& gamma : gens_) {
      bool fixes = true;
      for (int x : seq)
        if (gamma[x] != x) {
          fixes = false;
          break;
        }
      if (!fixes) continue;
      for (std::size_t x = 0; x < n_; ++x) uf.unite(static_cast<int>(x), gamma[x]);
    }
    const int r = uf.find(v);
    for (int u : explored)
      if (uf.find(u) == r) return true;
    return false;
  }

  const ColoredGraph& g_;
  std::size_t n_;
  Refiner refiner_;
  bool have_leaf_ = false;
  std::vector<int> first_lab_, best_lab_, first_seq_, best_seq_;
  std::string first_code_, best_code_;
  std::vector<Perm> gens_;
  std::size_t leaves_ = 0;
};

Perm compose(const Perm& a, const Perm& b) {  // a after b
  Perm c(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) c[x] = a[b[x]];
  return c;
}

Perm inverse(const Perm& a) {
  Perm c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[a[x]] = static_cast<int>(x);
  return c;
}

bool is_identity(const Perm& a) {
  for (std::size_t x = 0; x < a.size(); ++x)
    if (a[x] != static_cast<int>(x)) return false;
  return true;
}

// Deterministic Schreier-Sims with a restart-on-change closure check.
class StabilizerChain {
 public:
  explicit StabilizerChain(std::size_t n) : n_(n) {}

  void build(const std::vector<Perm>& generators) {
    for (const auto& g : generators)
      if (!is_identity(g)) add_strong(g);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < base_.size() && !changed; ++i) {
        const auto level_gens = gens_fixing(i);
        const auto& trans = transversal_[i];
        for (const auto& [b, ub] : trans) {
          for (const auto& s : level_gens) {
            const int sb = s[b];
            const Perm h = compose(inverse(trans.at(sb)), compose(s, ub));
            Perm residue = sift(h);
            if (!is_identity(residue)) {
              add_strong(residue);
              changed = true;
              break;
            }
          }
          if (changed) break;
        }
      }
    }
  }

  Int order() const {
    Int o = 1;
    for (const auto& t : transversal_) o *= static_cast<unsigned long>(t.size());
    return o;
  }

 private:
  struct Level {
    std::vector<std::pair<int, Perm>> list;
    std::size_t size() const { return list.size(); }
    std::vector<std::pair<int, Perm>>::const_iterator begin() const { return list.begin(); }
    std::vector<std::pair<int, Perm>>::const_iterator end() const { return list.end(); }
    const Perm& at(int b) const {
      for (const auto& [p, u] : list)
        if (p == b) return u;
      throw SelfCheckError("transversal lookup failed");
    }
  };

  std::vector<Perm> gens_fixing(std::size_t level) const {
    std::vector<Perm> out;
    for (const auto& g : strong_) {
      bool ok = true;
      for (std::size_t j = 0; j < level; ++j)
        if (g[base_[j]] != base_[j]) ok = false;
      if (ok) out.push_back(g);
    }
    return out;
  }

  Perm sift(Perm g) const {
    for (std::size_t i = 0; i < base_.size(); ++i) {
      const int b = g[base_[i]];
      const Perm* u = nullptr;
      for (const auto& [p, up] : transversal_[i].list)
        if (p == b) u = &up;
      if (!u) return g;
      g = compose(inverse(*u), g);
    }
    return g;
  }

  void add_strong(const Perm& g) {
    strong_.push_back(g);
    bool moves_base = false;
    for (int b : base_)
      if (g[b] != b) moves_base = true;
    if (!moves_base) {
      for (std::size_t x = 0; x < n_; ++x)
        if (g[x] != static_cast<int>(x)) {
          base_.push_back(static_cast<int>(x));
          break;
        }
    }
    recompute();
  }

  void recompute() {
    transversal_.clear();
    for (std::size_t i = 0; i < base_.size(); ++i) {
      const auto gens = gens_fixing(i);
      Level lvl;
      Perm id(n_);
      std::iota(id.begin(), id.end(), 0);
      lvl.list.emplace_back(base_[i], id);
      std::vector<bool> seen(n_, false);
      seen[base_[i]] = true;
      for (std::size_t k = 0; k < lvl.list.size(); ++k) {
        for (const auto& s : gens) {
          const int img = s[lvl.list[k].first];
          if (seen[img]) continue;
          seen[img] = true;
          lvl.list.emplace_back(img, compose(s, lvl.list[k].second));
        }
      }
      transversal_.push_back(std::move(lvl));
    }
  }


  std::size_t n_;
  std::vector<int> base_;
  std::vector<Perm> strong_;
  std::vector<Level> transversal_;
};

}  // namespace

CanonicalForm canonical_form(const ColoredGraph& g) { return Searcher(g).run(); }

Int group_order(const std::vector<Perm>& generators, std::size_t n) {
  for (const auto& g : generators)
    if (g.size() != n) throw DimensionError("group_order: permutation length mismatch");
  StabilizerChain chain(n);
  chain.build(generators);
  return chain.order();
}

std::vector<Perm> enumerate_group(const std::vector<Perm>& generators, std::size_t n,
                                  std::size_t limit) {
  struct PermHash {
    std::size_t operator()(const Perm& p) const {
      std::size_t h = 1469598103934665603ULL;
      for (int x : p) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
      return h;
    }
  };
  Perm id(n);
  std::iota(id.begin(), id.end(), 0);
  std::unordered_set<Perm, PermHash> seen{id};
  std::vector<Perm> out{id};
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (const auto& s : generators) {
      Perm next = compose(s, out[k]);
      if (seen.insert(next).second) {
        out.push_back(std::move(next));
        if (out.size() > limit) throw DomainError("enumerate_group: group larger than limit");
      }
    }
  }
  return out;
}

}  // namespace hypercone
