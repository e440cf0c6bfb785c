#include "pipeline.hpp"

#include <zlib.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <thread>

#include "hypercone/equiv.hpp"
#include "hypercone/errors.hpp"

namespace hypercone::app {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kGzipThreshold = 1 << 20;

template <class F>
void run_parallel(std::size_t count, std::size_t threads, F&& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

json ann_json(const std::vector<BVector>& ann) {
  json a = json::array();
  for (const auto& b : ann) a.push_back(b.coords());
  return a;
}

json record_json(const TypeRecord& r) {
  json j;
  j["corank"] = r.corank;
  j["rank"] = r.rank;
  j["facet_bits_hex"] = r.facet_bits.to_hex();
  j["degenerate"] = false;
  j["ann"] = ann_json(r.ann);
  j["cert_b64"] = r.cert.encode();
  j["cut_only"] = r.cut_only;
  j["members"] = r.members;
  j["maximal"] = r.maximal ? json(*r.maximal) : json(nullptr);
  return j;
}

TypeRecord record_from_json(const json& j, std::size_t n, std::size_t facets) {
  TypeRecord r;
  r.corank = j.at("corank").get<std::size_t>();
  r.rank = j.at("rank").get<std::size_t>();
  r.facet_bits = Bits::from_hex(facets, j.at("facet_bits_hex").get<std::string>());
  if (r.facet_bits.size() != facets) throw SelfCheckError("checkpoint: malformed facet bits");
  for (const auto& b : j.at("ann")) r.ann.emplace_back(b.get<std::vector<std::int64_t>>());
  auto cert = Certificate::decode(j.at("cert_b64").get<std::string>());
  if (!cert) throw SelfCheckError("checkpoint: malformed certificate");
  r.cert = std::move(*cert);
  r.cut_only = j.at("cut_only").get<bool>();
  r.members = j.at("members").get<std::size_t>();
  if (!j.at("maximal").is_null()) r.maximal = j.at("maximal").get<bool>();
  r.vertex_count = r.ann.size();
  r.extreme = r.rank == 1;
  if (r.rank + r.corank != pair_count(n)) throw SelfCheckError("checkpoint: rank + corank mismatch");
  return r;
}

std::string read_any(const std::filesystem::path& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (!f) throw SelfCheckError("checkpoint: cannot open " + path.string());
  std::string out;
  char buf[1 << 15];
  int got;
  while ((got = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(got));
  gzclose(f);
  if (got < 0) throw SelfCheckError("checkpoint: read error in " + path.string());
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text, bool gzip) {
  const auto tmp = path.string() + ".tmp";
  if (gzip) {
    gzFile f = gzopen(tmp.c_str(), "wb");
    if (!f) throw DomainError("checkpoint: cannot write " + tmp);
    if (!text.empty() && gzwrite(f, text.data(), static_cast<unsigned>(text.size())) == 0)
      throw DomainError("checkpoint: gzip write failed");
    gzclose(f);
  } else {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    if (!out) throw DomainError("checkpoint: cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void RunConfig::validate() const {
  if (n < 2 || n > 6) throw DomainError("n must be in 2..6");
  if (max_corank > pair_count(n) - 1) throw DomainError("max corank must be at most N - 1");
  if (threads < 1) throw DomainError("threads must be at least 1");
  if (verify_level != "fast" && verify_level != "full")
    throw DomainError("verify level must be fast or full");
}

const std::vector<std::size_t>& published_hyp7_counts() {
  static const std::vector<std::size_t> c{0,   1,   1,   2,   4,    8,    21,  52,
                                          108, 218, 417, 686, 984,  1145, 1092, 814,
                                          500, 233, 95,  30,  9,    1};
  return c;
}

const std::vector<std::size_t>& published_cut7_counts() {
  static const std::vector<std::size_t> c{0,  0,   0,   0,   0,   0,   3,  13, 35, 83, 183,
                                          325, 481, 527, 434, 241, 95, 28, 8,  2,  1,  0};
  return c;
}

namespace checkpoint {

std::string level_file(std::size_t corank) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "level_%02zu.jsonl", corank);
  return buf;
}

void write_level(const std::filesystem::path& dir, std::size_t n,
                 const std::vector<TypeRecord>& records) {
  (void)n;
  if (records.empty()) return;
  std::ostringstream os;
  for (const auto& r : records) os << record_json(r).dump() << '\n';
  const auto text = os.str();
  const auto base = dir / level_file(records.front().corank);
  const bool gzip = text.size() > kGzipThreshold;
  std::filesystem::remove(gzip ? base : std::filesystem::path(base.string() + ".gz"));
  write_text(gzip ? std::filesystem::path(base.string() + ".gz") : base, text, gzip);
}

std::vector<TypeRecord> read_level(const std::filesystem::path& dir, std::size_t n,
                                   std::size_t corank) {
  auto path = dir / level_file(corank);
  if (!std::filesystem::exists(path)) path += ".gz";
  if (!std::filesystem::exists(path)) return {};
  const auto& ctx = ConeContext::get(n);
  std::vector<TypeRecord> out;
  std::istringstream in(read_any(path));
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    out.push_back(record_from_json(json::parse(line), n, ctx.facet_count()));
    if (out.back().corank != corank) throw SelfCheckError("checkpoint: corank mismatch");
  }
  return out;
}

void write_manifest(const std::filesystem::path& dir, const Manifest& m) {
  json j;
  j["n"] = m.n;
  j["inventory_digest"] = m.inventory_digest;
  j["exhausted"] = m.exhausted;
  j["levels"] = json::array();
  for (const auto& s : m.levels)
    j["levels"].push_back({{"corank", s.corank},
                           {"faces", s.faces},
                           {"degenerate", s.degenerate},
                           {"types", s.types},
                           {"cut_only_types", s.cut_only_types},
                           {"heredity_checked", s.heredity_checked},
                           {"seconds", s.seconds}});
  write_text(dir / "manifest.json", j.dump(2) + "\n", false);
}

std::optional<Manifest> read_manifest(const std::filesystem::path& dir) {
  const auto path = dir / "manifest.json";
  if (!std::filesystem::exists(path)) return std::nullopt;
  std::ifstream in(path);
  const json j = json::parse(in);
  Manifest m;
  m.n = j.at("n").get<std::size_t>();
  m.inventory_digest = j.at("inventory_digest").get<std::string>();
  m.exhausted = j.value("exhausted", false);
  for (const auto& l : j.at("levels")) {
    LevelSummary s;
    s.corank = l.at("corank").get<std::size_t>();
    s.faces = l.at("faces").get<std::size_t>();
    s.degenerate = l.at("degenerate").get<std::size_t>();
    s.types = l.at("types").get<std::size_t>();
    s.cut_only_types = l.at("cut_only_types").get<std::size_t>();
    s.heredity_checked = l.value("heredity_checked", std::size_t{0});
    s.seconds = l.value("seconds", 0.0);
    m.levels.push_back(s);
  }
  return m;
}

}  // namespace checkpoint

Face face_of(const ConeContext& ctx, const TypeRecord& record) {
  Face f;
  f.facet_bits = record.facet_bits;
  f.ray_bits = Bits(ctx.ray_count(), true);
  f.facet_bits.for_each([&](std::size_t h) { f.ray_bits &= ctx.facet_rays(h); });
  f.rank = record.rank;
  compute_annulator(ctx, f);
  if (f.degenerate || f.ann != record.ann)
    throw SelfCheckError("stored type does not match its face");
  f.cert = record.cert;
  return f;
}

namespace {

struct LevelFace {
  Face face;
  std::size_t parent = 0;
};

TypeRecord make_record(const ConeContext& ctx, const Face& f, std::size_t members) {
  TypeRecord r;
  r.rank = f.rank;
  r.corank = ctx.pairs() - f.rank;
  r.cert = *f.cert;
  r.ann = f.ann;
  r.vertex_count = f.ann.size();
  r.facet_bits = f.facet_bits;
  r.cut_only = (f.ray_bits & ctx.schlafli_rays()).none();
  r.extreme = f.rank == 1;
  if (r.extreme) r.maximal = true;
  r.members = members;
  return r;
}

}  // namespace

RunResult classify(const RunConfig& config) {
  config.validate();
  const auto& ctx = ConeContext::get(config.n);
  const std::string digest = ctx.rays().digest();
  const bool persist = !config.checkpoint_dir.empty();
  auto log = [&](const std::string& s) {
    if (config.log) *config.log << s << std::endl;
  };

  RunResult result;
  checkpoint::Manifest manifest;
  manifest.n = config.n;
  manifest.inventory_digest = digest;

  if (persist) {
    std::filesystem::create_directories(config.checkpoint_dir);
    if (auto m = checkpoint::read_manifest(config.checkpoint_dir)) {
      if (m->n != config.n) throw SelfCheckError("checkpoint: dimension mismatch");
      if (m->inventory_digest != digest) throw SelfCheckError("checkpoint: ray inventory hash mismatch");
      const std::size_t upto = std::min(m->levels.size(), config.max_corank + 1);
      for (std::size_t k = 0; k < upto; ++k) {
        auto recs = checkpoint::read_level(config.checkpoint_dir, config.n, k);
        if (recs.size() != m->levels[k].types) throw SelfCheckError("checkpoint: level file incomplete");
        result.levels.push_back(std::move(recs));
        result.summaries.push_back(m->levels[k]);
      }
      result.resumed_levels = upto;
      result.exhausted = upto == m->levels.size() && upto > 0 &&
                         std::none_of(result.levels.back().begin(), result.levels.back().end(),
                                      [](const TypeRecord& r) { return r.rank >= 2; });
      manifest.levels = result.summaries;
      manifest.exhausted = result.exhausted;
      // keep the stored flag in step with the loaded levels
      if (upto == m->levels.size() && m->exhausted != result.exhausted)
        checkpoint::write_manifest(config.checkpoint_dir, manifest);
      if (upto) log("resumed " + std::to_string(upto) + " level(s) from checkpoint");
    }
  }

  if (result.levels.empty()) {
    const auto t0 = Clock::now();
    Face full = full_cone(ctx);
    certify(ctx, full);
    face_rank(ctx, full);
    result.levels.push_back({make_record(ctx, full, 1)});
    LevelSummary s;
    s.faces = 1;
    s.types = 1;
    s.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    result.summaries.push_back(s);
    if (persist) {
      checkpoint::write_level(config.checkpoint_dir, config.n, result.levels[0]);
      manifest.levels = result.summaries;
      checkpoint::write_manifest(config.checkpoint_dir, manifest);
    }
    log("corank 0: 1 type");
  }

  for (std::size_t k = result.levels.size(); k <= config.max_corank && !result.exhausted; ++k) {
    const auto t0 = Clock::now();
    const auto deadline = config.budget_seconds > 0
                              ? t0 + std::chrono::duration_cast<Clock::duration>(
                                         std::chrono::duration<double>(config.budget_seconds))
                              : Clock::time_point::max();
    std::atomic<bool> over{false};
    auto tick = [&] {
      if (Clock::now() > deadline) over = true;
      return over.load();
    };

    auto& parents = result.levels[k - 1];
    std::vector<Face> parent_faces(parents.size());
    run_parallel(parents.size(), config.threads, [&](std::size_t i) {
      if (parents[i].rank >= 2 && !tick()) parent_faces[i] = face_of(ctx, parents[i]);
    });
    std::vector<std::vector<Face>> children(parents.size());
    run_parallel(parents.size(), config.threads, [&](std::size_t i) {
      if (parents[i].rank >= 2 && !tick()) children[i] = subfaces(ctx, parent_faces[i]);
    });
    if (over) {
      result.budget_exhausted = true;
      log("budget exhausted during corank " + std::to_string(k));
      break;
    }

    std::map<Bits, std::size_t> index;
    std::vector<LevelFace> faces;
    std::vector<std::vector<std::size_t>> child_ids(parents.size());
    for (std::size_t i = 0; i < children.size(); ++i)
      for (auto& f : children[i]) {
        auto [it, fresh] = index.try_emplace(f.facet_bits, faces.size());
        if (fresh) faces.push_back(LevelFace{std::move(f), i});
        child_ids[i].push_back(it->second);
      }
    // order by facet_bits so every later step is independent of the thread count
    std::vector<std::size_t> rank_of(faces.size());
    {
      std::size_t pos = 0;
      for (auto& [bits, id] : index) rank_of[id] = pos++;
      std::vector<LevelFace> sorted(faces.size());
      for (std::size_t id = 0; id < faces.size(); ++id) sorted[rank_of[id]] = std::move(faces[id]);
      faces = std::move(sorted);
      for (auto& ids : child_ids)
        for (auto& id : ids) id = rank_of[id];
    }

    run_parallel(faces.size(), config.threads, [&](std::size_t i) {
      if (tick()) return;
      auto& f = faces[i].face;
      compute_annulator(ctx, f);
      if (f.degenerate) return;
      face_rank(ctx, f);
      certify(ctx, f);
    });
    if (over) {
      result.budget_exhausted = true;
      log("budget exhausted during corank " + std::to_string(k));
      break;
    }

    // heredity: every subface of a degenerate face is degenerate
    std::vector<std::size_t> audit;
    for (std::size_t i = 0; i < faces.size() && audit.size() < config.heredity_sample; ++i)
      if (faces[i].face.degenerate && faces[i].face.rank >= 2) audit.push_back(i);
    std::atomic<std::size_t> violations{0};
    run_parallel(audit.size(), config.threads, [&](std::size_t a) {
      for (auto& g : subfaces(ctx, faces[audit[a]].face)) {
        compute_annulator(ctx, g);
        if (!g.degenerate) ++violations;
      }
    });
    if (violations) throw SelfCheckError("non-degenerate subface below a degenerate face");

    std::map<Certificate, std::vector<std::size_t>> classes;
    LevelSummary s;
    s.corank = k;
    s.faces = faces.size();
    s.heredity_checked = audit.size();
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (faces[i].face.degenerate) {
        ++s.degenerate;
        continue;
      }
      classes[*faces[i].face.cert].push_back(i);
    }

    if (config.verify_level == "full") {
      std::vector<const Face*> reps;
      for (auto& [cert, members] : classes) {
        const Face& rep = faces[members.front()].face;
        for (std::size_t m = 1; m < members.size(); ++m)
          if (!oracle_equivalent(faces[members[m]].face, rep))
            throw SelfCheckError("certificate merged faces the oracle separates");
        reps.push_back(&rep);
      }
      for (std::size_t a = 0; a < reps.size(); ++a)
        for (std::size_t b = a + 1; b < reps.size(); ++b)
          if (oracle_equivalent(*reps[a], *reps[b]))
            throw SelfCheckError("certificate separated oracle-equivalent faces");
    }

    std::vector<TypeRecord> level;
    for (auto& [cert, members] : classes) {
      level.push_back(make_record(ctx, faces[members.front()].face, members.size()));
      if (level.back().cut_only) ++s.cut_only_types;
    }
    s.types = level.size();
    s.seconds = std::chrono::duration<double>(Clock::now() - t0).count();

    for (std::size_t i = 0; i < parents.size(); ++i)
      if (parents[i].rank >= 2)
        parents[i].maximal = std::all_of(child_ids[i].begin(), child_ids[i].end(),
                                         [&](std::size_t c) { return faces[c].face.degenerate; });

    result.levels.push_back(std::move(level));
    result.summaries.push_back(s);
    // nothing of rank 2 or more left to expand
    result.exhausted = std::none_of(result.levels.back().begin(), result.levels.back().end(),
                                    [](const TypeRecord& r) { return r.rank >= 2; });
    log("corank " + std::to_string(k) + ": " + std::to_string(s.faces) + " faces, " +
        std::to_string(s.degenerate) + " degenerate, " + std::to_string(s.types) + " types");

    if (persist) {
      checkpoint::write_level(config.checkpoint_dir, config.n, result.levels[k - 1]);
      checkpoint::write_level(config.checkpoint_dir, config.n, result.levels[k]);
      manifest.levels = result.summaries;
      manifest.exhausted = result.exhausted;
      checkpoint::write_manifest(config.checkpoint_dir, manifest);
    }
  }
  return result;
}

}  // namespace hypercone::app
