#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "commands.hpp"
#include "hypercone/delaunay.hpp"
#include "hypercone/equiv.hpp"
#include "hypercone/errors.hpp"
#include "oracles.hpp"
#include "pipeline.hpp"

using namespace hypercone;
using namespace hypercone::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("hypercone_test_" + name);
  fs::remove_all(dir);
  return dir;
}

RunConfig full_run(std::size_t n) {
  RunConfig c;
  c.n = n;
  c.max_corank = pair_count(n) - 1;
  return c;
}

std::size_t total_types(const RunResult& r) {
  std::size_t t = 0;
  for (const auto& l : r.levels) t += l.size();
  return t;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string report(const fs::path& dir) {
  std::ostringstream os;
  cmd_report(dir, os);
  return os.str();
}

}  // namespace

TEST(Pipeline, TwoDimensions) {
  const auto r = classify(full_run(2));
  EXPECT_TRUE(r.exhausted);
  EXPECT_EQ(total_types(r), 2u);
  ASSERT_GE(r.levels.size(), 2u);
  ASSERT_EQ(r.levels[0].size(), 1u);
  EXPECT_EQ(r.levels[0][0].rank, 3u);
  EXPECT_EQ(r.levels[0][0].vertex_count, 3u);
  ASSERT_EQ(r.levels[1].size(), 1u);
  EXPECT_EQ(r.levels[1][0].rank, 2u);
  EXPECT_EQ(r.levels[1][0].vertex_count, 4u);  // the rectangle
}

// Brute force: every face of CUT_4 from subsets of its 7 cuts, non-degenerate ones grouped
// by the oracle. The pipeline must find the same number of types, rank by rank.
TEST(Pipeline, ThreeDimensionsAgainstBruteForce) {
  const auto r = classify(full_run(3));
  EXPECT_TRUE(r.exhausted);

  std::map<std::size_t, std::vector<std::vector<BVector>>> classes;  // rank -> class reps
  for (const auto& f : oracle::cut_cone_faces(3)) {
    const auto d = oracle::sum_of_cuts(f.cuts, 3);
    if (oracle::determinant(oracle::gram(d, 3)) == 0) continue;
    std::vector<BVector> ann;
    for (const auto& b : oracle::box_annulator(d, 3)) ann.emplace_back(b);
    auto& reps = classes[f.rank];
    bool found = false;
    for (const auto& rep : reps) found = found || oracle_equivalent(ann, rep);
    if (!found) reps.push_back(ann);
  }
  std::size_t brute = 0;
  for (const auto& [rank, reps] : classes) brute += reps.size();
  EXPECT_EQ(total_types(r), brute);
  for (std::size_t k = 0; k < r.levels.size(); ++k)
    EXPECT_EQ(r.levels[k].size(), classes[6 - k].size()) << "corank " << k;

  const auto& ctx = ConeContext::get(3);
  for (const auto& level : r.levels)
    for (const auto& rec : level) {
      const Face f = face_of(ctx, rec);
      const auto real = realize(DistVec::from_ints(3, interior_point(ctx, f)));
      EXPECT_EQ(real.vertices.size(), rec.vertex_count);
    }
}

TEST(Pipeline, FourAndFiveDimensions) {
  // the known numbers of Delaunay types in dimensions 4 and 5
  EXPECT_EQ(total_types(classify(full_run(4))), 19u);
  EXPECT_EQ(total_types(classify(full_run(5))), 138u);
}

TEST(Pipeline, RankPlusCorank) {
  auto c = full_run(4);
  c.verify_level = "full";
  const auto r = classify(c);
  for (const auto& level : r.levels)
    for (const auto& rec : level) {
      EXPECT_EQ(rec.rank + rec.corank, 10u);
      EXPECT_TRUE(rec.maximal.has_value());
    }
  std::size_t audited = 0;
  for (const auto& s : r.summaries) audited += s.heredity_checked;
  EXPECT_GT(audited, 0u);
}

TEST(Pipeline, SevenPointsFirstLevel) {
  RunConfig c;
  c.n = 6;
  c.max_corank = 1;
  c.verify_level = "full";
  const auto r = classify(c);
  ASSERT_EQ(r.levels.size(), 2u);
  EXPECT_EQ(r.levels[1].size(), 9u);
  EXPECT_EQ(r.summaries[1].faces, 3773u);
  for (const auto& rec : r.levels[1]) EXPECT_EQ(rec.vertex_count, 8u);
}

TEST(Pipeline, ThreadCountDoesNotChangeCheckpoints) {
  const auto a = scratch("threads1"), b = scratch("threads3");
  auto c = full_run(4);
  c.checkpoint_dir = a;
  classify(c);
  c.checkpoint_dir = b;
  c.threads = 3;
  classify(c);
  for (std::size_t k = 0; k < 10; ++k) {
    const auto name = checkpoint::level_file(k);
    ASSERT_EQ(fs::exists(a / name), fs::exists(b / name)) << name;
    if (fs::exists(a / name)) EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
  EXPECT_EQ(report(a), report(b));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Pipeline, ResumeMatchesFreshRun) {
  const auto fresh = scratch("fresh"), resumed = scratch("resumed");
  auto c = full_run(4);
  c.checkpoint_dir = fresh;
  const auto whole = classify(c);

  c.checkpoint_dir = resumed;
  c.max_corank = 3;
  classify(c);
  c.max_corank = 9;
  const auto rest = classify(c);
  EXPECT_EQ(rest.resumed_levels, 4u);
  EXPECT_EQ(total_types(rest), total_types(whole));
  EXPECT_EQ(report(fresh), report(resumed));
  for (std::size_t k = 0; k < 10; ++k) {
    const auto name = checkpoint::level_file(k);
    if (fs::exists(fresh / name)) EXPECT_EQ(slurp(fresh / name), slurp(resumed / name)) << name;
  }

  // a completed run resumes entirely from disk
  const auto again = classify(c);
  EXPECT_EQ(again.resumed_levels, whole.levels.size());
  EXPECT_TRUE(again.exhausted);
  fs::remove_all(fresh);
  fs::remove_all(resumed);
}

TEST(Pipeline, BudgetStopsAtLastCompletedLevel) {
  const auto dir = scratch("budget");
  auto c = full_run(5);
  c.checkpoint_dir = dir;
  c.budget_seconds = 1e-9;
  const auto r = classify(c);
  EXPECT_TRUE(r.budget_exhausted);
  EXPECT_EQ(r.levels.size(), 1u);
  const auto m = checkpoint::read_manifest(dir);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->levels.size(), 1u);
  EXPECT_FALSE(m->exhausted);
  fs::remove_all(dir);
}

TEST(Checkpoint, RejectsForeignInventory) {
  const auto dir = scratch("digest");
  auto c = full_run(3);
  c.checkpoint_dir = dir;
  classify(c);
  auto m = *checkpoint::read_manifest(dir);
  m.inventory_digest = "0000000000000000";
  checkpoint::write_manifest(dir, m);
  EXPECT_THROW(classify(c), SelfCheckError);
  fs::remove_all(dir);
}

TEST(Checkpoint, LargeLevelsAreCompressed) {
  const auto dir = scratch("gzip");
  fs::create_directories(dir);
  const auto& ctx = ConeContext::get(6);
  TypeRecord rec;
  rec.corank = 1;
  rec.rank = 20;
  rec.cert = Certificate{"schlafli", std::string(64, 'x')};
  for (std::size_t i = 0; i < 7; ++i) rec.ann.push_back(BVector::basic(6, i));
  rec.ann.push_back(BVector({1, 1, -1, 0, 0, 0, 0}));
  rec.vertex_count = rec.ann.size();
  rec.facet_bits = Bits(ctx.facet_count());
  rec.facet_bits.set(5);
  rec.members = 3;
  rec.maximal = false;
  std::vector<TypeRecord> many(3000, rec);
  checkpoint::write_level(dir, 6, many);
  EXPECT_TRUE(fs::exists(dir / (checkpoint::level_file(1) + ".gz")));
  EXPECT_FALSE(fs::exists(dir / checkpoint::level_file(1)));
  const auto back = checkpoint::read_level(dir, 6, 1);
  ASSERT_EQ(back.size(), many.size());
  EXPECT_EQ(back[17].cert, rec.cert);
  EXPECT_EQ(back[17].ann, rec.ann);
  EXPECT_EQ(back[17].facet_bits, rec.facet_bits);
  EXPECT_EQ(back[17].maximal, rec.maximal);

  checkpoint::write_level(dir, 6, {rec});
  EXPECT_TRUE(fs::exists(dir / checkpoint::level_file(1)));
  EXPECT_FALSE(fs::exists(dir / (checkpoint::level_file(1) + ".gz")));
  EXPECT_EQ(checkpoint::read_level(dir, 6, 1).size(), 1u);
  fs::remove_all(dir);
}

TEST(Config, Validation) {
  RunConfig c;
  c.n = 7;
  EXPECT_THROW(c.validate(), DomainError);
  c.n = 3;
  c.max_corank = 6;
  EXPECT_THROW(c.validate(), DomainError);
  c.max_corank = 2;
  c.verify_level = "slow";
  EXPECT_THROW(c.validate(), DomainError);
  c.verify_level = "full";
  EXPECT_NO_THROW(c.validate());
}

TEST(PublishedTable, Totals) {
  std::size_t hyp = 0, cut = 0;
  for (auto c : published_hyp7_counts()) hyp += c;
  for (auto c : published_cut7_counts()) cut += c;
  EXPECT_EQ(hyp, 6421u);  // the row sum; the quoted total transposes two digits
  EXPECT_EQ(published_hyp7_counts()[20], 9u);
  EXPECT_EQ(published_hyp7_counts()[19], 30u);
  EXPECT_EQ(published_hyp7_counts()[18], 95u);
  EXPECT_GT(cut, 0u);
}

TEST(Commands, Facets) {
  std::ostringstream os;
  EXPECT_EQ(cmd_facets(FacetsOptions{2, std::nullopt, {}}, os), 0);
  EXPECT_NE(os.str().find("total 3"), std::string::npos);
  std::ostringstream bad;
  EXPECT_NE(cmd_facets(FacetsOptions{6, 3, {}}, bad), 0);
}

TEST(Commands, BasicTable) {
  const auto& t = basic_table();
  ASSERT_EQ(t.size(), 10u);
  std::size_t k2 = 0, k3 = 0;
  for (const auto& v : t) {
    EXPECT_EQ(v.num.size(), 7u);
    k2 += v.relative_volume == 2;
    k3 += v.relative_volume == 3;
  }
  EXPECT_EQ(k2, 7u);
  EXPECT_EQ(k3, 3u);
  std::ostringstream os;
  EXPECT_EQ(cmd_verify_basic(os), 0);
}

TEST(Commands, AnnulatorFromFile) {
  const auto dir = scratch("annfile");
  fs::create_directories(dir);
  std::ofstream(dir / "cube.txt") << "1 1 1\n2 2 2/1\n";
  std::ostringstream os;
  EXPECT_EQ(cmd_annulator(dir / "cube.txt", os), 0);
  EXPECT_NE(os.str().find("ann 8"), std::string::npos);
  EXPECT_NE(os.str().find("face rank 3"), std::string::npos);

  std::ofstream(dir / "bad.txt") << "1 1 3\n";
  std::ostringstream bad;
  EXPECT_EQ(cmd_annulator(dir / "bad.txt", bad), 1);

  std::ofstream(dir / "short.txt") << "1 1 1 1\n";
  EXPECT_THROW(read_distance_file(dir / "short.txt"), DimensionError);
  fs::remove_all(dir);
}

TEST(Commands, ReportAfterFirstLevel) {
  const auto dir = scratch("report");
  RunConfig c;
  c.n = 6;
  c.max_corank = 1;
  c.checkpoint_dir = dir;
  classify(c);
  std::ostringstream os;
  EXPECT_EQ(cmd_report(dir, os), 0);
  EXPECT_NE(os.str().find("  20      9             9 ✓"), std::string::npos) << os.str();
  fs::remove_all(dir);
}
