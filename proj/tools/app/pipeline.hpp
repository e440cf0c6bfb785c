#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hypercone/facelat.hpp"

namespace hypercone::app {

struct RunConfig {
  std::size_t n = 6;
  std::size_t max_corank = 3;
  std::filesystem::path checkpoint_dir;  ///< empty: no checkpoints
  std::size_t threads = 1;
  std::string verify_level = "fast";  ///< "fast" | "full"
  double budget_seconds = 0;          ///< per level; 0 = unlimited
  /// Degenerate faces per level whose subfaces are re-expanded to audit heredity.
  std::size_t heredity_sample = 64;
  std::ostream* log = nullptr;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

struct TypeRecord {
  std::size_t corank = 0;
  std::size_t rank = 0;
  Certificate cert;
  std::vector<BVector> ann;
  std::size_t vertex_count = 0;
  Bits facet_bits;
  bool cut_only = false;
  bool extreme = false;
  std::optional<bool> maximal;  ///< known once the next level has been expanded
  std::size_t members = 0;      ///< faces of the level in this class
};

struct LevelSummary {
  std::size_t corank = 0;
  std::size_t faces = 0;
  std::size_t degenerate = 0;
  std::size_t types = 0;
  std::size_t cut_only_types = 0;
  std::size_t heredity_checked = 0;
  double seconds = 0;
};

struct RunResult {
  std::vector<std::vector<TypeRecord>> levels;  ///< index = corank
  std::vector<LevelSummary> summaries;
  bool budget_exhausted = false;
  bool exhausted = false;  ///< no non-degenerate faces left below the last level
  std::size_t resumed_levels = 0;
};

/// Levels 0..max_corank of the type classification, resuming from checkpoints when the
/// directory holds a compatible run. Throws SelfCheckError on a heredity violation or an
/// inconsistent checkpoint.
RunResult classify(const RunConfig& config);

/// Rebuilds the face of a stored record (rays re-collected, annulator recomputed).
Face face_of(const ConeContext& ctx, const TypeRecord& record);

/// Published number of types per rank for HYP_7 (index = rank, 1..21) and for CUT_7.
const std::vector<std::size_t>& published_hyp7_counts();
const std::vector<std::size_t>& published_cut7_counts();

namespace checkpoint {

std::string level_file(std::size_t corank);
void write_level(const std::filesystem::path& dir, std::size_t n,
                 const std::vector<TypeRecord>& records);
std::vector<TypeRecord> read_level(const std::filesystem::path& dir, std::size_t n,
                                   std::size_t corank);

struct Manifest {
  std::size_t n = 0;
  std::string inventory_digest;
  std::vector<LevelSummary> levels;
  bool exhausted = false;
};

void write_manifest(const std::filesystem::path& dir, const Manifest& m);
std::optional<Manifest> read_manifest(const std::filesystem::path& dir);

}  // namespace checkpoint

}  // namespace hypercone::app
