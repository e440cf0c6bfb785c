#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "pipeline.hpp"

namespace hypercone::app {

struct FacetsOptions {
  std::size_t n = 6;
  /// Test hook: replace this orbit representative by a non-facet vector.
  std::optional<std::size_t> corrupt_rep;
  std::filesystem::path export_path;
};

/// Each command prints a report and returns the process exit code (0 = all checks pass).
int cmd_facets(const FacetsOptions& opt, std::ostream& out);
int cmd_rays(const std::filesystem::path& inventory_path, std::ostream& out);
int cmd_classify(const RunConfig& config, std::ostream& out);
int cmd_verify_basic(std::ostream& out);
int cmd_report(const std::filesystem::path& dir, std::ostream& out);
int cmd_annulator(const std::filesystem::path& dist_file, std::ostream& out);

/// Parses whitespace-separated "p/q" rationals; n is inferred from the count.
DistVec read_distance_file(const std::filesystem::path& path);

/// One row of the fractional hypermetric table (numerators and common denominator).
struct FractionalVector {
  std::vector<std::int64_t> num;
  std::int64_t den = 1;
  std::size_t relative_volume = 1;
};
const std::vector<FractionalVector>& basic_table();

}  // namespace hypercone::app
