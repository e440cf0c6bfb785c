#include <CLI11.hpp>
#include <exception>
#include <iostream>

#include "commands.hpp"
#include "hypercone/errors.hpp"

int main(int argc, char** argv) {
  using namespace hypercone::app;
  CLI::App cli{"Hypermetric cone faces and Delaunay polytope types"};
  cli.require_subcommand(1);

  FacetsOptions facets;
  std::size_t corrupt = 0;
  auto* c_facets = cli.add_subcommand("facets", "facet orbits of HYP_{n+1} and their classes");
  c_facets->add_option("-n", facets.n, "dimension n (2..6)")->check(CLI::Range(2, 6));
  c_facets->add_option("--export", facets.export_path, "write the full facet list");
  auto* corrupt_opt = c_facets->add_option("--corrupt-rep", corrupt)->group("");

  std::filesystem::path inventory = "rays.jsonl";
  auto* c_rays = cli.add_subcommand("rays", "extreme rays of HYP_7");
  c_rays->add_option("-o,--out", inventory, "ray inventory file (JSON lines)");

  RunConfig run;
  auto* c_classify = cli.add_subcommand("classify", "classify faces corank by corank");
  c_classify->add_option("-n", run.n, "dimension n (2..6)")->check(CLI::Range(2, 6));
  c_classify->add_option("--max-corank", run.max_corank, "deepest corank to reach");
  c_classify->add_option("--checkpoint", run.checkpoint_dir, "checkpoint directory");
  c_classify->add_option("--threads", run.threads, "worker threads")->check(CLI::PositiveNumber);
  c_classify->add_option("--budget", run.budget_seconds, "seconds allowed per level");
  c_classify->add_option("--verify", run.verify_level, "fast | full")
      ->check(CLI::IsMember({"fast", "full"}));
  c_classify->add_option("--heredity-sample", run.heredity_sample,
                         "degenerate faces re-expanded per level");

  auto* c_basic = cli.add_subcommand("verify-basic", "decompose the fractional hypermetric table");

  std::filesystem::path report_dir;
  auto* c_report = cli.add_subcommand("report", "compare a classification run with the rank table");
  c_report->add_option("dir", report_dir)->required();

  std::filesystem::path dist_file;
  auto* c_ann = cli.add_subcommand("annulator", "Delaunay polytope of a distance vector");
  c_ann->add_option("--dist", dist_file, "file of N rationals p/q in pair order")->required();

  CLI11_PARSE(cli, argc, argv);
  try {
    if (*c_facets) {
      if (*corrupt_opt) facets.corrupt_rep = corrupt;
      return cmd_facets(facets, std::cout);
    }
    if (*c_rays) return cmd_rays(inventory, std::cout);
    if (*c_classify) {
      if (c_classify->count("--max-corank") == 0 && run.n < 6)
        run.max_corank = hypercone::pair_count(run.n) - 1;
      return cmd_classify(run, std::cout);
    }
    if (*c_basic) return cmd_verify_basic(std::cout);
    if (*c_report) return cmd_report(report_dir, std::cout);
    if (*c_ann) return cmd_annulator(dist_file, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "hypercone: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
