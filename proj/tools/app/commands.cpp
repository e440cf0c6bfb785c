#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "hypercone/delaunay.hpp"
#include "hypercone/equiv.hpp"
#include "hypercone/errors.hpp"
#include "hypercone/lp.hpp"
#include "hypercone/rank_accumulator.hpp"
#include "hypercone/schlafli.hpp"

namespace hypercone::app {

namespace {

struct Checks {
  std::ostream& out;
  int failures = 0;

  void operator()(bool ok, const std::string& what) {
    out << (ok ? "  ok    " : "  FAIL  ") << what << '\n';
    if (!ok) ++failures;
  }
  int exit_code() const { return failures ? 1 : 0; }
};

std::string join(const std::vector<std::size_t>& v, const char* sep = ",") {
  std::ostringstream os;
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? sep : "") << v[k];
  return os.str();
}

// Known facet totals of HYP_{n+1}.
std::size_t expected_facets(std::size_t n) {
  switch (n) {
    case 2: return 3;
    case 3: return 12;
    case 4: return 40;
    case 5: return 210;
    default: return 3773;
  }
}

}  // namespace

int cmd_facets(const FacetsOptions& opt, std::ostream& out) {
  auto reps = facet_representatives(opt.n);
  if (opt.corrupt_rep) {
    if (*opt.corrupt_rep >= reps.size()) throw DomainError("corrupt-rep index out of range");
    std::vector<std::int64_t> c(opt.n + 1, 0);
    c[0] = 2;
    c[1] = 1;
    c[2] = -1;
    c[3] = -1;
    reps[*opt.corrupt_rep] = BVector(c);
  }
  const FacetCatalog catalog(opt.n, reps);
  const auto& ctx = ConeContext::get(opt.n);
  const std::size_t pairs = pair_count(opt.n);
  Checks check{out};

  out << "HYP_" << opt.n + 1 << " facet orbits\n";
  for (std::size_t k = 0; k < catalog.orbits().size(); ++k) {
    const auto& o = catalog.orbits()[k];
    out << "  b" << k + 1 << " = " << o.representative.to_string() << "  orbit size "
        << o.members.size() << '\n';
  }
  out << "  total " << catalog.size() << '\n';

  std::vector<Face> faces;
  bool all_facets = true;
  for (std::size_t k = 0; k < catalog.orbits().size(); ++k) {
    const auto form = h_form(catalog.orbits()[k].representative);
    Bits tight(ctx.ray_count());
    bool valid = true;
    for (std::size_t r = 0; r < ctx.ray_count(); ++r) {
      const auto v = h_eval(form, ctx.rays().rays[r].dist);
      if (v > 0) valid = false;
      if (v == 0) tight.set(r);
    }
    const std::size_t span = tight.any() ? ray_span_rank(ctx, tight) : 0;
    const bool ok = valid && span == pairs - 1;
    all_facets = all_facets && ok;
    check(ok, "b" + std::to_string(k + 1) + ": valid on every extreme ray, tight rays span " +
                  std::to_string(span) + " dimensions");
    if (ok) faces.push_back(closure(ctx, tight));
  }

  std::vector<std::vector<std::size_t>> classes;
  try {
    classes = partner_classes(catalog);
  } catch (const std::exception& e) {
    check(false, std::string("partner classes: ") + e.what());
  }
  out << "geometric classes (partner relation)\n";
  for (const auto& c : classes) {
    std::vector<std::size_t> one_based;
    for (auto k : c) one_based.push_back(k + 1);
    out << "  {b" << join(one_based, ",b") << "}\n";
  }

  check(catalog.size() == expected_facets(opt.n),
        "total facet count " + std::to_string(catalog.size()));
  if (opt.n == 6) {
    check(catalog.orbits().size() == 14, "14 orbits");
    check(classes.size() == 9, "9 geometric classes");
  }
  if (opt.n == 2) check(classes.size() == 1, "1 geometric class");
  if (all_facets) {
    std::set<Certificate> certs;
    for (auto& f : faces) certs.insert(certify(ctx, f));
    check(certs.size() == classes.size(),
          "certificate classes of the facet faces: " + std::to_string(certs.size()));
  }
  if (!opt.export_path.empty()) {
    std::ofstream f(opt.export_path);
    f << export_catalog(catalog);
    check(static_cast<bool>(f), "catalog written to " + opt.export_path.string());
  }
  return check.exit_code();
}

int cmd_rays(const std::filesystem::path& inventory_path, std::ostream& out) {
  const auto& ctx = ConeContext::get(6);
  const auto& inv = ctx.rays();
  const auto& bases = cached_affine_bases();
  Checks check{out};

  out << "HYP_7 extreme ray orbits\n";
  for (std::size_t k = 0; k < inv.orbit_count(); ++k)
    out << "  " << std::setw(2) << k + 1 << "  " << std::left << std::setw(20)
        << inv.orbit_labels[k] << std::right << " size " << inv.orbit_sizes[k] << '\n';
  out << "  total rays " << inv.rays.size() << ", digest " << inv.digest() << '\n';

  {
    std::ofstream f(inventory_path);
    f << inv.to_jsonl();
    check(static_cast<bool>(f), "inventory written to " + inventory_path.string());
  }

  std::size_t cut_orbits = 0;
  for (const auto& r : inv.rays)
    if (r.kind == RayKind::cut) cut_orbits = std::max(cut_orbits, r.orbit + 1);
  check(inv.count(RayKind::cut) == 63 && cut_orbits == 3, "63 nonzero cuts in 3 orbits");
  check(inv.orbit_count() - cut_orbits == 26, "26 Schlafli orbits");
  check(inv.orbit_count() == 29, "29 orbits in total");

  std::size_t cut_degenerate = 0, schlafli_nondegenerate = 0, tight20 = 0, rank1 = 0;
  for (std::size_t r = 0; r < inv.rays.size(); ++r) {
    const auto& ray = inv.rays[r];
    const bool nondeg = det(gram_from_distance(DistVec::from_ints(6, ray.dist))) != 0;
    if (ray.kind == RayKind::cut) {
      cut_degenerate += !nondeg;
      continue;
    }
    schlafli_nondegenerate += nondeg;
    const Bits& facets = ctx.ray_facets(r);
    tight20 += facets.count() == 20;
    Bits face(ctx.ray_count(), true);
    facets.for_each([&](std::size_t h) { face &= ctx.facet_rays(h); });
    rank1 += face.count() == 1;
  }
  const auto schlafli = inv.count(RayKind::schlafli);
  check(cut_degenerate == 63, "every cut is degenerate");
  check(schlafli_nondegenerate == schlafli, "every Schlafli ray is non-degenerate");
  out << "  (all " << ctx.facet_count() << " inequalities hold on every ray: checked at load)\n";
  check(tight20 == schlafli, "every Schlafli ray is tight on exactly 20 facets");
  check(rank1 == schlafli, "every Schlafli ray spans a rank-1 face");

  std::size_t ann27 = 0, independent = 0;
  for (const auto& b : bases) {
    const auto ann = annulator(DistVec::from_ints(6, b.dist));
    ann27 += ann.size() == 27;
    std::vector<IntVec> forms;
    for (const auto& x : ann) forms.push_back(h_form(x));
    independent += integer_rank(forms, 21) == 20;
  }
  check(ann27 == bases.size(), "|Ann(d_B)| = 27 for every basis class (sphere enumeration)");
  check(independent == bases.size(), "the 20 non-basic annulator forms are independent");
  return check.exit_code();
}

int cmd_classify(const RunConfig& config, std::ostream& out) {
  RunConfig cfg = config;
  cfg.log = &out;
  const auto result = classify(cfg);
  const std::size_t pairs = pair_count(cfg.n);
  Checks check{out};

  out << "corank  rank   faces  degenerate  types  cut-only";
  if (cfg.n == 6) out << "  published";
  out << '\n';
  std::size_t total = 0;
  for (std::size_t k = 0; k < result.summaries.size(); ++k) {
    const auto& s = result.summaries[k];
    total += s.types;
    out << std::setw(6) << k << std::setw(6) << pairs - k << std::setw(8) << s.faces
        << std::setw(12) << s.degenerate << std::setw(7) << s.types << std::setw(10)
        << s.cut_only_types;
    if (cfg.n == 6) {
      const auto want = published_hyp7_counts()[pairs - k];
      out << std::setw(11) << want << (want == s.types ? "  ✓" : "  ✗");
    }
    out << '\n';
  }
  out << "types found: " << total << (result.exhausted ? " (complete)" : "") << '\n';
  if (result.budget_exhausted) out << "stopped by the time budget\n";

  if (cfg.n == 6)
    for (std::size_t k = 0; k < result.summaries.size(); ++k)
      check(published_hyp7_counts()[pairs - k] == result.summaries[k].types,
            "corank " + std::to_string(k) + " matches the published count");
  if (cfg.n == 2 && result.exhausted) check(total == 2, "two types in dimension two");
  std::size_t audited = 0;
  for (const auto& s : result.summaries) audited += s.heredity_checked;
  out << "  ok    heredity audit: " << audited << " degenerate faces re-expanded, no violations\n";
  return check.exit_code();
}

const std::vector<FractionalVector>& basic_table() {
  static const std::vector<FractionalVector> t{
      {{-1, -1, 1, 1, 1, 1, 0}, 2, 2},   {{-1, -1, -1, 1, 1, 1, 2}, 2, 2},
      {{-2, -1, -1, 1, 1, 1, 3}, 2, 2},  {{-2, -1, 1, 1, 1, 1, 1}, 2, 2},
      {{-1, -1, -1, -1, 1, 2, 3}, 2, 2}, {{-3, -1, 1, 1, 1, 1, 2}, 2, 2},
      {{-1, 1, 1, 0, 0, 0, 0}, 1, 2},    {{-1, -1, -1, 1, 1, 2, 2}, 3, 3},
      {{-1, -1, -1, 1, 1, 1, 1}, 3, 3},  {{-2, -1, 1, 1, 1, 1, 2}, 3, 3},
  };
  return t;
}

int cmd_verify_basic(std::ostream& out) {
  const auto& table = basic_table();
  Checks check{out};

  auto as_rat = [](const FractionalVector& v) {
    RatVec b;
    for (auto x : v.num) b.push_back(make_rat(x, v.den));
    return b;
  };
  auto permutations = [&](const FractionalVector& v) {
    auto c = v.num;
    std::sort(c.begin(), c.end());
    std::vector<RatVec> forms;
    do {
      RatVec b;
      for (auto x : c) b.push_back(make_rat(x, v.den));
      forms.push_back(h_form(b));
    } while (std::next_permutation(c.begin(), c.end()));
    return forms;
  };

  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& v = table[i];
    const RatVec b = as_rat(v);
    Rat sum = 0;
    for (const auto& x : b) sum += x;
    std::ostringstream name;
    name << "k=" << v.relative_volume << " ";
    if (v.den != 1) name << "1/" << v.den << " ";
    name << "(";
    for (std::size_t k = 0; k < v.num.size(); ++k) name << (k ? "," : "") << v.num[k];
    name << ")";
    out << name.str() << '\n';
    if (sum != 1) out << "  note  coordinates sum to " << to_string(sum) << ", not 1\n";

    if (v.den != 1) {
      const Rat want = make_rat(1, static_cast<std::int64_t>(v.relative_volume));
      const bool has = std::any_of(b.begin(), b.end(), [&](const Rat& x) { return abs(x) == want; });
      check(has, "some coordinate has absolute value 1/" + std::to_string(v.relative_volume));
    }

    const RatVec target = h_form(b);
    std::vector<RatVec> others;
    for (std::size_t j = 0; j < table.size(); ++j)
      if (j != i) {
        auto p = permutations(table[j]);
        others.insert(others.end(), p.begin(), p.end());
      }
    auto res = lp_feasible_guided(others, target, true);
    std::string how = "over the other table orbits";
    std::vector<RatVec> used = others;
    if (!res.feasible) {
      auto own = permutations(v);
      used.insert(used.end(), own.begin(), own.end());
      res = lp_feasible_guided(used, target, true);
      how = "including its own orbit";
    }
    const bool verified = res.feasible && verify_lp_result(used, target, res);
    check(verified, "H(b) = sum lambda_l H(b^l), lambda >= 0, " + how + ", support " +
                        std::to_string(res.support.size()) + " (" + std::to_string(res.pivots) +
                        " pivots)");
  }
  return check.exit_code();
}

int cmd_report(const std::filesystem::path& dir, std::ostream& out) {
  const auto manifest = checkpoint::read_manifest(dir);
  if (!manifest) {
    out << "no manifest in " << dir.string() << '\n';
    return 1;
  }
  const std::size_t n = manifest->n;
  const std::size_t pairs = pair_count(n);
  int mismatches = 0;
  std::vector<std::size_t> cut_notes;
  std::size_t total = 0;
  out << "rank  found";
  if (n == 6) out << "  Nr. in HYP_7      cut-only  Nr. in CUT_7";
  out << '\n';
  for (std::size_t k = 0; k < manifest->levels.size(); ++k) {
    const auto& s = manifest->levels[k];
    const std::size_t rank = pairs - k;
    total += s.types;
    out << std::setw(4) << rank << std::setw(7) << s.types;
    if (n == 6) {
      const auto h = published_hyp7_counts()[rank];
      const auto c = published_cut7_counts()[rank];
      out << std::setw(14) << h << (h == s.types ? " ✓" : " ✗") << std::setw(12)
          << s.cut_only_types << std::setw(14) << c << (c == s.cut_only_types ? " ✓" : " ✗");
      mismatches += h != s.types;
      if (c != s.cut_only_types) cut_notes.push_back(rank);
    }
    out << '\n';
  }
  // the cut-only column is a cross-check, not a pass criterion
  for (auto rank : cut_notes)
    out << "note  rank " << rank << ": cut-only count differs from the CUT_7 column\n";
  out << "total " << total;
  if (n == 6) {
    const auto& table = published_hyp7_counts();
    out << " of " << std::accumulate(table.begin(), table.end(), std::size_t{0}) << " in the rank table";
  }
  out << (manifest->exhausted ? " (run complete)" : " (partial run)") << '\n';

  out << "maximal types found so far\n";
  std::size_t maximal = 0;
  for (std::size_t k = 0; k < manifest->levels.size(); ++k)
    for (const auto& r : checkpoint::read_level(dir, n, k))
      if (r.maximal && *r.maximal) {
        ++maximal;
        out << "  rank " << r.rank << ", " << r.vertex_count << " vertices"
            << (r.cut_only ? ", generated by cuts" : "") << '\n';
      }
  if (!maximal) out << "  none\n";
  return mismatches ? 1 : 0;
}

DistVec read_distance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path.string());
  RatVec d;
  for (std::string tok; in >> tok;) d.push_back(parse_rat(tok));
  const std::size_t n = dimension_from_pairs(d.size());
  return DistVec(n, std::move(d));
}

int cmd_annulator(const std::filesystem::path& dist_file, std::ostream& out) {
  const DistVec d = read_distance_file(dist_file);
  if (!is_hypermetric(d)) {
    out << "not hypermetric\n";
    return 1;
  }
  if (!is_nondegenerate(d)) {
    out << "degenerate: the Gram matrix is singular\n";
    return 0;
  }
  const auto r = realize(d);
  out << export_realization(r);
  std::vector<IntVec> forms;
  for (const auto& b : r.ann) forms.push_back(h_form(b));
  const std::size_t pairs = pair_count(d.n());
  out << "ann " << r.ann.size() << '\n';
  for (const auto& b : r.ann) out << "  " << b.to_string() << '\n';
  out << "face rank " << pairs - integer_rank(forms, pairs) << '\n';
  return 0;
}

}  // namespace hypercone::app
