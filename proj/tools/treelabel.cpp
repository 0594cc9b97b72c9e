#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "treelabel/treelabel.hpp"

using namespace treelabel;
using io::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3 };

std::string slurp(const std::string &path) {
  if (path == "-")
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RootedTree read_tree(const std::string &path) { return parse_tree(slurp(path)); }

Family parse_family(const std::string &name) {
  if (name == "mary")
    return Family::CompleteMary;
  if (name == "regular")
    return Family::RegularSubtree;
  throw std::invalid_argument("family must be mary or regular");
}

/// m if t is laid out exactly as build_family({CompleteMary, m, 3}).
std::optional<int> detect_depth3(const RootedTree &t) {
  const int m = t.degree(0);
  const FamilySpec spec{Family::CompleteMary, m, 3};
  if (m >= 2 && family_size(spec) == t.size() && build_family(spec) == t)
    return m;
  return std::nullopt;
}

Construction label_linear_auto(const RootedTree &t, int h, int p, const std::string &algorithm) {
  if (algorithm == "general")
    return label_linear(t, h, p);
  const auto d2 = detect_depth2_family(t);
  const bool is_d2 = d2 && d2->family == Family::CompleteMary;
  if (algorithm == "depth2") {
    if (!is_d2)
      throw NotApplicable("depth2 algorithm needs T(m,2) in generator layout");
    return label_linear_depth2(d2->m, h, p);
  }
  const auto d3 = detect_depth3(t);
  if (algorithm == "depth3") {
    if (!d3)
      throw NotApplicable("depth3 algorithm needs T(m,3) in generator layout");
    return label_linear_depth3(*d3, h, p);
  }
  if (algorithm != "auto")
    throw std::invalid_argument("unknown linear algorithm " + algorithm);
  if (is_d2)
    return label_linear_depth2(d2->m, h, p);
  if (d3)
    return label_linear_depth3(*d3, h, p);
  return label_linear(t, h, p);
}

Construction label_cyclic_auto(const RootedTree &t, int h, int p, const std::string &algorithm) {
  if (algorithm == "large")
    return label_cyclic_large(t, h, p);
  if (algorithm == "h11") {
    if (p != 1)
      throw NotApplicable("h11 algorithm needs p = 1");
    return label_cyclic_h11(t, h);
  }
  const auto d2 = detect_depth2_family(t);
  if (algorithm == "depth2") {
    if (!d2)
      throw NotApplicable("depth2 algorithm needs T(m,2) or That(m,2) in generator layout");
    return label_cyclic_depth2(*d2, h, p);
  }
  if (algorithm != "auto")
    throw std::invalid_argument("unknown cyclic algorithm " + algorithm);
  if (d2) {
    try {
      return label_cyclic_depth2(*d2, h, p);
    } catch (const NotApplicable &) {
    }
  }
  const TreeStats s = tree_stats(t);
  if (h >= s.delta * p)
    return label_cyclic_large(t, h, p);
  if (p == 1)
    return label_cyclic_h11(t, h);
  throw NotApplicable("no cyclic construction for p > 1 and h < delta * p");
}

std::vector<int> parse_list(const std::string &text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      out.push_back(std::stoi(item));
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Distance-three L(h,p,p) and C(h,p,p) labellings of trees"};
  // Subcommands use --h for the separation, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  int code = kOk;

  // gen
  auto *gen = app.add_subcommand("gen", "Print T(m,k) or That(m,k) in tree text format");
  std::string family = "mary";
  int gm = 2, gk = 2;
  gen->add_option("--family", family, "mary or regular")->check(CLI::IsMember({"mary", "regular"}));
  gen->add_option("-m", gm, "branching")->required();
  gen->add_option("-k", gk, "depth")->required();
  gen->callback([&] { std::cout << serialize_tree(build_family({parse_family(family), gm, gk})); });

  // random
  auto *rnd = app.add_subcommand("random", "Print a seeded random tree");
  int rn = 10, rdeg = 3;
  std::uint64_t rseed = 0;
  rnd->add_option("--n", rn, "vertex count")->required();
  rnd->add_option("--max-degree", rdeg, "maximum degree")->required();
  rnd->add_option("--seed", rseed, "random seed")->required();
  rnd->callback([&] {
    std::mt19937_64 rng(rseed);
    std::cout << serialize_tree(random_tree(rn, rdeg, rng));
  });

  // stats
  auto *stats = app.add_subcommand("stats", "Print n, delta, delta2 and diameter as JSON");
  std::string stats_path = "-";
  stats->add_option("tree", stats_path, "tree file, - for stdin");
  stats->callback([&] { std::cout << io::stats_json(tree_stats(read_tree(stats_path))).dump() << "\n"; });

  // label
  auto *label = app.add_subcommand("label", "Construct a labelling");
  std::string label_path = "-", mode = "linear", algorithm = "auto";
  int lh = 0, lp = 1;
  bool dot = false;
  label->add_option("tree", label_path, "tree file, - for stdin");
  label->add_option("--mode", mode, "linear or cyclic")->check(CLI::IsMember({"linear", "cyclic"}));
  label->add_option("--h", lh, "distance-1 separation")->required();
  label->add_option("--p", lp, "distance-2 and distance-3 separation");
  label->add_option("--algorithm", algorithm,
                    "auto, general, depth2, depth3 (linear); auto, large, h11, depth2 (cyclic)");
  label->add_flag("--dot", dot, "print a DOT graph instead of JSON");
  label->callback([&] {
    const RootedTree t = read_tree(label_path);
    const Construction c = mode == "linear" ? label_linear_auto(t, lh, lp, algorithm)
                                            : label_cyclic_auto(t, lh, lp, algorithm);
    if (dot)
      std::cout << io::to_dot(t, &c.labelling);
    else
      std::cout << io::construction_json(c).dump() << "\n";
  });

  // validate
  auto *val = app.add_subcommand("validate", "Check a labelling; violations as JSON lines");
  std::string val_tree, val_labels;
  int vh = 0, vp = 1;
  std::optional<int> vh2, vh3;
  bool check_elegant = false, check_super = false;
  val->add_option("tree", val_tree, "tree file")->required();
  val->add_option("labels", val_labels, "labelling JSON file")->required();
  val->add_option("--h", vh, "distance-1 separation")->required();
  val->add_option("--p", vp, "distance-2 and distance-3 separation");
  val->add_option("--h2", vh2, "distance-2 separation (overrides --p)");
  val->add_option("--h3", vh3, "distance-3 separation (overrides --p)");
  val->add_flag("--check-elegant", check_elegant, "also require an elegance certificate");
  val->add_flag("--check-super", check_super, "also require super elegance");
  val->callback([&] {
    const RootedTree t = read_tree(val_tree);
    const Labelling f = io::parse_labelling(slurp(val_labels));
    const SeparationParams sp{vh, vh2.value_or(vp), vh3.value_or(vp)};
    const auto violations = validate(t, f, sp);
    for (const auto &v : violations)
      std::cout << io::violation_json(v).dump() << "\n";
    bool ok = violations.empty();
    if (check_elegant && !check_elegance(t, f)) {
      std::cout << json{{"check", "elegant"}, {"passed", false}}.dump() << "\n";
      ok = false;
    }
    if (check_super && !is_super_elegant(t, f)) {
      std::cout << json{{"check", "super_elegant"}, {"passed", false}}.dump() << "\n";
      ok = false;
    }
    code = ok ? kOk : kFailed;
  });

  // bounds
  auto *bnd = app.add_subcommand("bounds", "Print the BoundsReport as JSON");
  std::string bnd_path = "-", quantity = "lambda", bnd_family;
  int bh = 0, bp = 1, bm = 2, bk = 2;
  bnd->add_option("tree", bnd_path, "tree file, - for stdin");
  bnd->add_option("--h", bh, "distance-1 separation")->required();
  bnd->add_option("--p", bp, "distance-2 and distance-3 separation");
  bnd->add_option("--quantity", quantity, "lambda or sigma")->check(CLI::IsMember({"lambda", "sigma"}));
  bnd->add_option("--family", bnd_family, "use family formulas: mary or regular")
      ->check(CLI::IsMember({"mary", "regular"}));
  bnd->add_option("-m", bm, "branching (with --family)");
  bnd->add_option("-k", bk, "depth (with --family)");
  bnd->callback([&] {
    BoundsReport r;
    if (!bnd_family.empty()) {
      const FamilySpec spec{parse_family(bnd_family), bm, bk};
      r = quantity == "lambda" ? lambda_family_exact(spec, bh, bp) : sigma_family_exact(spec, bh, bp);
    } else {
      const RootedTree t = read_tree(bnd_path);
      r = quantity == "lambda" ? lambda_bounds(t, bh, bp) : sigma_bounds(t, bh, bp);
    }
    std::cout << io::bounds_json(r).dump() << "\n";
  });

  // oracle
  auto *orc = app.add_subcommand("oracle", "Exact lambda or sigma by exhaustive search");
  std::string orc_path = "-", orc_quantity = "lambda";
  int oh1 = 0, oh2 = 1;
  std::optional<int> oh3;
  std::uint64_t budget = SolverConfig{}.node_budget;
  orc->add_option("tree", orc_path, "tree file, - for stdin");
  orc->add_option("--h", oh1, "distance-1 separation")->required();
  orc->add_option("--h2", oh2, "distance-2 separation");
  orc->add_option("--h3", oh3, "distance-3 separation (default: --h2)");
  orc->add_option("--quantity", orc_quantity, "lambda or sigma")
      ->check(CLI::IsMember({"lambda", "sigma"}));
  orc->add_option("--budget", budget, "search node budget")->check(CLI::PositiveNumber);
  orc->callback([&] {
    const RootedTree t = read_tree(orc_path);
    SolverConfig cfg;
    cfg.node_budget = budget;
    const int h3 = oh3.value_or(oh2);
    const OracleResult r = orc_quantity == "lambda" ? exact_lambda(t, oh1, oh2, h3, cfg)
                                                    : exact_sigma(t, oh1, oh2, h3, cfg);
    std::cout << io::oracle_json(r).dump() << "\n";
    code = r.budget_hit ? kBudget : kOk;
  });

  // verify
  auto *ver = app.add_subcommand("verify", "Run the acceptance checks");
  VerifyGrid grid;
  std::optional<std::string> criteria, vm, vk, vhs, vps;
  bool as_json = false;
  ver->add_option("--criteria", criteria, "comma-separated criterion numbers (empty: none)");
  ver->add_option("--m", vm, "comma-separated m values");
  ver->add_option("--k", vk, "comma-separated k values");
  ver->add_option("--h", vhs, "comma-separated h values");
  ver->add_option("--p", vps, "comma-separated p values");
  ver->add_option("--random-trees", grid.random_trees, "random trees for the ratio checks");
  ver->add_option("--seed", grid.seed, "seed for the random trees");
  ver->add_option("--budget", grid.budget, "oracle node budget per call")->check(CLI::PositiveNumber);
  ver->add_option("--max-oracle-vertices", grid.max_oracle_vertices,
                  "larger trees skip the oracle");
  ver->add_flag("--json", as_json, "print the report as JSON");
  ver->callback([&] {
    if (criteria)
      grid.criteria = parse_list(*criteria);
    if (vm)
      grid.m = parse_list(*vm);
    if (vk)
      grid.k = parse_list(*vk);
    if (vhs)
      grid.h = parse_list(*vhs);
    if (vps)
      grid.p = parse_list(*vps);
    const VerifyReport rep = cmd_verify(grid);
    if (as_json)
      std::cout << io::verify_json(rep).dump(2) << "\n";
    else
      std::cout << io::verify_table(rep);
    code = rep.passed() ? kOk : kFailed;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
