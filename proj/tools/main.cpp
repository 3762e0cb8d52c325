// rumident: exact identification toolkit for random utility models on
// finite alternative sets.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "rum/json_io.hpp"

namespace {

using namespace rum;

constexpr const char* kVersion = "0.1.0";

int universe_cap() {
  const char* env = std::getenv("RUMIDENT_CAP");
  if (!env) return Universe::kHardCap;
  int cap = std::atoi(env);
  if (cap <= 0) return Universe::kHardCap;
  if (cap > Universe::kHardCap)
    std::cerr << "warning: RUMIDENT_CAP=" << cap
              << " enables an unsupported scale; exact enumeration grows "
                 "factorially\n";
  return cap;
}

std::vector<std::string> parse_labels(const std::string& text) {
  std::vector<std::string> labels;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) labels.push_back(item);
  } else {
    for (char c : text) labels.push_back(std::string(1, c));
  }
  return labels;
}

Universe make_universe(const std::string& text) {
  Universe u(parse_labels(text), universe_cap());
  if (u.needs_cost_warning())
    std::cerr << "warning: " << u.size()
              << " alternatives; exact enumeration over " << u.size()
              << "! orders is expensive\n";
  return u;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  in >> j;
  return j;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

SupportRestriction parse_support(const UniverseContext& ctx,
                                 const std::string& text) {
  std::vector<LinearOrder> orders;
  for (const auto& s : split_commas(text))
    orders.push_back(LinearOrder::from_labels(ctx.universe(), s));
  return SupportRestriction::of_orders(ctx, orders);
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split_commas(text)) out.push_back(std::stod(s));
  return out;
}

// -------- shared state over the subcommands --------

struct Cli {
  std::string out_path;
  long seed = 0;

  std::string universe_text;
  std::string support_text;
  std::string dist_path, from_path, to_path, swaps_path;
  std::string rule_path, q_path;
  std::size_t vertex_cap = 64;

  std::string model_kind = "logit";
  std::string base_label;
  std::string components_text;
  std::string input_path;
  std::string theta_text;
  std::string grid_text;
  std::string grid_file;
  double h = 1e-6;
  double tol = 1e-8;

  std::string graph_kind = "conjugate";
  std::string format = "json";
  std::string example;

  // lazily built context: several inputs can pin the universe
  std::optional<UniverseContext> ctx;
  std::optional<RyserContext> rc;

  UniverseContext& context() {
    if (!ctx) {
      if (universe_text.empty())
        throw DomainError("--universe is required for this subcommand");
      ctx.emplace(make_universe(universe_text));
    }
    return *ctx;
  }
  UniverseContext& context_for_distribution(const json& j) {
    if (!ctx) {
      if (!universe_text.empty()) return context();
      ctx.emplace(universe_from_distribution_json(j, universe_cap()));
      if (ctx->universe().needs_cost_warning())
        std::cerr << "warning: " << ctx->universe().size()
                  << " alternatives; exact enumeration is expensive\n";
    }
    return *ctx;
  }
  UniverseContext& context_for_rule(const json& j) {
    if (!ctx) {
      if (!universe_text.empty()) return context();
      ctx.emplace(universe_from_json(j, universe_cap()));
    }
    return *ctx;
  }
  RyserContext& ryser() {
    if (!rc) rc.emplace(context());
    return *rc;
  }
};

Distribution load_distribution(Cli& cli, const std::string& path) {
  json j = load_json(path);
  auto& ctx = cli.context_for_distribution(j);
  return distribution_from_json(ctx, j);
}

ParametricModel build_model(Cli& cli) {
  auto& ctx = cli.context();
  if (cli.model_kind == "logit") {
    if (cli.base_label.empty())
      throw DomainError("--base is required for the logit model");
    return logit_model(ctx, ctx.universe().index_of(cli.base_label));
  }
  if (cli.model_kind == "mixture") {
    std::vector<Distribution> comps;
    for (const auto& f : split_commas(cli.components_text))
      comps.push_back(distribution_from_json(ctx, load_json(f)));
    return mixture_model(ctx, comps);
  }
  if (cli.model_kind == "external") {
    std::ifstream in(cli.input_path);
    if (!in) throw ParseError("cannot open " + cli.input_path);
    return external_model(ctx, external_rows_from_jsonl(ctx, in));
  }
  throw DomainError("unknown model kind: " + cli.model_kind);
}

std::vector<std::vector<double>> build_grid(Cli& cli, const ParametricModel& m) {
  if (!cli.grid_file.empty()) {
    json j = load_json(cli.grid_file);
    std::vector<std::vector<double>> grid;
    for (const auto& row : j) grid.push_back(row.get<std::vector<double>>());
    return grid;
  }
  if (!cli.grid_text.empty()) {
    std::vector<std::string> parts;
    std::stringstream ss(cli.grid_text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw DomainError("--grid expects lo:hi:points");
    return cartesian_grid(m.dim_theta, std::stod(parts[0]), std::stod(parts[1]),
                          std::stoi(parts[2]));
  }
  throw DomainError("scan needs --grid or --grid-file");
}

// -------- subcommand handlers --------

json run_orders(Cli& cli) {
  auto& ctx = cli.context();
  json orders = json::array();
  for (const auto& o : ctx.orders())
    orders.push_back(order_to_json(ctx.universe(), o));
  return json{{"count", ctx.order_count()}, {"orders", orders}};
}

json run_squares(Cli& cli) {
  auto& ctx = cli.context();
  json out = json::array();
  for (const auto& s : ctx.squares()) out.push_back(square_to_json(ctx, s));
  return json{{"count", ctx.squares().size()}, {"squares", out}};
}

json run_basis(Cli& cli) {
  auto& rc = cli.ryser();
  auto j = basis_to_json(rc.universe(), rc.basis());
  j["nullspace_dim"] = rc.phi_nullspace().size();
  return j;
}

json run_check_ident(Cli& cli) {
  auto& ctx = cli.context();
  auto& rc = cli.ryser();
  if (cli.support_text.empty()) throw DomainError("--support is required");
  auto s = parse_support(ctx, cli.support_text);
  return json{{"identified", is_identified_support(rc, s)},
              {"has_separable_pair", has_separable_pair(ctx, s)},
              {"contains_conjugate_square", contains_conjugate_square(ctx, s)},
              {"ryser_intersection_dim", ryser_support_intersection_dim(rc, s)}};
}

json run_point_ident(Cli& cli) {
  auto mu = load_distribution(cli, cli.dist_path);
  auto& ctx = *cli.ctx;
  return json{{"point_identified", point_identified_unrestricted(ctx, mu)}};
}

json run_moebius(Cli& cli) {
  if (!cli.rule_path.empty()) {
    json j = load_json(cli.rule_path);
    auto& ctx = cli.context_for_rule(j);
    auto rule = rule_from_json(ctx, j);
    auto q = moebius_inverse(ctx, rule);
    bool nonneg = true;
    for (const auto& v : q.q)
      if (v < 0) nonneg = false;
    return json{{"q", bm_table_to_json(ctx, q)}, {"all_nonnegative", nonneg}};
  }
  if (!cli.q_path.empty()) {
    auto& ctx = cli.context();
    json j = load_json(cli.q_path);
    BlockMarschakTable q;
    q.q.assign(ctx.cells().size(), Rational(0));
    for (const auto& cell : j) {
      Menu m;
      for (const auto& l : cell.at("menu"))
        m.mask |= 1u << ctx.universe().index_of(l.get<std::string>());
      auto row = ctx.cells().row_of(
          ctx.universe().index_of(cell.at("x").get<std::string>()), m);
      q.q[row] = parse_rational(cell.at("q").get<std::string>());
    }
    auto fwd = moebius_forward(ctx, q);
    json table = json::array();
    const auto& cells = ctx.cells();
    for (std::size_t row = 0; row < cells.size(); ++row) {
      json menu_labels = json::array();
      for (int x : cells.menu(row).members())
        menu_labels.push_back(ctx.universe().label(x));
      table.push_back(json{{"x", ctx.universe().label(cells.alt(row))},
                           {"menu", menu_labels},
                           {"rho", to_string(fwd.table.v[row])}});
    }
    return json{{"table", table}, {"valid", fwd.valid}};
  }
  throw DomainError("moebius needs --rule or --q");
}

json run_rationalize(Cli& cli) {
  json j = load_json(cli.rule_path);
  auto& ctx = cli.context_for_rule(j);
  auto rule = rule_from_json(ctx, j);
  auto mu = rationalize(ctx, rule);
  if (!mu)
    throw DomainError("rule is not rationalizable by any random utility model");
  return json{{"rationalizable", true},
              {"distribution", distribution_to_json(ctx, *mu)}};
}

json run_equiv_class(Cli& cli) {
  auto mu = load_distribution(cli, cli.dist_path);
  auto& ctx = *cli.ctx;
  auto& rc = cli.ryser();
  SupportRestriction s = cli.support_text.empty()
                             ? SupportRestriction::full(ctx)
                             : parse_support(ctx, cli.support_text);
  return class_report_to_json(ctx, equivalence_class(rc, mu, s));
}

json run_extreme(Cli& cli) {
  auto mu = load_distribution(cli, cli.dist_path);
  auto& ctx = *cli.ctx;
  auto& rc = cli.ryser();
  SupportRestriction s = cli.support_text.empty()
                             ? SupportRestriction::full(ctx)
                             : parse_support(ctx, cli.support_text);
  return json{{"extreme", is_extreme(rc, mu, s)}};
}

json run_enumerate_vertices(Cli& cli) {
  auto mu = load_distribution(cli, cli.dist_path);
  auto& ctx = *cli.ctx;
  auto& rc = cli.ryser();
  SupportRestriction s = cli.support_text.empty()
                             ? SupportRestriction::full(ctx)
                             : parse_support(ctx, cli.support_text);
  auto verts = enumerate_extreme_points(rc, mu, s, cli.vertex_cap);
  json out = json::array();
  for (const auto& v : verts.vertices) out.push_back(distribution_to_json(ctx, v));
  return json{{"count", verts.vertices.size()},
              {"vertices", out},
              {"truncated", verts.truncated}};
}

json run_zipper(Cli& cli) {
  auto source = load_distribution(cli, cli.from_path);
  auto& ctx = *cli.ctx;
  auto target = distribution_from_json(ctx, load_json(cli.to_path));
  auto seq = zipper(ctx, source, target);
  return json{{"step_count", seq.steps.size()},
              {"steps", swap_sequence_to_json(ctx, seq)}};
}

json run_apply_swaps(Cli& cli) {
  auto mu = load_distribution(cli, cli.dist_path);
  auto& ctx = *cli.ctx;
  auto seq = swap_sequence_from_json(ctx, load_json(cli.swaps_path));
  auto result = apply_swaps(ctx, mu, seq);
  return json{{"distribution", distribution_to_json(ctx, result)}};
}

json run_jacobian(Cli& cli) {
  auto model = build_model(cli);
  auto& rc = cli.ryser();
  if (cli.theta_text.empty()) throw DomainError("--theta is required");
  auto rep =
      jacobian_fbar(rc, model, parse_doubles(cli.theta_text), cli.h, cli.tol);
  return jacobian_report_to_json(rep);
}

json run_scan(Cli& cli) {
  auto model = build_model(cli);
  auto& rc = cli.ryser();
  auto grid = build_grid(cli, model);
  return scan_result_to_json(
      scan_identification(rc, model, grid, cli.h, cli.tol));
}

json run_graph(Cli& cli) {
  auto& ctx = cli.context();
  if (cli.format != "dot" && cli.format != "json")
    throw DomainError("--format must be dot or json");
  const bool dot = cli.format == "dot";
  auto wrap = [&](const std::string& dot_text, json j) {
    return dot ? json{{"dot", dot_text}} : std::move(j);
  };
  if (cli.graph_kind == "conjugate") {
    auto g = conjugate_graph(ctx);
    return wrap(to_dot(ctx, g), graph_to_json(ctx, g));
  }
  if (cli.graph_kind == "line") {
    auto g = line_graph(conjugate_graph(ctx));
    return wrap(to_dot(ctx, g), graph_to_json(ctx, g));
  }
  if (cli.graph_kind == "multigraph") {
    auto g = conjugate_inverse_multigraph(line_graph(conjugate_graph(ctx)));
    return wrap(to_dot(ctx, g), graph_to_json(ctx, g));
  }
  if (cli.graph_kind == "condensation") {
    auto g = condensation(
        conjugate_inverse_multigraph(line_graph(conjugate_graph(ctx))));
    return wrap(to_dot(ctx, g), graph_to_json(ctx, g));
  }
  if (cli.graph_kind == "polytope") {
    auto g = polytope_graph(ctx);
    return wrap(to_dot(ctx, g), graph_to_json(ctx, g));
  }
  throw DomainError("unknown graph kind: " + cli.graph_kind);
}

json run_check_observation(Cli& cli) {
  auto& ctx = cli.context();
  auto mg = conjugate_inverse_multigraph(line_graph(conjugate_graph(ctx)));
  auto lhs = condensation(mg);
  auto rhs = polytope_graph(ctx);
  bool equal = lhs.edges == rhs.edges && lhs.node_count == rhs.node_count;
  auto cycles = find_swap_cycles(ctx, mg);
  bool cycles_match =
      std::set<ConjugateSquare>(cycles.begin(), cycles.end()) ==
      std::set<ConjugateSquare>(ctx.squares().begin(), ctx.squares().end());
  return json{{"holds", equal && cycles_match},
              {"condensation_equals_polytope_graph", equal},
              {"cycles_match_squares", cycles_match},
              {"edges", lhs.edges.size()},
              {"squares", ctx.squares().size()}};
}

// -------- reproduction bundles --------

json run_repro(Cli& cli) {
  json checks = json::array();
  auto check = [&](const std::string& name, bool ok) {
    checks.push_back(json{{"name", name}, {"ok", ok}});
  };

  if (cli.example == "fishburn") {
    UniverseContext ctx(Universe({"a", "b", "c", "d"}));
    RyserContext rc(ctx);
    auto o = [&](const char* s) {
      return LinearOrder::from_labels(ctx.universe(), s);
    };
    auto mu12 =
        Distribution::from_measure(ctx, uniform_on(ctx, {o("abcd"), o("badc")}));
    auto mu34 =
        Distribution::from_measure(ctx, uniform_on(ctx, {o("abdc"), o("bacd")}));
    check("phi(mu12) == phi(mu34)", phi(ctx, mu12) == phi(ctx, mu34));
    auto s = SupportRestriction::of_orders(
        ctx, {o("abcd"), o("badc"), o("abdc"), o("bacd")});
    auto report = equivalence_class(rc, mu12, s);
    check("class_dim == 1", report.class_dim == 1);
    check("mu12 extreme", report.extreme);
    auto verts = enumerate_extreme_points(rc, mu12, s);
    bool vertex_set =
        verts.vertices.size() == 2 &&
        ((verts.vertices[0] == mu12 && verts.vertices[1] == mu34) ||
         (verts.vertices[0] == mu34 && verts.vertices[1] == mu12));
    check("vertex set is {mu12, mu34}", vertex_set);
    auto seq = zipper(ctx, mu12, mu34);
    check("zipper emits one step", seq.steps.size() == 1);
    check("zipper weight 1/2",
          seq.steps.size() == 1 && seq.steps[0].weight == make_rational(1, 2));
    check("apply_swaps round trip", apply_swaps(ctx, mu12, seq) == mu34);
    check("flow feasible", check_flow(ctx, mu12).second);
  } else if (cli.example == "six-orders") {
    UniverseContext ctx(Universe({"a", "b", "c", "d", "e", "f"}));
    RyserContext rc(ctx);
    auto o = [&](const char* s) {
      return LinearOrder::from_labels(ctx.universe(), s);
    };
    std::vector<LinearOrder> six = {o("abcdef"), o("baefcd"), o("cdbafe"),
                                    o("abefcd"), o("bacdfe"), o("cdbaef")};
    auto mu123 =
        Distribution::from_measure(ctx, uniform_on(ctx, {six[0], six[1], six[2]}));
    auto mu456 =
        Distribution::from_measure(ctx, uniform_on(ctx, {six[3], six[4], six[5]}));
    check("mu123 equivalent to mu456", behaviorally_equivalent(ctx, mu123, mu456));
    auto s = SupportRestriction::of_orders(ctx, six);
    check("support has a separable pair", has_separable_pair(ctx, s));
    check("support contains no conjugate square",
          !contains_conjugate_square(ctx, s));
    check("support not identified", !is_identified_support(rc, s));
    auto seq = zipper(ctx, mu123, mu456);
    check("zipper round trip", apply_swaps(ctx, mu123, seq) == mu456);
    check("flow feasible", check_flow(ctx, mu123).second);
  } else if (cli.example == "turansick") {
    UniverseContext four(Universe({"a", "b", "c", "d"}));
    RyserContext rc4(four);
    auto o4 = [&](const char* s) {
      return LinearOrder::from_labels(four.universe(), s);
    };
    auto fishburn = SupportRestriction::of_orders(
        four, {o4("abcd"), o4("badc"), o4("abdc"), o4("bacd")});
    auto pair_only =
        SupportRestriction::of_orders(four, {o4("abcd"), o4("badc")});
    auto no_pair = SupportRestriction::of_orders(four, {o4("abcd"), o4("abdc")});
    check("fishburn: separable pair", has_separable_pair(four, fishburn));
    check("fishburn: square contained",
          contains_conjugate_square(four, fishburn));
    check("fishburn: not identified", !is_identified_support(rc4, fishburn));
    check("pair-only: separable pair", has_separable_pair(four, pair_only));
    check("pair-only: no square", !contains_conjugate_square(four, pair_only));
    check("pair-only: identified", is_identified_support(rc4, pair_only));
    check("no-pair: identified", is_identified_support(rc4, no_pair));
    auto mu12 =
        Distribution::from_measure(four, uniform_on(four, {o4("abcd"), o4("badc")}));
    check("mu12 not point identified",
          !point_identified_unrestricted(four, mu12));
    auto pm = Distribution::from_measure(four, point_mass(four, o4("abcd")));
    check("point mass point identified",
          point_identified_unrestricted(four, pm));
  } else if (cli.example == "appendixE") {
    UniverseContext ctx(Universe({"a", "b", "c", "d"}));
    auto g = conjugate_graph(ctx);
    check("conjugate graph 24 nodes", g.nodes.size() == 24);
    check("conjugate graph 24 edges", g.edges.size() == 24);
    auto mg = conjugate_inverse_multigraph(line_graph(g));
    check("multigraph one node per order", mg.node_count == 24);
    auto lhs = condensation(mg);
    auto rhs = polytope_graph(ctx);
    check("condensation equals polytope graph",
          lhs.edges == rhs.edges && lhs.node_count == rhs.node_count);
    auto cycles = find_swap_cycles(ctx, mg);
    check("4-cycles are the 6 squares",
          cycles.size() == 6 &&
              std::set<ConjugateSquare>(cycles.begin(), cycles.end()) ==
                  std::set<ConjugateSquare>(ctx.squares().begin(),
                                            ctx.squares().end()));
  } else {
    throw DomainError("unknown example: " + cli.example +
                      " (expected fishburn, six-orders, turansick, appendixE)");
  }

  bool all_ok = true;
  for (const auto& c : checks)
    if (!c["ok"].get<bool>()) all_ok = false;
  if (!all_ok) throw DomainError("repro checks failed: " + checks.dump());
  return json{{"example", cli.example}, {"checks", checks}, {"all_ok", all_ok}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact identification analysis for random utility models"};
  app.require_subcommand(1);

  Cli cli;
  app.add_option("--out", cli.out_path, "write the result envelope to a file");
  app.add_option("--seed", cli.seed, "seed recorded in the result metadata");

  auto add_universe = [&](CLI::App* cmd) {
    cmd->add_option("--universe", cli.universe_text,
                    "alternative labels, e.g. abcd or red,green,blue");
  };

  auto* orders = app.add_subcommand("orders", "enumerate all linear orders");
  add_universe(orders);
  auto* squares = app.add_subcommand("squares", "enumerate conjugate squares");
  add_universe(squares);
  auto* basis =
      app.add_subcommand("basis", "swap-span basis of the Ryser subspace");
  add_universe(basis);

  auto* check_ident =
      app.add_subcommand("check-ident", "test a support restriction");
  add_universe(check_ident);
  check_ident->add_option("--support", cli.support_text,
                          "comma-separated orders");

  auto* point_ident =
      app.add_subcommand("point-ident", "unrestricted point identification");
  add_universe(point_ident);
  point_ident->add_option("--dist", cli.dist_path, "distribution JSON file")
      ->required();

  auto* moebius = app.add_subcommand("moebius", "Block-Marschak transforms");
  add_universe(moebius);
  moebius->add_option("--rule", cli.rule_path, "rule JSON: compute q");
  moebius->add_option("--q", cli.q_path, "q JSON: compute the rule");

  auto* rationalize_cmd =
      app.add_subcommand("rationalize", "find a rationalizing distribution");
  add_universe(rationalize_cmd);
  rationalize_cmd->add_option("--rule", cli.rule_path, "rule JSON file")
      ->required();

  auto* equiv = app.add_subcommand("equiv-class", "equivalence class geometry");
  add_universe(equiv);
  equiv->add_option("--dist", cli.dist_path)->required();
  equiv->add_option("--support", cli.support_text);

  auto* extreme = app.add_subcommand("extreme", "extreme point test");
  add_universe(extreme);
  extreme->add_option("--dist", cli.dist_path)->required();
  extreme->add_option("--support", cli.support_text);

  auto* vertices = app.add_subcommand("enumerate-vertices",
                                      "vertices of the class polytope");
  add_universe(vertices);
  vertices->add_option("--dist", cli.dist_path)->required();
  vertices->add_option("--support", cli.support_text);
  vertices->add_option("--cap", cli.vertex_cap, "maximum vertices returned");

  auto* zipper_cmd =
      app.add_subcommand("zipper", "swap sequence between equivalents");
  add_universe(zipper_cmd);
  zipper_cmd->add_option("--from", cli.from_path)->required();
  zipper_cmd->add_option("--to", cli.to_path)->required();

  auto* apply = app.add_subcommand("apply-swaps", "apply a swap sequence");
  add_universe(apply);
  apply->add_option("--dist", cli.dist_path)->required();
  apply->add_option("--swaps", cli.swaps_path)->required();

  auto add_model_opts = [&](CLI::App* cmd) {
    cmd->set_help_flag("--help", "print help");  // frees -h for the step flag
    add_universe(cmd);
    cmd->add_option("--model", cli.model_kind, "logit | mixture | external");
    cmd->add_option("--base", cli.base_label, "logit base alternative");
    cmd->add_option("--components", cli.components_text,
                    "mixture component files, comma separated");
    cmd->add_option("--input", cli.input_path, "external model JSON-lines file");
    cmd->add_option("--h", cli.h, "finite difference step");
    cmd->add_option("--tol", cli.tol, "singular value tolerance");
  };
  auto* jacobian = app.add_subcommand("jacobian", "projected Jacobian report");
  add_model_opts(jacobian);
  jacobian->add_option("--theta", cli.theta_text, "comma-separated parameters");

  auto* scan = app.add_subcommand("scan", "grid identification scan");
  add_model_opts(scan);
  scan->add_option("--grid", cli.grid_text, "lo:hi:points per axis");
  scan->add_option("--grid-file", cli.grid_file, "JSON array of theta rows");

  auto* graph = app.add_subcommand("graph", "segment and polytope graphs");
  add_universe(graph);
  graph->add_option("--kind", cli.graph_kind,
                    "conjugate | line | multigraph | condensation | polytope");
  graph->add_option("--format", cli.format, "dot | json");

  auto* observation =
      app.add_subcommand("check-observation", "condensation vs polytope graph");
  add_universe(observation);

  auto* repro = app.add_subcommand("repro", "replay a worked example");
  repro->add_option("--example", cli.example,
                    "fishburn | six-orders | turansick | appendixE")
      ->required();

  for (auto* sc : app.get_subcommands(nullptr)) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors exit 1, --help exits 0
  }

  auto start = std::chrono::steady_clock::now();
  json envelope;
  int exit_code = 0;
  try {
    json result;
    if (orders->parsed()) result = run_orders(cli);
    else if (squares->parsed()) result = run_squares(cli);
    else if (basis->parsed()) result = run_basis(cli);
    else if (check_ident->parsed()) result = run_check_ident(cli);
    else if (point_ident->parsed()) result = run_point_ident(cli);
    else if (moebius->parsed()) result = run_moebius(cli);
    else if (rationalize_cmd->parsed()) result = run_rationalize(cli);
    else if (equiv->parsed()) result = run_equiv_class(cli);
    else if (extreme->parsed()) result = run_extreme(cli);
    else if (vertices->parsed()) result = run_enumerate_vertices(cli);
    else if (zipper_cmd->parsed()) result = run_zipper(cli);
    else if (apply->parsed()) result = run_apply_swaps(cli);
    else if (jacobian->parsed()) result = run_jacobian(cli);
    else if (scan->parsed()) result = run_scan(cli);
    else if (graph->parsed()) result = run_graph(cli);
    else if (observation->parsed()) result = run_check_observation(cli);
    else if (repro->parsed()) result = run_repro(cli);
    envelope["ok"] = true;
    envelope["result"] = std::move(result);
  } catch (const ParseError& e) {
    envelope["ok"] = false;
    envelope["error"] = json{{"kind", "parse"}, {"message", e.what()}};
    exit_code = 2;
  } catch (const CapExceeded& e) {
    envelope["ok"] = false;
    envelope["error"] = json{{"kind", "cap"}, {"message", e.what()}};
    exit_code = 2;
  } catch (const DomainError& e) {
    envelope["ok"] = false;
    envelope["error"] = json{{"kind", "domain"}, {"message", e.what()}};
    exit_code = 2;
  } catch (const std::exception& e) {
    envelope["ok"] = false;
    envelope["error"] = json{{"kind", "internal"}, {"message", e.what()}};
    exit_code = 2;
  }

  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  envelope["meta"] = json{{"versions", {{"rumident", kVersion}}},
                          {"seed", cli.seed},
                          {"timing", {{"elapsed_ms", elapsed}}}};

  std::string text = envelope.dump() + "\n";
  if (!cli.out_path.empty()) {
    std::ofstream out(cli.out_path);
    out << text;
  } else {
    std::cout << text;
  }
  return exit_code;
}
