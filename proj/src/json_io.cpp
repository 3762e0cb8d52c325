#include "rum/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <set>

namespace rum {

std::string format_double17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json universe_to_json(const Universe& u) {
  return json{{"labels", u.labels()}};
}

Universe universe_from_json(const json& j, int cap) {
  if (!j.is_object() || !j.contains("labels") || !j["labels"].is_array())
    throw ParseError("universe JSON needs a labels array");
  std::vector<std::string> labels;
  for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
  return Universe(std::move(labels), cap);
}

json order_to_json(const Universe& u, const LinearOrder& o) {
  if (u.single_char_labels()) return o.to_string(u);
  json arr = json::array();
  for (auto i : o.ranking) arr.push_back(u.label(i));
  return arr;
}

LinearOrder order_from_json(const Universe& u, const json& j) {
  if (j.is_string()) return LinearOrder::from_labels(u, j.get<std::string>());
  if (j.is_array()) {
    LinearOrder o;
    for (const auto& l : j)
      o.ranking.push_back(
          static_cast<std::uint8_t>(u.index_of(l.get<std::string>())));
    if (o.size() != u.size()) throw ParseError("order does not rank every alternative");
    std::vector<bool> used(u.size(), false);
    for (auto a : o.ranking) {
      if (used[a]) throw ParseError("order repeats an alternative");
      used[a] = true;
    }
    return o;
  }
  throw ParseError("order must be a string or a label array");
}

namespace {

std::string order_key(const Universe& u, const LinearOrder& o) {
  if (u.single_char_labels()) return o.to_string(u);
  return o.to_string(u);  // comma-separated for multi-char labels
}

LinearOrder order_from_key(const Universe& u, const std::string& key) {
  return LinearOrder::from_labels(u, key);
}

json weights_to_json(const UniverseContext& ctx, const RatVec& w) {
  json out = json::object();
  for (std::size_t o = 0; o < w.size(); ++o)
    if (w[o] != 0)
      out[order_key(ctx.universe(), ctx.order(o))] = to_string(w[o]);
  return out;
}

RatVec weights_from_json(const UniverseContext& ctx, const json& j) {
  if (!j.is_object()) throw ParseError("weights must be an object");
  RatVec w(ctx.order_count(), Rational(0));
  for (const auto& [key, val] : j.items()) {
    auto id = ctx.id_of(order_from_key(ctx.universe(), key));
    w[id] = parse_rational(val.get<std::string>());
  }
  return w;
}

}  // namespace

json distribution_to_json(const UniverseContext& ctx, const Distribution& d) {
  return json{{"labels", ctx.universe().labels()},
              {"weights", weights_to_json(ctx, d.w)}};
}

Distribution distribution_from_json(const UniverseContext& ctx, const json& j) {
  if (!j.is_object() || !j.contains("weights"))
    throw ParseError("distribution JSON needs a weights object");
  return Distribution::make(ctx, weights_from_json(ctx, j["weights"]));
}

Universe universe_from_distribution_json(const json& j, int cap) {
  if (j.is_object() && j.contains("labels")) return universe_from_json(j, cap);
  if (!j.is_object() || !j.contains("weights") || !j["weights"].is_object() ||
      j["weights"].empty())
    throw ParseError("cannot infer a universe: no labels and no weights");
  const std::string key = j["weights"].begin().key();
  if (key.find(',') != std::string::npos)
    throw ParseError("multi-character labels need an explicit labels field");
  std::set<char> chars(key.begin(), key.end());
  std::vector<std::string> labels;
  for (char c : chars) labels.push_back(std::string(1, c));
  return Universe(std::move(labels), cap);
}

json signed_measure_to_json(const UniverseContext& ctx, const SignedMeasure& m) {
  return json{{"weights", weights_to_json(ctx, m.w)}};
}

SignedMeasure signed_measure_from_json(const UniverseContext& ctx,
                                       const json& j) {
  if (!j.is_object() || !j.contains("weights"))
    throw ParseError("signed measure JSON needs a weights object");
  return SignedMeasure{weights_from_json(ctx, j["weights"])};
}

json rule_to_json(const UniverseContext& ctx, const RandomChoiceRule& r) {
  const auto& cells = ctx.cells();
  json menus = json::array();
  // group rows by menu, preserving the canonical menu order
  std::uint32_t current = 0;
  json probs;
  json menu_labels;
  auto flush = [&]() {
    if (current != 0)
      menus.push_back(json{{"menu", menu_labels}, {"probs", probs}});
  };
  for (std::size_t row = 0; row < cells.size(); ++row) {
    Menu m = cells.menu(row);
    if (m.mask != current) {
      flush();
      current = m.mask;
      probs = json::object();
      menu_labels = json::array();
      for (int x : m.members()) menu_labels.push_back(ctx.universe().label(x));
    }
    probs[ctx.universe().label(cells.alt(row))] = to_string(r.table.v[row]);
  }
  flush();
  return json{{"labels", ctx.universe().labels()}, {"menus", menus}};
}

RandomChoiceRule rule_from_json(const UniverseContext& ctx, const json& j) {
  if (!j.is_object() || !j.contains("menus") || !j["menus"].is_array())
    throw ParseError("rule JSON needs a menus array");
  ChoiceTable t;
  t.v.assign(ctx.cells().size(), Rational(0));
  std::vector<bool> seen(t.v.size(), false);
  for (const auto& entry : j["menus"]) {
    if (!entry.contains("menu") || !entry.contains("probs"))
      throw ParseError("menu entry needs menu and probs");
    Menu m;
    for (const auto& l : entry["menu"])
      m.mask |= 1u << ctx.universe().index_of(l.get<std::string>());
    for (const auto& [label, val] : entry["probs"].items()) {
      auto row = ctx.cells().row_of(ctx.universe().index_of(label), m);
      t.v[row] = parse_rational(val.get<std::string>());
      seen[row] = true;
    }
  }
  for (bool s : seen)
    if (!s) throw ParseError("rule JSON does not cover every (x, menu) cell");
  return RandomChoiceRule::make(ctx, std::move(t));
}

json bm_table_to_json(const UniverseContext& ctx, const BlockMarschakTable& q) {
  const auto& cells = ctx.cells();
  json out = json::array();
  for (std::size_t row = 0; row < cells.size(); ++row) {
    json menu_labels = json::array();
    for (int x : cells.menu(row).members())
      menu_labels.push_back(ctx.universe().label(x));
    out.push_back(json{{"x", ctx.universe().label(cells.alt(row))},
                       {"menu", menu_labels},
                       {"q", to_string(q.q[row])}});
  }
  return out;
}

json square_to_json(const UniverseContext& ctx, const ConjugateSquare& s) {
  const auto& u = ctx.universe();
  return json{{"top", json::array({order_to_json(u, s.o1), order_to_json(u, s.o2)})},
              {"swapped",
               json::array({order_to_json(u, s.o3), order_to_json(u, s.o4)})},
              {"k", s.k}};
}

ConjugateSquare square_from_json(const UniverseContext& ctx, const json& j) {
  if (!j.is_object() || !j.contains("top") || !j.contains("k"))
    throw ParseError("square JSON needs top pair and k");
  auto o1 = order_from_json(ctx.universe(), j["top"].at(0));
  auto o2 = order_from_json(ctx.universe(), j["top"].at(1));
  return make_conjugate_square(o1, o2, j["k"].get<int>());
}

json swap_sequence_to_json(const UniverseContext& ctx, const SwapSequence& s) {
  json steps = json::array();
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    const auto& st = s.steps[i];
    json step{{"square", square_to_json(ctx, st.square)},
              {"weight", to_string(st.weight)},
              {"direction",
               st.direction == SwapStep::Direction::Forward ? "forward"
                                                            : "backward"}};
    if (i < s.provenance.size()) step["provenance"] = s.provenance[i];
    steps.push_back(std::move(step));
  }
  return steps;
}

SwapSequence swap_sequence_from_json(const UniverseContext& ctx, const json& j) {
  if (!j.is_array()) throw ParseError("swap sequence must be an array");
  SwapSequence out;
  for (const auto& step : j) {
    SwapStep st;
    st.square = square_from_json(ctx, step.at("square"));
    st.weight = parse_rational(step.at("weight").get<std::string>());
    auto dir = step.at("direction").get<std::string>();
    if (dir == "forward")
      st.direction = SwapStep::Direction::Forward;
    else if (dir == "backward")
      st.direction = SwapStep::Direction::Backward;
    else
      throw ParseError("direction must be forward or backward");
    if (st.weight <= 0) throw ParseError("swap weight must be positive");
    out.steps.push_back(std::move(st));
    out.provenance.push_back(step.value("provenance", ""));
  }
  return out;
}

json basis_to_json(const UniverseContext& ctx, const RyserBasis& b) {
  json vectors = json::array();
  for (std::size_t i = 0; i < b.vectors.size(); ++i) {
    vectors.push_back(json{{"weights", weights_to_json(ctx, b.vectors[i].w)},
                           {"square", square_to_json(ctx, b.squares[i])}});
  }
  return json{{"dim", b.dim}, {"vectors", vectors}};
}

json class_report_to_json(const UniverseContext& ctx,
                          const EquivalenceClassReport& r) {
  json out{{"identified", r.class_dim == 0},
           {"class_dim", r.class_dim},
           {"extreme", r.extreme}};
  json witnesses = json::array();
  if (r.witnesses)
    for (const auto& w : *r.witnesses)
      witnesses.push_back(distribution_to_json(ctx, w));
  out["witnesses"] = std::move(witnesses);
  return out;
}

json jacobian_report_to_json(const JacobianReport& r) {
  json sv = json::array();
  for (double s : r.singular_values) sv.push_back(format_double17(s));
  json jac = json::array();
  for (const auto& row : r.jacobian) {
    json jrow = json::array();
    for (double x : row) jrow.push_back(format_double17(x));
    jac.push_back(std::move(jrow));
  }
  return json{{"theta", r.theta},        {"jacobian", jac},
              {"singular_values", sv},   {"rank", r.rank},
              {"full_rank", r.full_rank}, {"caveat", r.caveat}};
}

json scan_result_to_json(const ScanResult& r) {
  json reports = json::array();
  for (const auto& rep : r.reports) reports.push_back(jacobian_report_to_json(rep));
  json out{{"reports", reports},
           {"min_rank", r.min_rank},
           {"full_rank_everywhere", r.full_rank_everywhere},
           {"failure_points", r.failure_points}};
  if (r.exact_mixture_rank) {
    out["exact_mixture_rank"] = *r.exact_mixture_rank;
    out["exact_agrees"] = r.exact_agrees;
  }
  return out;
}

namespace {

json segment_node(const UniverseContext& ctx, const Segment& s) {
  return (s.kind == Segment::Kind::Initial ? "I:" : "T:") +
         s.to_string(ctx.universe());
}

}  // namespace

json graph_to_json(const UniverseContext& ctx, const SegmentGraph& g) {
  json nodes = json::array(), edges = json::array();
  for (const auto& n : g.nodes) nodes.push_back(segment_node(ctx, n));
  for (const auto& e : g.edges)
    edges.push_back(json{{"u", segment_node(ctx, g.nodes[e.up_node])},
                         {"v", segment_node(ctx, g.nodes[e.down_node])},
                         {"label",
                          "(" + ctx.order(e.order_id).to_string(ctx.universe()) +
                              "," + std::to_string(e.k) + ")"}});
  return json{{"nodes", nodes}, {"edges", edges}};
}

json graph_to_json(const UniverseContext& ctx, const LineGraph& g) {
  auto name = [&](const LineGraph::Node& n) {
    return "(" + ctx.order(n.order_id).to_string(ctx.universe()) + "," +
           std::to_string(n.k) + ")";
  };
  json nodes = json::array(), edges = json::array();
  for (const auto& n : g.nodes) nodes.push_back(name(n));
  for (const auto& e : g.edges)
    edges.push_back(json{{"u", name(g.nodes[e.a])},
                         {"v", name(g.nodes[e.b])},
                         {"label", segment_node(ctx, e.label)}});
  return json{{"nodes", nodes}, {"edges", edges}};
}

json graph_to_json(const UniverseContext& ctx, const PreferenceMultigraph& g) {
  json nodes = json::array(), edges = json::array();
  for (std::size_t o = 0; o < g.node_count; ++o)
    nodes.push_back(ctx.order(o).to_string(ctx.universe()));
  for (const auto& e : g.edges)
    edges.push_back(json{{"u", ctx.order(e.a).to_string(ctx.universe())},
                         {"v", ctx.order(e.b).to_string(ctx.universe())},
                         {"label", segment_node(ctx, e.label)}});
  return json{{"nodes", nodes}, {"edges", edges}};
}

json graph_to_json(const UniverseContext& ctx, const SimpleGraph& g) {
  json nodes = json::array(), edges = json::array();
  for (std::size_t o = 0; o < g.node_count; ++o)
    nodes.push_back(ctx.order(o).to_string(ctx.universe()));
  for (const auto& e : g.edges)
    edges.push_back(json{{"u", ctx.order(e.first).to_string(ctx.universe())},
                         {"v", ctx.order(e.second).to_string(ctx.universe())}});
  return json{{"nodes", nodes}, {"edges", edges}};
}

std::vector<ExternalRow> external_rows_from_jsonl(const UniverseContext& ctx,
                                                  std::istream& in) {
  std::vector<ExternalRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line);
    ExternalRow row;
    for (const auto& t : j.at("theta")) row.theta.push_back(t.get<double>());
    row.weights.assign(ctx.order_count(), 0.0);
    for (const auto& [key, val] : j.at("weights").items()) {
      auto id = ctx.id_of(LinearOrder::from_labels(ctx.universe(), key));
      row.weights[id] = val.is_string()
                            ? to_double(parse_rational(val.get<std::string>()))
                            : val.get<double>();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rum
