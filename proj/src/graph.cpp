#include "rum/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace rum {

SegmentGraph conjugate_graph(const UniverseContext& ctx) {
  const int n = ctx.n();
  SegmentGraph g;
  std::map<Segment, std::size_t> initial_ids, terminal_ids;
  for (int k = 2; k <= n - 2; ++k) {
    for (std::size_t oid = 0; oid < ctx.order_count(); ++oid) {
      auto up = initial_segment(ctx.order(oid), k);
      if (!initial_ids.count(up)) {
        initial_ids[up] = 0;  // placeholder, numbered below
      }
      auto down = terminal_segment(ctx.order(oid), k);
      if (!terminal_ids.count(down)) terminal_ids[down] = 0;
    }
  }
  for (auto& [seg, id] : initial_ids) {
    id = g.nodes.size();
    g.nodes.push_back(seg);
  }
  g.initial_count = g.nodes.size();
  for (auto& [seg, id] : terminal_ids) {
    id = g.nodes.size();
    g.nodes.push_back(seg);
  }
  for (int k = 2; k <= n - 2; ++k)
    for (std::size_t oid = 0; oid < ctx.order_count(); ++oid) {
      SegmentGraph::Edge e;
      e.up_node = initial_ids.at(initial_segment(ctx.order(oid), k));
      e.down_node = terminal_ids.at(terminal_segment(ctx.order(oid), k));
      e.order_id = oid;
      e.k = k;
      g.edges.push_back(e);
    }
  return g;
}

LineGraph line_graph(const SegmentGraph& g) {
  LineGraph lg;
  for (const auto& e : g.edges) lg.nodes.push_back({e.order_id, e.k});
  // group edges by shared endpoint; any two edges at a node become adjacent
  std::map<std::size_t, std::vector<std::size_t>> at_node;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    at_node[g.edges[i].up_node].push_back(i);
    at_node[g.edges[i].down_node].push_back(i);
  }
  for (const auto& [node, incident] : at_node)
    for (std::size_t i = 0; i < incident.size(); ++i)
      for (std::size_t j = i + 1; j < incident.size(); ++j)
        lg.edges.push_back({incident[i], incident[j], g.nodes[node]});
  return lg;
}

PreferenceMultigraph conjugate_inverse_multigraph(const LineGraph& lg) {
  PreferenceMultigraph mg;
  for (const auto& node : lg.nodes)
    mg.node_count = std::max(mg.node_count, node.order_id + 1);
  for (const auto& e : lg.edges) {
    std::size_t a = lg.nodes[e.a].order_id;
    std::size_t b = lg.nodes[e.b].order_id;
    if (a > b) std::swap(a, b);
    mg.edges.push_back({a, b, e.label});
  }
  // keyed by (endpoints, label) for reproducible exports
  std::sort(mg.edges.begin(), mg.edges.end(),
            [](const PreferenceMultigraph::Edge& x,
               const PreferenceMultigraph::Edge& y) {
              return std::tie(x.a, x.b, x.label) < std::tie(y.a, y.b, y.label);
            });
  return mg;
}

SimpleGraph condensation(const PreferenceMultigraph& mg) {
  SimpleGraph g;
  g.node_count = mg.node_count;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : mg.edges) seen.insert({e.a, e.b});
  g.edges.assign(seen.begin(), seen.end());
  return g;
}

SimpleGraph polytope_graph(const UniverseContext& ctx) {
  const int n = ctx.n();
  SimpleGraph g;
  g.node_count = ctx.order_count();
  for (std::size_t a = 0; a < ctx.order_count(); ++a)
    for (std::size_t b = a + 1; b < ctx.order_count(); ++b) {
      bool adjacent = false;
      for (int k = 2; k <= n - 2 && !adjacent; ++k) {
        const auto& oa = ctx.order(a);
        const auto& ob = ctx.order(b);
        if (initial_segment(oa, k) == initial_segment(ob, k) ||
            terminal_segment(oa, k) == terminal_segment(ob, k))
          adjacent = true;  // the other side differs automatically
      }
      if (adjacent) g.edges.push_back({a, b});
    }
  return g;
}

std::vector<ConjugateSquare> find_swap_cycles(const UniverseContext& ctx,
                                              const PreferenceMultigraph& mg) {
  // adjacency keyed by level: initial-label neighbours and terminal-label
  // neighbours of each order
  std::map<int, std::map<std::size_t, std::vector<std::size_t>>> init_nbrs,
      term_nbrs;
  for (const auto& e : mg.edges) {
    auto& table = e.label.kind == Segment::Kind::Initial ? init_nbrs : term_nbrs;
    table[e.label.k][e.a].push_back(e.b);
    table[e.label.k][e.b].push_back(e.a);
  }
  std::set<ConjugateSquare> found;
  // walk n1 -(initial)- n2 -(terminal)- n3 -(initial)- n4 -(terminal)- n1
  for (const auto& [k, by_node] : init_nbrs) {
    for (const auto& [n1, nbrs1] : by_node) {
      for (auto n2 : nbrs1) {
        auto t_it = term_nbrs.find(k);
        if (t_it == term_nbrs.end()) continue;
        auto n3s = t_it->second.find(n2);
        if (n3s == t_it->second.end()) continue;
        for (auto n3 : n3s->second) {
          if (n3 == n1) continue;
          auto n4s = by_node.find(n3);
          if (n4s == by_node.end()) continue;
          for (auto n4 : n4s->second) {
            if (n4 == n2 || n4 == n1) continue;
            // close the cycle with a terminal edge back to n1
            auto back = t_it->second.find(n4);
            if (back == t_it->second.end()) continue;
            if (std::find(back->second.begin(), back->second.end(), n1) ==
                back->second.end())
              continue;
            // orders n1,n2 share the initial segment; n2,n3 the terminal;
            // the square's pairs are the diagonals {n1,n3} and {n2,n4}
            found.insert(
                make_conjugate_square(ctx.order(n1), ctx.order(n3), k));
          }
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

std::pair<SegmentFlow, bool> check_flow(const UniverseContext& ctx,
                                        const Distribution& mu) {
  SegmentFlow flow;
  for (int k = 2; k <= ctx.n() - 2; ++k) flow.levels.push_back(k);
  flow.f.assign(ctx.order_count(), RatVec(flow.levels.size(), Rational(0)));
  for (std::size_t o = 0; o < ctx.order_count(); ++o)
    for (std::size_t li = 0; li < flow.levels.size(); ++li)
      flow.f[o][li] = mu.w[o];
  auto q = moebius_inverse_table(ctx, phi(ctx, mu));
  return {flow, flow_conditions_hold(ctx, flow, q)};
}

bool flow_conditions_hold(const UniverseContext& ctx, const SegmentFlow& flow,
                          const BlockMarschakTable& q) {
  if (flow.f.size() != ctx.order_count()) return false;
  // nonnegativity and constancy across levels
  for (const auto& per_order : flow.f) {
    for (const auto& v : per_order)
      if (v < 0) return false;
    for (std::size_t li = 1; li < per_order.size(); ++li)
      if (per_order[li] != per_order[0]) return false;
  }
  if (flow.levels.empty()) return true;  // no edges: conditions are vacuous
  // contour sums match the Block-Marschak values
  const auto& cells = ctx.cells();
  for (std::size_t row = 0; row < cells.size(); ++row) {
    Rational acc = 0;
    for (auto id : ctx.upper_contour(cells.alt(row), cells.menu(row)))
      acc += flow.f[id][0];
    if (acc != q.q[bm_cell_for_contour(ctx, cells.alt(row), cells.menu(row))])
      return false;
  }
  return true;
}

namespace {

std::string segment_name(const UniverseContext& ctx, const Segment& s) {
  return (s.kind == Segment::Kind::Initial ? "I:" : "T:") +
         s.to_string(ctx.universe());
}

}  // namespace

std::string to_dot(const UniverseContext& ctx, const SegmentGraph& g) {
  std::ostringstream out;
  out << "graph conjugate {\n";
  for (const auto& node : g.nodes)
    out << "  \"" << segment_name(ctx, node) << "\";\n";
  for (const auto& e : g.edges)
    out << "  \"" << segment_name(ctx, g.nodes[e.up_node]) << "\" -- \""
        << segment_name(ctx, g.nodes[e.down_node]) << "\" [label=\"("
        << ctx.order(e.order_id).to_string(ctx.universe()) << "," << e.k
        << ")\"];\n";
  out << "}\n";
  return out.str();
}

std::string to_dot(const UniverseContext& ctx, const LineGraph& g) {
  std::ostringstream out;
  out << "graph line {\n";
  auto name = [&](const LineGraph::Node& n) {
    return "(" + ctx.order(n.order_id).to_string(ctx.universe()) + "," +
           std::to_string(n.k) + ")";
  };
  for (const auto& n : g.nodes) out << "  \"" << name(n) << "\";\n";
  for (const auto& e : g.edges)
    out << "  \"" << name(g.nodes[e.a]) << "\" -- \"" << name(g.nodes[e.b])
        << "\" [label=\"" << segment_name(ctx, e.label) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string to_dot(const UniverseContext& ctx, const PreferenceMultigraph& g) {
  std::ostringstream out;
  out << "graph multigraph {\n";
  for (std::size_t o = 0; o < g.node_count; ++o)
    out << "  \"" << ctx.order(o).to_string(ctx.universe()) << "\";\n";
  for (const auto& e : g.edges)
    out << "  \"" << ctx.order(e.a).to_string(ctx.universe()) << "\" -- \""
        << ctx.order(e.b).to_string(ctx.universe()) << "\" [label=\""
        << segment_name(ctx, e.label) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string to_dot(const UniverseContext& ctx, const SimpleGraph& g) {
  std::ostringstream out;
  out << "graph simple {\n";
  for (std::size_t o = 0; o < g.node_count; ++o)
    out << "  \"" << ctx.order(o).to_string(ctx.universe()) << "\";\n";
  for (const auto& e : g.edges)
    out << "  \"" << ctx.order(e.first).to_string(ctx.universe()) << "\" -- \""
        << ctx.order(e.second).to_string(ctx.universe()) << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace rum
