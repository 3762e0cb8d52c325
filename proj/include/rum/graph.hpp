#ifndef RUM_GRAPH_HPP
#define RUM_GRAPH_HPP

#include <string>
#include <utility>
#include <vector>

#include "rum/choice.hpp"

namespace rum {

// Bipartite graph on non-trivial segments (2 <= k <= n-2): one node per
// initial and per terminal segment, one edge per (order, k) joining the two
// segments whose concatenation is that order.
struct SegmentGraph {
  struct Edge {
    std::size_t up_node = 0;    // initial-segment node
    std::size_t down_node = 0;  // terminal-segment node
    std::size_t order_id = 0;
    int k = 0;
  };
  std::vector<Segment> nodes;  // initial nodes first, then terminal
  std::size_t initial_count = 0;
  std::vector<Edge> edges;
};

SegmentGraph conjugate_graph(const UniverseContext& ctx);

// Line graph of the segment graph: nodes are (order, k) edges, adjacency is
// a shared segment endpoint, edges labeled by that segment.
struct LineGraph {
  struct Node {
    std::size_t order_id = 0;
    int k = 0;
  };
  struct Edge {
    std::size_t a = 0, b = 0;  // node indices
    Segment label;
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

LineGraph line_graph(const SegmentGraph& g);

// Line-graph nodes merged over k: one node per order, all labeled edges
// kept, so parallel edges appear whenever two orders share more than one
// segment.
struct PreferenceMultigraph {
  struct Edge {
    std::size_t a = 0, b = 0;  // order ids, a < b
    Segment label;
  };
  std::size_t node_count = 0;
  std::vector<Edge> edges;
};

PreferenceMultigraph conjugate_inverse_multigraph(const LineGraph& lg);

// Simple graph on order ids with sorted unique edges.
struct SimpleGraph {
  std::size_t node_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // a < b, sorted
};

SimpleGraph condensation(const PreferenceMultigraph& mg);

// Vertex adjacency of the linear order polytope: two orders are adjacent
// iff they share a non-trivial initial or terminal segment (and differ).
SimpleGraph polytope_graph(const UniverseContext& ctx);

// All 4-cycles of the multigraph with alternating initial/terminal labels
// of equal level, mapped back to canonical squares.
std::vector<ConjugateSquare> find_swap_cycles(const UniverseContext& ctx,
                                              const PreferenceMultigraph& mg);

// Flow on the segment-graph edges: one value per (order, k).
struct SegmentFlow {
  std::vector<int> levels;  // the admissible k values, ascending
  // f[order][level index]
  std::vector<RatVec> f;
};

// The canonical flow f(order, k) = mu(order), together with the result of
// checking the three feasibility conditions against the Block-Marschak
// table of phi(mu). Always true for a valid distribution.
std::pair<SegmentFlow, bool> check_flow(const UniverseContext& ctx,
                                        const Distribution& mu);

// The three conditions (nonnegativity, constancy across levels, contour
// sums equal to the Block-Marschak values) for an arbitrary flow.
bool flow_conditions_hold(const UniverseContext& ctx, const SegmentFlow& flow,
                          const BlockMarschakTable& q);

// DOT and JSON adjacency exports with stable node identifiers (order
// strings; segment strings prefixed I:/T:).
std::string to_dot(const UniverseContext& ctx, const SegmentGraph& g);
std::string to_dot(const UniverseContext& ctx, const LineGraph& g);
std::string to_dot(const UniverseContext& ctx, const PreferenceMultigraph& g);
std::string to_dot(const UniverseContext& ctx, const SimpleGraph& g);

}  // namespace rum

#endif
