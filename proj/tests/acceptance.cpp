// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Randomized cases use fixed seeds so runs are reproducible.

#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "rum/graph.hpp"
#include "rum/ident.hpp"
#include "rum/parametric.hpp"

using namespace rum;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

// distributions exercised by criteria 1-7, replayed by criterion 10
struct FlowCase {
  int n;
  RatVec w;
};
std::vector<FlowCase> g_flow_cases;

void remember(const UniverseContext& ctx, const Distribution& d) {
  g_flow_cases.push_back({ctx.n(), d.w});
}

LinearOrder ord(const UniverseContext& ctx, const std::string& s) {
  return LinearOrder::from_labels(ctx.universe(), s);
}

Distribution uniform_dist(const UniverseContext& ctx,
                          const std::vector<std::string>& orders) {
  std::vector<LinearOrder> os;
  for (const auto& s : orders) os.push_back(ord(ctx, s));
  return Distribution::from_measure(ctx, uniform_on(ctx, os));
}

Distribution random_distribution(const UniverseContext& ctx,
                                 std::mt19937_64& rng, int max_support) {
  std::uniform_int_distribution<std::size_t> pick(0, ctx.order_count() - 1);
  std::uniform_int_distribution<int> weight(1, 12);
  std::uniform_int_distribution<int> size_pick(1, max_support);
  int support = size_pick(rng);
  std::vector<long> raw(ctx.order_count(), 0);
  long total = 0;
  for (int i = 0; i < support; ++i) {
    long w = weight(rng);
    raw[pick(rng)] += w;
    total += w;
  }
  RatVec w(ctx.order_count(), Rational(0));
  for (std::size_t o = 0; o < w.size(); ++o)
    if (raw[o]) w[o] = make_rational(raw[o], total);
  return Distribution::make(ctx, std::move(w));
}

Distribution random_equivalent(const UniverseContext& ctx,
                               const Distribution& start, std::mt19937_64& rng,
                               int steps) {
  const auto& squares = ctx.squares();
  if (squares.empty()) return start;
  RatVec w = start.w;
  std::uniform_int_distribution<std::size_t> pick_sq(0, squares.size() - 1);
  std::uniform_int_distribution<int> pick_dir(0, 1);
  std::uniform_int_distribution<int> frac(1, 4);
  for (int s = 0; s < steps; ++s) {
    const auto& sq = squares[pick_sq(rng)];
    auto i1 = ctx.id_of(sq.o1), i2 = ctx.id_of(sq.o2);
    auto i3 = ctx.id_of(sq.o3), i4 = ctx.id_of(sq.o4);
    if (pick_dir(rng)) {
      std::swap(i1, i3);
      std::swap(i2, i4);
    }
    Rational cap = std::min(w[i1], w[i2]);
    if (cap == 0) continue;
    Rational t = cap / frac(rng);
    w[i1] -= t;
    w[i2] -= t;
    w[i3] += t;
    w[i4] += t;
  }
  return Distribution::make(ctx, std::move(w));
}

// ---------------------------------------------------------------- criteria

Outcome criterion1(const UniverseContext& ctx4, const RyserContext& rc4) {
  Outcome out;
  auto mu12 = uniform_dist(ctx4, {"abcd", "badc"});
  auto mu34 = uniform_dist(ctx4, {"abdc", "bacd"});
  remember(ctx4, mu12);
  remember(ctx4, mu34);
  out.expect(phi(ctx4, mu12) == phi(ctx4, mu34), "phi tables differ");

  auto s = SupportRestriction::of_orders(
      ctx4, {ord(ctx4, "abcd"), ord(ctx4, "badc"), ord(ctx4, "abdc"),
             ord(ctx4, "bacd")});
  auto report = equivalence_class(rc4, mu12, s);
  out.expect(report.class_dim == 1, "class_dim != 1");

  auto verts = enumerate_extreme_points(rc4, mu12, s);
  bool vertex_set =
      verts.vertices.size() == 2 && !verts.truncated &&
      ((verts.vertices[0] == mu12 && verts.vertices[1] == mu34) ||
       (verts.vertices[0] == mu34 && verts.vertices[1] == mu12));
  out.expect(vertex_set, "vertex set is not {mu12, mu34}");

  auto seq = zipper(ctx4, mu12, mu34);
  out.expect(seq.steps.size() == 1, "zipper step count != 1");
  if (seq.steps.size() == 1) {
    out.expect(seq.steps[0].weight == make_rational(1, 2),
               "zipper weight != 1/2");
    out.expect(seq.steps[0].square == make_conjugate_square(ord(ctx4, "abcd"),
                                                            ord(ctx4, "badc"), 2),
               "zipper square is not the canonical Fishburn square");
  }
  out.expect(apply_swaps(ctx4, mu12, seq) == mu34, "apply_swaps != mu34");
  return out;
}

Outcome criterion2(const UniverseContext& ctx6, const RyserContext& rc6) {
  Outcome out;
  auto mu123 = uniform_dist(ctx6, {"abcdef", "baefcd", "cdbafe"});
  auto mu456 = uniform_dist(ctx6, {"abefcd", "bacdfe", "cdbaef"});
  remember(ctx6, mu123);
  remember(ctx6, mu456);
  out.expect(behaviorally_equivalent(ctx6, mu123, mu456),
             "mu123 and mu456 not detected as equivalent");

  auto s = SupportRestriction::of_orders(
      ctx6, {ord(ctx6, "abcdef"), ord(ctx6, "baefcd"), ord(ctx6, "cdbafe"),
             ord(ctx6, "abefcd"), ord(ctx6, "bacdfe"), ord(ctx6, "cdbaef")});
  // headline separation: no conjugate square sits inside the support (so no
  // single swap applies), yet the support is not identified
  out.expect(!contains_conjugate_square(ctx6, s),
             "support unexpectedly contains a conjugate square");
  out.expect(!is_identified_support(rc6, s), "support unexpectedly identified");

  auto seq = zipper(ctx6, mu123, mu456);
  out.expect(apply_swaps(ctx6, mu123, seq) == mu456,
             "zipper round trip is not exact");
  return out;
}

Outcome criterion3(const RyserContext& rc4, const RyserContext& rc5) {
  Outcome out;
  for (const RyserContext* rc : {&rc4, &rc5}) {
    const auto& basis = rc->basis();
    auto kernel = rc->phi_nullspace();
    std::ostringstream tag;
    tag << "n=" << rc->universe().n();
    if (basis.dim != kernel.size()) {
      out.fail(tag.str() + ": dim mismatch");
      continue;
    }
    std::vector<RatVec> rows;
    for (const auto& v : basis.vectors) rows.push_back(v.w);
    std::size_t basis_rank = span_rank(rows);
    for (const auto& v : kernel) rows.push_back(v.w);
    out.expect(span_rank(rows) == basis_rank,
               tag.str() + ": kernel not inside the swap span");
    rows.clear();
    for (const auto& v : kernel) rows.push_back(v.w);
    std::size_t kernel_rank = span_rank(rows);
    for (const auto& v : basis.vectors) rows.push_back(v.w);
    out.expect(span_rank(rows) == kernel_rank,
               tag.str() + ": swap span not inside the kernel");
  }
  return out;
}

Outcome criterion4(const RyserContext& rc4, const RyserContext& rc5) {
  Outcome out;
  const auto& ctx4 = rc4.universe();

  // exhaustive sweep at n=4 over all supports of size <= 6
  std::size_t checked = 0, disagreements = 0;
  std::vector<std::size_t> members;
  const std::size_t count = ctx4.order_count();
  // iterate subsets by size via simple combination walking
  for (int size = 1; size <= 6; ++size) {
    std::vector<std::size_t> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      auto s = SupportRestriction::of_ids(
          std::vector<std::size_t>(idx.begin(), idx.end()));
      bool by_rank = is_identified_support(rc4, s);
      bool by_subspace = ryser_support_intersection_dim(rc4, s) == 0;
      ++checked;
      if (by_rank != by_subspace) ++disagreements;
      // next combination
      int pos = size - 1;
      while (pos >= 0 && idx[pos] == count - size + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int j = pos + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  out.expect(checked == 190050, "exhaustive sweep size unexpected");
  out.expect(disagreements == 0, "disagreements at n=4");

  // random supports at n=5
  const auto& ctx5 = rc5.universe();
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> pick(0, ctx5.order_count() - 1);
  std::uniform_int_distribution<int> size_pick(1, 12);
  std::size_t random_disagreements = 0;
  for (int t = 0; t < 500; ++t) {
    std::vector<std::size_t> ids;
    int sz = size_pick(rng);
    for (int i = 0; i < sz; ++i) ids.push_back(pick(rng));
    auto s = SupportRestriction::of_ids(ids);
    if (is_identified_support(rc5, s) !=
        (ryser_support_intersection_dim(rc5, s) == 0))
      ++random_disagreements;
  }
  out.expect(random_disagreements == 0, "disagreements at n=5");
  return out;
}

Outcome criterion5(const RyserContext& rc4, const RyserContext& rc5) {
  Outcome out;
  std::mt19937_64 rng(103);
  std::size_t agreement_failures = 0, class_failures = 0, extremes = 0,
              total = 0;
  for (const RyserContext* rc : {&rc4, &rc5}) {
    const auto& ctx = rc->universe();
    auto full = SupportRestriction::full(ctx);
    int cases = rc == &rc4 ? 400 : 600;
    for (int t = 0; t < cases; ++t) {
      auto mu = random_distribution(ctx, rng, 8);
      remember(ctx, mu);
      ++total;
      auto supp = SupportRestriction::of_ids(mu.support());
      bool by_columns = is_extreme(*rc, mu, full);
      bool by_subspace = ryser_support_intersection_dim(*rc, supp) == 0;
      if (by_columns != by_subspace) ++agreement_failures;
      if (by_columns) {
        ++extremes;
        if (equivalence_class(*rc, mu, supp).class_dim != 0) ++class_failures;
      }
    }
  }
  out.expect(total >= 1000, "fewer than 1000 cases");
  out.expect(agreement_failures == 0, "column/subspace disagreements");
  out.expect(extremes > 0, "no extreme cases sampled");
  out.expect(class_failures == 0,
             "extreme distribution with a non-singleton class");
  return out;
}

Outcome criterion6(const UniverseContext& ctx4, const UniverseContext& ctx5) {
  Outcome out;
  std::mt19937_64 rng(107);
  std::size_t failures = 0, nontrivial = 0, total = 0;
  for (const UniverseContext* ctx : {&ctx4, &ctx5}) {
    int cases = ctx == &ctx4 ? 400 : 600;
    for (int t = 0; t < cases; ++t) {
      auto a = random_distribution(*ctx, rng, 8);
      auto b = random_equivalent(*ctx, a, rng, 10);
      remember(*ctx, a);
      remember(*ctx, b);
      ++total;
      auto seq = zipper(*ctx, a, b);
      if (!seq.steps.empty()) ++nontrivial;
      for (const auto& st : seq.steps)
        if (st.weight <= 0) ++failures;
      // apply_swaps validates every intermediate distribution
      if (!(apply_swaps(*ctx, a, seq) == b)) ++failures;
    }
  }
  out.expect(total >= 1000, "fewer than 1000 cases");
  out.expect(failures == 0, "zipper round trip failed");
  out.expect(nontrivial > 200, "too few nontrivial sequences");
  return out;
}

Outcome criterion7(const UniverseContext& ctx3, const UniverseContext& ctx4,
                   const UniverseContext& ctx5) {
  Outcome out;
  std::mt19937_64 rng(109);
  std::size_t failures = 0, total = 0;
  for (const UniverseContext* ctx : {&ctx3, &ctx4, &ctx5}) {
    int cases = ctx == &ctx5 ? 150 : 450;
    for (int t = 0; t < cases; ++t) {
      auto mu = random_distribution(*ctx, rng, 10);
      remember(*ctx, mu);
      ++total;
      auto rule = RandomChoiceRule::make(*ctx, phi(*ctx, mu));
      auto nu = rationalize(*ctx, rule);
      if (!nu || !(phi(*ctx, *nu) == rule.table)) ++failures;
    }
  }
  out.expect(total >= 1000, "fewer than 1000 cases");
  out.expect(failures == 0, "rationalize failed on a rationalizable rule");

  // constructed Block-Marschak-negative rules must be rejected
  std::size_t rejected = 0, built = 0;
  std::uniform_int_distribution<std::size_t> pick(0, ctx4.order_count() - 1);
  for (int attempt = 0; attempt < 4000 && built < 100; ++attempt) {
    auto base = random_distribution(ctx4, rng, 10);
    SignedMeasure m{base.w};
    std::size_t from = pick(rng), to = pick(rng);
    if (from == to) continue;
    Rational t = make_rational(1 + (attempt % 3), 7);
    m.w[from] -= t;
    m.w[to] += t;
    auto table = phi(ctx4, m);
    bool in_range = true;
    for (const auto& v : table.v)
      if (v < 0 || v > 1) { in_range = false; break; }
    if (!in_range) continue;
    auto q = moebius_inverse_table(ctx4, table);
    bool negative = false;
    for (const auto& v : q.q)
      if (v < 0) { negative = true; break; }
    if (!negative) continue;
    ++built;
    if (!rationalize(ctx4, RandomChoiceRule::make(ctx4, table))) ++rejected;
  }
  out.expect(built >= 100, "could not construct 100 BM-negative rules");
  out.expect(rejected == built, "a BM-negative rule was not rejected");
  return out;
}

Outcome criterion8(const RyserContext& rc3, const RyserContext& rc4) {
  Outcome out;
  // logit full-rank scans on [-2,2]^k, 11 points per axis
  {
    auto model = logit_model(rc3.universe(), 0);
    auto scan = scan_identification(rc3, model,
                                    cartesian_grid(2, -2.0, 2.0, 11), 1e-6,
                                    1e-8);
    out.expect(scan.full_rank_everywhere && scan.min_rank == 2,
               "logit n=3 scan not full rank");
  }
  {
    auto model = logit_model(rc4.universe(), 0);
    auto scan = scan_identification(rc4, model,
                                    cartesian_grid(3, -2.0, 2.0, 11), 1e-6,
                                    1e-8);
    out.expect(scan.full_rank_everywhere && scan.min_rank == 3,
               "logit n=4 scan not full rank");
  }
  // Fishburn mixture: rank deficient everywhere, exact oracle agrees
  {
    const auto& ctx4 = rc4.universe();
    auto mu12 = uniform_dist(ctx4, {"abcd", "badc"});
    auto mu34 = uniform_dist(ctx4, {"abdc", "bacd"});
    auto model = mixture_model(ctx4, {mu12, mu34});
    auto scan = scan_identification(rc4, model, cartesian_grid(1, 0.1, 0.9, 11),
                                    1e-6, 1e-8);
    out.expect(scan.exact_mixture_rank.has_value() &&
                   *scan.exact_mixture_rank == 0,
               "exact mixture rank != 0");
    out.expect(scan.failure_points.size() == scan.reports.size(),
               "mixture not rank-deficient at every grid point");
    out.expect(scan.exact_agrees, "sampled ranks disagree with the exact rank");
  }
  // h-halving convergence ratio within [3.5, 4.5] at three points
  {
    auto model = logit_model(rc3.universe(), 0);
    for (auto theta : std::vector<std::vector<double>>{
             {0.0, 0.0}, {0.5, -0.3}, {1.1, 0.7}}) {
      double h = 1e-2;
      auto j1 = jacobian_fbar(rc3, model, theta, h);
      auto j2 = jacobian_fbar(rc3, model, theta, h / 2);
      auto j4 = jacobian_fbar(rc3, model, theta, h / 4);
      double n1 = 0, n2 = 0;
      for (std::size_t i = 0; i < j1.singular_values.size(); ++i) {
        double d1 = j1.singular_values[i] - j2.singular_values[i];
        double d2 = j2.singular_values[i] - j4.singular_values[i];
        n1 += d1 * d1;
        n2 += d2 * d2;
      }
      double ratio = std::sqrt(n1 / n2);
      if (!(ratio > 3.5 && ratio < 4.5)) {
        std::ostringstream why;
        why << "h-halving ratio " << ratio << " outside [3.5,4.5]";
        out.fail(why.str());
      }
    }
  }
  return out;
}

Outcome criterion9(const UniverseContext& ctx4, const UniverseContext& ctx5) {
  Outcome out;
  for (const UniverseContext* ctx : {&ctx4, &ctx5}) {
    std::ostringstream tag;
    tag << "n=" << ctx->n();
    auto mg = conjugate_inverse_multigraph(line_graph(conjugate_graph(*ctx)));
    auto lhs = condensation(mg);
    auto rhs = polytope_graph(*ctx);
    out.expect(lhs.node_count == rhs.node_count && lhs.edges == rhs.edges,
               tag.str() + ": condensation != polytope graph");
    auto cycles = find_swap_cycles(*ctx, mg);
    out.expect(std::set<ConjugateSquare>(cycles.begin(), cycles.end()) ==
                   std::set<ConjugateSquare>(ctx->squares().begin(),
                                             ctx->squares().end()),
               tag.str() + ": 4-cycles != conjugate squares");
  }
  return out;
}

Outcome criterion10(const UniverseContext& ctx3, const UniverseContext& ctx4,
                    const UniverseContext& ctx5, const UniverseContext& ctx6) {
  Outcome out;
  std::size_t failures = 0;
  for (const auto& fc : g_flow_cases) {
    const UniverseContext* ctx = nullptr;
    switch (fc.n) {
      case 3: ctx = &ctx3; break;
      case 4: ctx = &ctx4; break;
      case 5: ctx = &ctx5; break;
      case 6: ctx = &ctx6; break;
      default: break;
    }
    if (!ctx) continue;
    auto mu = Distribution::make(*ctx, fc.w);
    if (!check_flow(*ctx, mu).second) ++failures;
  }
  std::ostringstream detail;
  detail << g_flow_cases.size() << " distributions replayed";
  out.detail = detail.str();
  out.expect(!g_flow_cases.empty(), "no distributions collected");
  out.expect(failures == 0, "infeasible flow for a valid distribution");
  return out;
}

}  // namespace

int main() {
  UniverseContext ctx3(Universe({"a", "b", "c"}));
  UniverseContext ctx4(Universe({"a", "b", "c", "d"}));
  UniverseContext ctx5(Universe({"a", "b", "c", "d", "e"}));
  UniverseContext ctx6(Universe({"a", "b", "c", "d", "e", "f"}));
  RyserContext rc3(ctx3), rc4(ctx4), rc5(ctx5), rc6(ctx6);

  struct Entry {
    int id;
    const char* name;
    double limit_seconds;  // 0 = no stated bound
    std::function<Outcome()> run;
  };
  std::vector<Entry> entries = {
      {1, "Fishburn reproduction", 1.0, [&] { return criterion1(ctx4, rc4); }},
      {2, "six-order reproduction", 1.0, [&] { return criterion2(ctx6, rc6); }},
      {3, "swap span equals phi kernel (n=4,5)", 120.0,
       [&] { return criterion3(rc4, rc5); }},
      {4, "support rank test matches subspace test", 0.0,
       [&] { return criterion4(rc4, rc5); }},
      {5, "extreme point conditions agree", 0.0,
       [&] { return criterion5(rc4, rc5); }},
      {6, "zipper round trips exactly", 0.0,
       [&] { return criterion6(ctx4, ctx5); }},
      {7, "rationalizability decided correctly", 0.0,
       [&] { return criterion7(ctx3, ctx4, ctx5); }},
      {8, "parametric rank tests", 0.0, [&] { return criterion8(rc3, rc4); }},
      {9, "condensation observation (n=4,5)", 300.0,
       [&] { return criterion9(ctx4, ctx5); }},
      {10, "flow feasibility over all suite distributions", 0.0,
       [&] { return criterion10(ctx3, ctx4, ctx5, ctx6); }},
  };

  int failed = 0;
  for (auto& e : entries) {
    auto start = Clock::now();
    Outcome out = e.run();
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (e.limit_seconds > 0 && secs >= e.limit_seconds) {
      std::ostringstream why;
      why << "runtime " << secs << "s exceeds " << e.limit_seconds << "s";
      out.fail(why.str());
    }
    std::printf("%s criterion %d: %s (%.2fs)%s%s\n", out.pass ? "PASS" : "FAIL",
                e.id, e.name, secs, out.detail.empty() ? "" : " -- ",
                out.detail.c_str());
    if (!out.pass) ++failed;
  }
  if (failed) std::printf("%d criterion(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}
