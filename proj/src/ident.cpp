#include "rum/ident.hpp"

#include <algorithm>
#include <set>

namespace rum {

SupportRestriction SupportRestriction::of_ids(std::vector<std::size_t> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) throw DomainError("support restriction must be nonempty");
  return SupportRestriction{std::move(ids)};
}

SupportRestriction SupportRestriction::of_orders(
    const UniverseContext& ctx, const std::vector<LinearOrder>& orders) {
  std::vector<std::size_t> ids;
  for (const auto& o : orders) ids.push_back(ctx.id_of(o));
  return of_ids(std::move(ids));
}

SupportRestriction SupportRestriction::full(const UniverseContext& ctx) {
  std::vector<std::size_t> ids(ctx.order_count());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  return SupportRestriction{std::move(ids)};
}

bool SupportRestriction::contains(std::size_t id) const {
  return std::binary_search(order_ids.begin(), order_ids.end(), id);
}

bool is_identified_support(const RyserContext& rc,
                           const SupportRestriction& s) {
  const auto& phi = rc.universe().phi_matrix();
  std::vector<RatVec> cols;
  cols.reserve(s.order_ids.size());
  for (auto id : s.order_ids) cols.push_back(phi.column(id));
  return span_rank(cols) == s.order_ids.size();
}

std::size_t ryser_support_intersection_dim(const RyserContext& rc,
                                           const SupportRestriction& s) {
  const auto& b = rc.basis();
  if (b.dim == 0) return 0;
  // vectors of the span vanishing outside s: kernel of the basis matrix
  // restricted to the rows off the support
  std::vector<RatVec> outside_rows;
  for (std::size_t o = 0; o < rc.universe().order_count(); ++o) {
    if (s.contains(o)) continue;
    RatVec row(b.dim);
    for (std::size_t j = 0; j < b.dim; ++j) row[j] = b.vectors[j].w[o];
    outside_rows.push_back(std::move(row));
  }
  if (outside_rows.empty()) return b.dim;
  return b.dim - RationalMatrix::from_rows(outside_rows).rank();
}

bool has_separable_pair(const UniverseContext& ctx,
                        const SupportRestriction& s) {
  for (std::size_t i = 0; i < s.order_ids.size(); ++i)
    for (std::size_t j = i + 1; j < s.order_ids.size(); ++j)
      if (!separable_levels(ctx.order(s.order_ids[i]),
                            ctx.order(s.order_ids[j]))
               .empty())
        return true;
  return false;
}

bool contains_conjugate_square(const UniverseContext& ctx,
                               const SupportRestriction& s) {
  for (std::size_t i = 0; i < s.order_ids.size(); ++i)
    for (std::size_t j = i + 1; j < s.order_ids.size(); ++j) {
      const auto& o1 = ctx.order(s.order_ids[i]);
      const auto& o2 = ctx.order(s.order_ids[j]);
      for (int k : separable_levels(o1, o2)) {
        auto sq = make_conjugate_square(o1, o2, k);
        if (s.contains(ctx.id_of(sq.o1)) && s.contains(ctx.id_of(sq.o2)) &&
            s.contains(ctx.id_of(sq.o3)) && s.contains(ctx.id_of(sq.o4)))
          return true;
      }
    }
  return false;
}

bool point_identified_unrestricted(const UniverseContext& ctx,
                                   const Distribution& mu) {
  auto supp = mu.support();
  return !has_separable_pair(ctx, SupportRestriction::of_ids(std::move(supp)));
}

namespace {

void require_support_inside(const Distribution& mu,
                            const SupportRestriction& s) {
  for (std::size_t o = 0; o < mu.w.size(); ++o)
    if (mu.w[o] != 0 && !s.contains(o))
      throw DomainError("distribution support violates the restriction");
}

// Basis (as coefficient combinations of the Ryser basis) of the Ryser
// vectors supported inside s, realized as measures.
std::vector<RatVec> ryser_vectors_inside(const RyserContext& rc,
                                         const SupportRestriction& s) {
  const auto& b = rc.basis();
  const std::size_t cnt = rc.universe().order_count();
  if (b.dim == 0) return {};
  std::vector<RatVec> outside_rows;
  for (std::size_t o = 0; o < cnt; ++o) {
    if (s.contains(o)) continue;
    RatVec row(b.dim);
    for (std::size_t j = 0; j < b.dim; ++j) row[j] = b.vectors[j].w[o];
    outside_rows.push_back(std::move(row));
  }
  std::vector<RatVec> coeffs;
  if (outside_rows.empty()) {
    for (std::size_t j = 0; j < b.dim; ++j) {
      RatVec e(b.dim, Rational(0));
      e[j] = 1;
      coeffs.push_back(std::move(e));
    }
  } else {
    coeffs = RationalMatrix::from_rows(outside_rows).nullspace_basis();
  }
  std::vector<RatVec> vectors;
  for (const auto& c : coeffs) {
    RatVec v(cnt, Rational(0));
    for (std::size_t j = 0; j < b.dim; ++j) {
      if (c[j] == 0) continue;
      for (std::size_t o = 0; o < cnt; ++o) v[o] += c[j] * b.vectors[j].w[o];
    }
    vectors.push_back(std::move(v));
  }
  return vectors;
}

// Feasibility of {d in span(w_basis) : d[target] = 1, d[z] >= 0 for z in
// zeros}. Returns the direction when feasible.
std::optional<RatVec> cone_direction(const std::vector<RatVec>& w_basis,
                                     const std::vector<std::size_t>& zeros,
                                     std::size_t target) {
  const std::size_t wdim = w_basis.size();
  const std::size_t m = zeros.size();  // one row per zero (target included)
  const std::size_t slacks = m - 1;
  RationalMatrix a(m, 2 * wdim + slacks);
  RatVec b(m, Rational(0));
  std::size_t slack = 0;
  for (std::size_t r = 0; r < m; ++r) {
    std::size_t coord = zeros[r];
    for (std::size_t j = 0; j < wdim; ++j) {
      a.at(r, j) = w_basis[j][coord];
      a.at(r, wdim + j) = -w_basis[j][coord];
    }
    if (coord == target) {
      b[r] = 1;
    } else {
      a.at(r, 2 * wdim + slack) = -1;
      ++slack;
    }
  }
  auto res = solve_equality_feasibility(a, b);
  if (!res.feasible) return std::nullopt;
  RatVec d(w_basis.empty() ? 0 : w_basis[0].size(), Rational(0));
  for (std::size_t j = 0; j < wdim; ++j) {
    Rational c = res.point[j] - res.point[wdim + j];
    if (c == 0) continue;
    for (std::size_t o = 0; o < d.size(); ++o) d[o] += c * w_basis[j][o];
  }
  return d;
}

// Largest t >= 0 with mu + t*d >= 0; nullopt when unbounded.
std::optional<Rational> max_feasible_step(const RatVec& mu, const RatVec& d) {
  std::optional<Rational> best;
  for (std::size_t o = 0; o < mu.size(); ++o) {
    if (d[o] >= 0) continue;
    Rational t = mu[o] / -d[o];
    if (!best || t < *best) best = t;
  }
  return best;
}

void push_witness(const UniverseContext& ctx, const RatVec& mu, const RatVec& d,
                  std::set<RatVec>& seen,
                  std::vector<Distribution>& witnesses) {
  auto step = max_feasible_step(mu, d);
  if (!step || *step == 0) return;
  RatVec w = mu;
  for (std::size_t o = 0; o < w.size(); ++o) w[o] += *step * d[o];
  if (w == mu) return;
  if (seen.insert(w).second)
    witnesses.push_back(Distribution::make(ctx, std::move(w)));
}

}  // namespace

EquivalenceClassReport equivalence_class(const RyserContext& rc,
                                         const Distribution& mu,
                                         const SupportRestriction& s) {
  require_support_inside(mu, s);
  const auto& ctx = rc.universe();

  EquivalenceClassReport report;
  report.representative = mu;
  report.extreme = is_extreme(rc, mu, s);

  // directions keeping the class inside the support face
  std::vector<RatVec> w_basis = ryser_vectors_inside(rc, s);
  if (w_basis.empty()) {
    report.class_dim = 0;
    return report;
  }

  std::vector<std::size_t> zeros;  // support coordinates where mu sits at 0
  for (auto id : s.order_ids)
    if (mu.w[id] == 0) zeros.push_back(id);

  std::set<RatVec> seen;
  std::vector<Distribution> witnesses;

  if (zeros.empty()) {
    report.class_dim = w_basis.size();
    for (const auto& d : w_basis) {
      push_witness(ctx, mu.w, d, seen, witnesses);
      RatVec neg(d.size());
      for (std::size_t o = 0; o < d.size(); ++o) neg[o] = -d[o];
      push_witness(ctx, mu.w, neg, seen, witnesses);
    }
  } else {
    // split the active cone {d in W : d >= 0 on zeros} into its implicit
    // equality set and the rest; the class dimension is the span of the cone
    std::vector<std::size_t> implicit;
    std::vector<RatVec> directions;
    for (std::size_t zi = 0; zi < zeros.size(); ++zi) {
      auto d = cone_direction(w_basis, zeros, zeros[zi]);
      if (d)
        directions.push_back(std::move(*d));
      else
        implicit.push_back(zeros[zi]);
    }
    if (implicit.empty()) {
      report.class_dim = w_basis.size();
    } else {
      std::vector<RatVec> implicit_rows;
      for (auto o : implicit) {
        RatVec row(w_basis.size());
        for (std::size_t j = 0; j < w_basis.size(); ++j) row[j] = w_basis[j][o];
        implicit_rows.push_back(std::move(row));
      }
      report.class_dim =
          w_basis.size() - RationalMatrix::from_rows(implicit_rows).rank();
    }
    for (const auto& d : directions) push_witness(ctx, mu.w, d, seen, witnesses);
    if (directions.empty() && report.class_dim > 0) {
      // cone is a subspace: any member of {d in W : d = 0 on zeros} works
      std::vector<RatVec> zero_rows;
      for (auto o : zeros) {
        RatVec row(w_basis.size());
        for (std::size_t j = 0; j < w_basis.size(); ++j) row[j] = w_basis[j][o];
        zero_rows.push_back(std::move(row));
      }
      for (const auto& c : RationalMatrix::from_rows(zero_rows).nullspace_basis()) {
        RatVec d(mu.w.size(), Rational(0));
        for (std::size_t j = 0; j < w_basis.size(); ++j)
          for (std::size_t o = 0; o < d.size(); ++o)
            d[o] += c[j] * w_basis[j][o];
        push_witness(ctx, mu.w, d, seen, witnesses);
        for (auto& x : d) x = -x;
        push_witness(ctx, mu.w, d, seen, witnesses);
      }
    }
  }

  if (report.class_dim > 0) {
    if (witnesses.empty())
      throw Error("positive class dimension without witnesses (internal bug)");
    report.witnesses = std::move(witnesses);
  }
  return report;
}

bool is_extreme(const RyserContext& rc, const Distribution& mu,
                const SupportRestriction& s) {
  require_support_inside(mu, s);
  const auto& phi = rc.universe().phi_matrix();
  std::vector<RatVec> cols;
  for (auto id : mu.support()) cols.push_back(phi.column(id));
  return span_rank(cols) == cols.size();
}

VertexEnumeration enumerate_extreme_points(const RyserContext& rc,
                                           const Distribution& mu,
                                           const SupportRestriction& s,
                                           std::size_t cap) {
  require_support_inside(mu, s);
  const auto& ctx = rc.universe();
  ChoiceTable target = phi(ctx, mu);
  const auto& phim = ctx.phi_matrix();

  // an order can carry mass in a rationalizing measure only if all of its
  // upper-contour classes have positive mass under mu
  const auto& cells = ctx.cells();
  RatVec class_mass(cells.size(), Rational(0));
  for (std::size_t row = 0; row < cells.size(); ++row)
    class_mass[row] =
        contour_mass(ctx, mu.to_measure(), cells.alt(row), cells.menu(row));
  std::vector<std::size_t> alive;
  for (auto id : s.order_ids) {
    const auto& o = ctx.order(id);
    std::uint32_t above = 0;
    bool ok = true;
    for (int pos = 0; pos < ctx.n() && ok; ++pos) {
      int x = o.ranking[pos];
      if (class_mass[cells.row_of(x, Menu{above | (1u << x)})] == 0) ok = false;
      above |= 1u << x;
    }
    if (ok) alive.push_back(id);
  }
  const std::size_t m = alive.size();
  if (m > 16)
    throw CapExceeded("support too large for exhaustive vertex enumeration");

  // subsets ordered by size then lexicographically by member list
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) subsets.push_back(mask);
  std::sort(subsets.begin(), subsets.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa < pb;
    return a < b;
  });

  std::set<RatVec> seen;
  VertexEnumeration out;
  for (auto mask : subsets) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < m; ++i)
      if ((mask >> i) & 1u) members.push_back(alive[i]);

    std::vector<RatVec> cols;
    for (auto id : members) cols.push_back(phim.column(id));
    RationalMatrix a = RationalMatrix::from_columns(cols);
    if (a.rank() != members.size()) continue;  // dependent columns: no vertex
    auto sol = a.solve(target.v);
    if (!sol) continue;
    bool strictly_positive = true;
    for (const auto& x : *sol)
      if (x <= 0) { strictly_positive = false; break; }
    if (!strictly_positive) continue;

    RatVec w(ctx.order_count(), Rational(0));
    for (std::size_t i = 0; i < members.size(); ++i) w[members[i]] = (*sol)[i];
    if (!seen.insert(w).second) continue;
    if (out.vertices.size() >= cap) {
      out.truncated = true;
      break;
    }
    out.vertices.push_back(Distribution::make(ctx, std::move(w)));
  }
  std::sort(out.vertices.begin(), out.vertices.end(),
            [](const Distribution& a, const Distribution& b) { return a.w < b.w; });
  return out;
}

namespace {

struct TapeEntry {
  std::size_t id;
  Rational mass;
};

// One zipper level: raise the residual mass agreeing with `tgt` on the first
// level+1 positions to at least `need`, swapping terminal segments of
// separable pairs drawn from the prefix-agreement set and the upper-contour
// set (the merge schedule of the zipper construction).
void zipper_level(const UniverseContext& ctx, RatVec& work,
                  const RatVec& frozen, const LinearOrder& tgt, int level,
                  const Rational& need, SwapSequence& out,
                  const std::string& tag) {
  const std::uint32_t top_mask = tgt.top_set_mask(level);
  const int next_alt = tgt.ranking[level];

  Rational creditable = 0;
  std::vector<TapeEntry> ci, uj;
  for (std::size_t o = 0; o < work.size(); ++o) {
    Rational bal = work[o] - frozen[o];
    if (bal <= 0) continue;
    const auto& ord = ctx.order(o);
    bool in_c = std::equal(ord.ranking.begin(), ord.ranking.begin() + level,
                           tgt.ranking.begin());
    bool in_u = ord.top_set_mask(level) == top_mask &&
                ord.ranking[level] == next_alt;
    if (in_c && in_u)
      creditable += bal;
    else if (in_c)
      ci.push_back({o, bal});
    else if (in_u)
      uj.push_back({o, bal});
  }
  if (creditable >= need) return;
  Rational left = need - creditable;

  std::size_t i = 0, j = 0;
  Rational ci_rem = i < ci.size() ? ci[i].mass : Rational(0);
  Rational uj_rem = j < uj.size() ? uj[j].mass : Rational(0);
  while (left > 0) {
    if (i >= ci.size() || j >= uj.size())
      throw Error("zipper ran out of swap mass (internal bug)");
    Rational w = std::min(std::min(ci_rem, uj_rem), left);
    const auto& a = ctx.order(ci[i].id);
    const auto& b = ctx.order(uj[j].id);
    auto square = make_conjugate_square(a, b, level);
    LinearOrder o3 =
        concatenate(initial_segment(a, level), terminal_segment(b, level));
    LinearOrder o4 =
        concatenate(initial_segment(b, level), terminal_segment(a, level));
    work[ci[i].id] -= w;
    work[uj[j].id] -= w;
    work[ctx.id_of(o3)] += w;
    work[ctx.id_of(o4)] += w;

    SwapStep step;
    step.square = square;
    step.weight = w;
    bool pair_is_top = (a == square.o1 && b == square.o2) ||
                       (a == square.o2 && b == square.o1);
    step.direction = pair_is_top ? SwapStep::Direction::Forward
                                 : SwapStep::Direction::Backward;
    out.steps.push_back(std::move(step));
    out.provenance.push_back(tag + " level k=" + std::to_string(level));

    ci_rem -= w;
    uj_rem -= w;
    left -= w;
    if (ci_rem == 0 && ++i < ci.size()) ci_rem = ci[i].mass;
    if (uj_rem == 0 && ++j < uj.size()) uj_rem = uj[j].mass;
  }
}

}  // namespace

SwapSequence zipper(const UniverseContext& ctx, const Distribution& source,
                    const Distribution& target) {
  if (!behaviorally_equivalent(ctx, source, target))
    throw DomainError("distributions are not behaviorally equivalent");

  SwapSequence out;
  RatVec work = source.w;
  RatVec frozen(work.size(), Rational(0));
  const int n = ctx.n();

  // outer loop over the target support, lexicographic
  for (std::size_t tid = 0; tid < work.size(); ++tid) {
    if (target.w[tid] == 0) continue;
    const Rational& need = target.w[tid];
    const LinearOrder& tgt = ctx.order(tid);
    std::string tag = "target=" + tgt.to_string(ctx.universe());
    // per-level segment swaps; each level extends the agreeing prefix by one
    for (int level = 1; level <= n - 2; ++level)
      zipper_level(ctx, work, frozen, tgt, level, need, out, tag);
    frozen[tid] += need;
    if (work[tid] < frozen[tid])
      throw Error("zipper overdraw (internal bug)");
  }
  if (work != target.w) throw Error("zipper did not converge (internal bug)");
  return out;
}

Distribution apply_swaps(const UniverseContext& ctx, const Distribution& m,
                         const SwapSequence& seq) {
  RatVec cur = m.w;
  for (std::size_t idx = 0; idx < seq.steps.size(); ++idx) {
    SignedMeasure delta = step_measure(ctx, seq.steps[idx]);
    for (std::size_t o = 0; o < cur.size(); ++o) cur[o] += delta.w[o];
    for (std::size_t o = 0; o < cur.size(); ++o)
      if (cur[o] < 0)
        throw DomainError("swap step " + std::to_string(idx) +
                          " leaves the simplex");
  }
  return Distribution::make(ctx, std::move(cur));
}

}  // namespace rum
