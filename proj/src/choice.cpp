#include "rum/choice.hpp"

#include <algorithm>

namespace rum {

Rational SignedMeasure::total() const {
  Rational t = 0;
  for (const auto& x : w) t += x;
  return t;
}

SignedMeasure zero_measure(const UniverseContext& ctx) {
  return SignedMeasure{RatVec(ctx.order_count(), Rational(0))};
}

SignedMeasure point_mass(const UniverseContext& ctx, const LinearOrder& o) {
  auto m = zero_measure(ctx);
  m.w[ctx.id_of(o)] = 1;
  return m;
}

SignedMeasure uniform_on(const UniverseContext& ctx,
                         const std::vector<LinearOrder>& support) {
  if (support.empty()) throw DomainError("uniform distribution needs support");
  auto m = zero_measure(ctx);
  Rational share(1, static_cast<unsigned long>(support.size()));
  for (const auto& o : support) {
    auto id = ctx.id_of(o);
    if (m.w[id] != 0) throw DomainError("duplicate order in support");
    m.w[id] = share;
  }
  return m;
}

Distribution Distribution::make(const UniverseContext& ctx, RatVec weights) {
  if (weights.size() != ctx.order_count())
    throw DomainError("distribution has wrong length");
  Rational t = 0;
  for (const auto& x : weights) {
    if (x < 0) throw DomainError("distribution has a negative weight");
    t += x;
  }
  if (t != 1) throw DomainError("distribution mass is " + to_string(t) +
                                ", expected 1");
  return Distribution{std::move(weights)};
}

Distribution Distribution::from_measure(const UniverseContext& ctx,
                                        const SignedMeasure& m) {
  return make(ctx, m.w);
}

std::vector<std::size_t> Distribution::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0) out.push_back(i);
  return out;
}

RandomChoiceRule RandomChoiceRule::make(const UniverseContext& ctx,
                                        ChoiceTable t) {
  if (t.v.size() != ctx.cells().size())
    throw DomainError("choice table has wrong length");
  const auto& cells = ctx.cells();
  RatVec menu_sum(1u << ctx.n(), Rational(0));
  for (std::size_t row = 0; row < cells.size(); ++row) {
    if (t.v[row] < 0 || t.v[row] > 1)
      throw DomainError("choice probability outside [0,1]");
    menu_sum[cells.menu(row).mask] += t.v[row];
  }
  for (std::uint32_t mask = 1; mask < (1u << ctx.n()); ++mask)
    if (menu_sum[mask] != 1)
      throw DomainError("menu probabilities do not sum to 1");
  return RandomChoiceRule{std::move(t)};
}

ChoiceTable phi(const UniverseContext& ctx, const SignedMeasure& m) {
  if (m.w.size() != ctx.order_count())
    throw DomainError("measure has wrong length");
  ChoiceTable t;
  t.v.assign(ctx.cells().size(), Rational(0));
  for (std::size_t oid = 0; oid < m.w.size(); ++oid) {
    if (m.w[oid] == 0) continue;
    for (auto row : ctx.maximal_cells(oid)) t.v[row] += m.w[oid];
  }
  return t;
}

ChoiceTable phi(const UniverseContext& ctx, const Distribution& d) {
  return phi(ctx, d.to_measure());
}

BlockMarschakTable moebius_inverse_table(const UniverseContext& ctx,
                                         const ChoiceTable& t) {
  const auto& cells = ctx.cells();
  const std::uint32_t full = (1u << ctx.n()) - 1;
  BlockMarschakTable out;
  out.q.assign(cells.size(), Rational(0));
  for (std::size_t row = 0; row < cells.size(); ++row) {
    int x = cells.alt(row);
    std::uint32_t a = cells.menu(row).mask;
    std::uint32_t rest = full & ~a;
    // q(x,A) = sum over B >= A of (-1)^{|B\A|} rho(x,B)
    std::uint32_t extra = 0;
    Rational acc = 0;
    for (;;) {
      const Rational& val = t.v[cells.row_of(x, Menu{a | extra})];
      if (__builtin_popcount(extra) % 2 == 0)
        acc += val;
      else
        acc -= val;
      if (extra == rest) break;
      extra = (extra - rest) & rest;  // next superset step
    }
    out.q[row] = acc;
  }
  return out;
}

BlockMarschakTable moebius_inverse(const UniverseContext& ctx,
                                   const RandomChoiceRule& r) {
  return moebius_inverse_table(ctx, r.table);
}

MoebiusForwardResult moebius_forward(const UniverseContext& ctx,
                                     const BlockMarschakTable& q) {
  const auto& cells = ctx.cells();
  const std::uint32_t full = (1u << ctx.n()) - 1;
  MoebiusForwardResult res;
  res.table.v.assign(cells.size(), Rational(0));
  for (std::size_t row = 0; row < cells.size(); ++row) {
    int x = cells.alt(row);
    std::uint32_t a = cells.menu(row).mask;
    std::uint32_t rest = full & ~a;
    std::uint32_t extra = 0;
    Rational acc = 0;
    for (;;) {
      acc += q.q[cells.row_of(x, Menu{a | extra})];
      if (extra == rest) break;
      extra = (extra - rest) & rest;
    }
    res.table.v[row] = acc;
  }
  res.valid = true;
  RatVec menu_sum(1u << ctx.n(), Rational(0));
  for (std::size_t row = 0; row < cells.size(); ++row) {
    if (res.table.v[row] < 0 || res.table.v[row] > 1) res.valid = false;
    menu_sum[cells.menu(row).mask] += res.table.v[row];
  }
  for (std::uint32_t mask = 1; mask <= full && res.valid; ++mask)
    if (menu_sum[mask] != 1) res.valid = false;
  return res;
}

std::size_t bm_cell_for_contour(const UniverseContext& ctx, int x, Menu b) {
  const std::uint32_t full = (1u << ctx.n()) - 1;
  std::uint32_t a = (full & ~b.mask) | (1u << x);
  return ctx.cells().row_of(x, Menu{a});
}

Rational contour_mass(const UniverseContext& ctx, const SignedMeasure& m, int x,
                      Menu a) {
  Rational acc = 0;
  for (auto id : ctx.upper_contour(x, a)) acc += m.w[id];
  return acc;
}

bool behaviorally_equivalent(const UniverseContext& ctx, const SignedMeasure& m1,
                             const SignedMeasure& m2) {
  if (m1.w.size() != ctx.order_count() || m2.w.size() != ctx.order_count())
    throw DomainError("measure has wrong length");
  // route 1: equal mass on every upper contour class
  bool by_contours = true;
  const auto& cells = ctx.cells();
  for (std::size_t row = 0; row < cells.size() && by_contours; ++row) {
    Rational a = 0, b = 0;
    for (auto id : ctx.upper_contour(cells.alt(row), cells.menu(row))) {
      a += m1.w[id];
      b += m2.w[id];
    }
    if (a != b) by_contours = false;
  }
  // route 2: identical phi tables; the two are equivalent by construction
  // and kept as a permanent self-check
  bool by_phi = phi(ctx, m1) == phi(ctx, m2);
  if (by_contours != by_phi)
    throw Error("behavioral-equivalence routes disagree (internal bug)");
  return by_phi;
}

bool behaviorally_equivalent(const UniverseContext& ctx, const Distribution& d1,
                             const Distribution& d2) {
  return behaviorally_equivalent(ctx, d1.to_measure(), d2.to_measure());
}

std::optional<Distribution> rationalize(const UniverseContext& ctx,
                                        const RandomChoiceRule& r,
                                        bool use_precheck) {
  BlockMarschakTable q = moebius_inverse(ctx, r);
  if (use_precheck)
    for (const auto& val : q.q)
      if (val < 0) return std::nullopt;

  // equality system: for every cell, mass of U(x,A) equals the paired
  // Block-Marschak value; plus the (redundant) total-mass row
  const auto& cells = ctx.cells();
  const std::size_t rows = cells.size() + 1, cols = ctx.order_count();
  RationalMatrix a(rows, cols);
  RatVec b(rows, Rational(0));
  for (std::size_t row = 0; row < cells.size(); ++row) {
    for (auto id : ctx.upper_contour(cells.alt(row), cells.menu(row)))
      a.at(row, id) = 1;
    b[row] = q.q[bm_cell_for_contour(ctx, cells.alt(row), cells.menu(row))];
  }
  for (std::size_t c = 0; c < cols; ++c) a.at(rows - 1, c) = 1;
  b[rows - 1] = 1;

  auto res = solve_equality_feasibility(a, b);
  if (!res.feasible) return std::nullopt;
  return Distribution::make(ctx, std::move(res.point));
}

}  // namespace rum
