#ifndef RUM_CHOICE_HPP
#define RUM_CHOICE_HPP

#include <optional>
#include <utility>

#include "rum/context.hpp"
#include "rum/matrix.hpp"

namespace rum {

// Signed measure over linear orders: one exact weight per enumerated order.
struct SignedMeasure {
  RatVec w;

  Rational total() const;
  bool operator==(const SignedMeasure&) const = default;
};

SignedMeasure zero_measure(const UniverseContext& ctx);
SignedMeasure point_mass(const UniverseContext& ctx, const LinearOrder& o);
SignedMeasure uniform_on(const UniverseContext& ctx,
                         const std::vector<LinearOrder>& support);

// Nonnegative, mass exactly 1.
struct Distribution {
  RatVec w;

  // Throws DomainError unless weights are >= 0 and sum to 1.
  static Distribution make(const UniverseContext& ctx, RatVec weights);
  static Distribution from_measure(const UniverseContext& ctx,
                                   const SignedMeasure& m);

  SignedMeasure to_measure() const { return SignedMeasure{w}; }
  std::vector<std::size_t> support() const;

  bool operator==(const Distribution&) const = default;
};

// Table of exact values over the canonical (x, A) cells.
struct ChoiceTable {
  RatVec v;

  bool operator==(const ChoiceTable&) const = default;
};

// ChoiceTable satisfying the random-choice-rule invariants: values in [0,1]
// and unit mass on every menu.
struct RandomChoiceRule {
  ChoiceTable table;

  static RandomChoiceRule make(const UniverseContext& ctx, ChoiceTable t);
  const Rational& at(const UniverseContext& ctx, int x, Menu a) const {
    return table.v[ctx.cells().row_of(x, a)];
  }
  bool operator==(const RandomChoiceRule&) const = default;
};

struct BlockMarschakTable {
  RatVec q;

  const Rational& at(const UniverseContext& ctx, int x, Menu a) const {
    return q[ctx.cells().row_of(x, a)];
  }
  bool operator==(const BlockMarschakTable&) const = default;
};

// The choice-probability map: value at (x,A) is the m-mass of orders under
// which x is maximal in A. Images of distributions are valid rules.
ChoiceTable phi(const UniverseContext& ctx, const SignedMeasure& m);
ChoiceTable phi(const UniverseContext& ctx, const Distribution& d);

// Alternating-sum Moebius inverse of a rule over menu supersets
// (the Block-Marschak polynomials).
BlockMarschakTable moebius_inverse(const UniverseContext& ctx,
                                   const RandomChoiceRule& r);
BlockMarschakTable moebius_inverse_table(const UniverseContext& ctx,
                                         const ChoiceTable& t);

// Superset sums back to a choice table. `valid` is false when the result
// violates the rule invariants; the raw table is returned either way.
struct MoebiusForwardResult {
  ChoiceTable table;
  bool valid = false;
};
MoebiusForwardResult moebius_forward(const UniverseContext& ctx,
                                     const BlockMarschakTable& q);

// The cell whose Block-Marschak value equals the U(x,B) mass: contour form
// U(x,B) pairs with the cell (x, (X \ B) + {x}).
std::size_t bm_cell_for_contour(const UniverseContext& ctx, int x, Menu b);

// m-mass of the upper contour class U(x,A).
Rational contour_mass(const UniverseContext& ctx, const SignedMeasure& m, int x,
                      Menu a);

// True iff m1 and m2 induce identical choice probabilities. Computed twice,
// via U-set masses and via phi tables; the two routes must agree.
bool behaviorally_equivalent(const UniverseContext& ctx, const SignedMeasure& m1,
                             const SignedMeasure& m2);
bool behaviorally_equivalent(const UniverseContext& ctx, const Distribution& d1,
                             const Distribution& d2);

// Exact rationalizability test: finds mu >= 0 with phi(mu) = r via phase-1
// simplex on the U-mass equality system, or nullopt when none exists. Any
// negative Block-Marschak value short-circuits to nullopt when
// `use_precheck` is set.
std::optional<Distribution> rationalize(const UniverseContext& ctx,
                                        const RandomChoiceRule& r,
                                        bool use_precheck = true);

}  // namespace rum

#endif
