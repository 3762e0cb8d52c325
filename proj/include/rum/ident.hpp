#ifndef RUM_IDENT_HPP
#define RUM_IDENT_HPP

#include <optional>
#include <string>

#include "rum/ryser.hpp"

namespace rum {

// The orders a model is allowed to randomize over.
struct SupportRestriction {
  std::vector<std::size_t> order_ids;  // sorted, distinct

  static SupportRestriction of_ids(std::vector<std::size_t> ids);
  static SupportRestriction of_orders(const UniverseContext& ctx,
                                      const std::vector<LinearOrder>& orders);
  static SupportRestriction full(const UniverseContext& ctx);
  bool contains(std::size_t id) const;
};

// True iff the phi columns indexed by the support are linearly independent;
// equivalently no nonzero Ryser-subspace vector lives inside the support.
bool is_identified_support(const RyserContext& rc, const SupportRestriction& s);

// Dimension of the Ryser vectors supported inside s (the subspace route of
// the same test; 0 iff identified).
std::size_t ryser_support_intersection_dim(const RyserContext& rc,
                                           const SupportRestriction& s);

// Some pair of support orders is separable (at any admissible level).
bool has_separable_pair(const UniverseContext& ctx,
                        const SupportRestriction& s);

// All four orders of some conjugate square lie in the support, i.e. a single
// swap can move mass without leaving it.
bool contains_conjugate_square(const UniverseContext& ctx,
                               const SupportRestriction& s);

// Unrestricted point identification: the support of mu has no separable
// pair.
bool point_identified_unrestricted(const UniverseContext& ctx,
                                   const Distribution& mu);

// Ordered weighted swaps; applying the steps to the declared source keeps
// every intermediate measure a distribution.
struct SwapSequence {
  std::vector<SwapStep> steps;
  std::vector<std::string> provenance;  // per step: which phase produced it
};

struct EquivalenceClassReport {
  Distribution representative;
  std::size_t class_dim = 0;
  bool extreme = false;
  // distinct equivalent distributions; present iff class_dim > 0
  std::optional<std::vector<Distribution>> witnesses;
};

// Geometry of {nu in Delta(s) : nu equivalent to mu}: exact dimension of the
// polytope plus witnesses reached by maximal feasible moves along the
// active-cone directions. Throws DomainError if supp(mu) is not inside s.
EquivalenceClassReport equivalence_class(const RyserContext& rc,
                                         const Distribution& mu,
                                         const SupportRestriction& s);

// mu is a vertex of its equivalence-class polytope: the phi columns of its
// support are independent.
bool is_extreme(const RyserContext& rc, const Distribution& mu,
                const SupportRestriction& s);

struct VertexEnumeration {
  std::vector<Distribution> vertices;
  bool truncated = false;
};

// All vertices of {nu in Delta(s) : phi(nu) = phi(mu)} by exhaustive search
// over independent-column support subsets. Truncates at `cap` vertices.
VertexEnumeration enumerate_extreme_points(const RyserContext& rc,
                                           const Distribution& mu,
                                           const SupportRestriction& s,
                                           std::size_t cap = 64);

// Constructive witness for behavioral equivalence: a swap sequence carrying
// `source` to `target` exactly. Rejects non-equivalent inputs up front.
SwapSequence zipper(const UniverseContext& ctx, const Distribution& source,
                    const Distribution& target);

// Applies steps in order; throws DomainError naming the first step whose
// intermediate measure leaves the simplex.
Distribution apply_swaps(const UniverseContext& ctx, const Distribution& m,
                         const SwapSequence& seq);

}  // namespace rum

#endif
