#ifndef RUM_RYSER_HPP
#define RUM_RYSER_HPP

#include <optional>

#include "rum/choice.hpp"

namespace rum {

// Signed measure of a square: +1 on the swapped pair, -1 on the top pair.
struct SwapVector {
  ConjugateSquare square;
  SignedMeasure vector;
};

SwapVector swap_vector(const UniverseContext& ctx, const ConjugateSquare& s);

// One weighted application of a square's swap vector.
struct SwapStep {
  enum class Direction { Forward, Backward };  // +R / -R
  ConjugateSquare square;
  Rational weight;  // > 0
  Direction direction = Direction::Forward;
};

SignedMeasure step_measure(const UniverseContext& ctx, const SwapStep& step);

// Deterministic rational basis of the span of all swap vectors, chosen by
// first-come Gaussian elimination over squares in canonical enumeration
// order; every basis vector is itself a swap vector.
struct RyserBasis {
  std::vector<SignedMeasure> vectors;
  std::vector<ConjugateSquare> squares;  // squares the vectors came from
  std::size_t dim = 0;
};

// Per-universe cache for the basis, the kernel of phi and the projector.
// Computed once, immutable afterwards, safe to share across threads.
class RyserContext {
 public:
  explicit RyserContext(const UniverseContext& ctx) : ctx_(&ctx) {}

  const UniverseContext& universe() const { return *ctx_; }
  const RyserBasis& basis() const;
  // Rational basis of ker(phi_matrix), via exact elimination.
  const std::vector<SignedMeasure>& phi_nullspace() const;
  // Exact orthogonal projector onto the complement of the Ryser subspace.
  const RationalMatrix& projector() const;
  // The same projector converted to double precision once, for the
  // floating-point parametric tests.
  const std::vector<std::vector<double>>& float_projector() const;

 private:
  const UniverseContext* ctx_;
  mutable std::once_flag basis_once_, null_once_, proj_once_, fproj_once_;
  mutable std::unique_ptr<RyserBasis> basis_;
  mutable std::unique_ptr<std::vector<SignedMeasure>> nullspace_;
  mutable std::unique_ptr<RationalMatrix> projector_;
  mutable std::unique_ptr<std::vector<std::vector<double>>> float_projector_;
};

inline const RyserBasis& ryser_basis(const RyserContext& rc) {
  return rc.basis();
}

std::vector<SignedMeasure> nullspace_phi(const RyserContext& rc);

// True iff m is an exact rational combination of the basis vectors.
bool in_ryser_space(const RyserContext& rc, const SignedMeasure& m);
// The combination's coefficients (basis order), when m lies in the span.
std::optional<RatVec> ryser_coordinates(const RyserContext& rc,
                                        const SignedMeasure& m);

SignedMeasure project_orthocomplement(const RyserContext& rc,
                                      const SignedMeasure& m);

}  // namespace rum

#endif
