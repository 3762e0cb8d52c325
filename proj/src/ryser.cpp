#include "rum/ryser.hpp"

namespace rum {

SwapVector swap_vector(const UniverseContext& ctx, const ConjugateSquare& s) {
  SwapVector sv;
  sv.square = s;
  sv.vector = zero_measure(ctx);
  sv.vector.w[ctx.id_of(s.o3)] = 1;
  sv.vector.w[ctx.id_of(s.o4)] = 1;
  sv.vector.w[ctx.id_of(s.o1)] = -1;
  sv.vector.w[ctx.id_of(s.o2)] = -1;
  return sv;
}

SignedMeasure step_measure(const UniverseContext& ctx, const SwapStep& step) {
  if (step.weight <= 0) throw DomainError("swap step weight must be positive");
  SignedMeasure m = swap_vector(ctx, step.square).vector;
  Rational scale = step.weight;
  if (step.direction == SwapStep::Direction::Backward) scale = -scale;
  for (auto& x : m.w) x *= scale;
  return m;
}

namespace {

// Incremental Gaussian elimination used to pick a greedy independent subset:
// keeps reduced rows together with pivot columns.
class IncrementalSpan {
 public:
  // Returns true (and absorbs the vector) when v is independent of the
  // current span.
  bool add(RatVec v) {
    reduce(v);
    std::size_t p = pivot_of(v);
    if (p == v.size()) return false;
    Rational inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  // True iff v lies in the span; if coeffs_out is non-null it receives the
  // residual after reduction (zero iff member).
  bool contains(RatVec v) const {
    reduce(v);
    return pivot_of(v) == v.size();
  }

  std::size_t dim() const { return rows_.size(); }

 private:
  static std::size_t pivot_of(const RatVec& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) return i;
    return v.size();
  }
  void reduce(RatVec& v) const {
    Rational factor;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (v[pivots_[i]] == 0) continue;
      factor = v[pivots_[i]];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= factor * rows_[i][j];
    }
  }

  std::vector<RatVec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

const RyserBasis& RyserContext::basis() const {
  std::call_once(basis_once_, [this] {
    auto b = std::make_unique<RyserBasis>();
    IncrementalSpan span;
    for (const auto& sq : ctx_->squares()) {
      SwapVector sv = swap_vector(*ctx_, sq);
      if (span.add(sv.vector.w)) {
        b->vectors.push_back(std::move(sv.vector));
        b->squares.push_back(sq);
      }
    }
    b->dim = b->vectors.size();
    basis_ = std::move(b);
  });
  return *basis_;
}

const std::vector<SignedMeasure>& RyserContext::phi_nullspace() const {
  std::call_once(null_once_, [this] {
    auto out = std::make_unique<std::vector<SignedMeasure>>();
    for (auto& v : ctx_->phi_matrix().nullspace_basis())
      out->push_back(SignedMeasure{std::move(v)});
    nullspace_ = std::move(out);
  });
  return *nullspace_;
}

const RationalMatrix& RyserContext::projector() const {
  std::call_once(proj_once_, [this] {
    const auto& b = basis();
    const std::size_t n = ctx_->order_count();
    if (b.dim == 0) {
      projector_ = std::make_unique<RationalMatrix>(RationalMatrix::identity(n));
      return;
    }
    std::vector<RatVec> cols;
    cols.reserve(b.dim);
    for (const auto& v : b.vectors) cols.push_back(v.w);
    RationalMatrix a = RationalMatrix::from_columns(cols);
    RationalMatrix at = a.transpose();
    auto gram_inv = (at * a).inverse();
    // the Gram matrix of an independent basis is invertible
    if (!gram_inv) throw Error("ryser basis Gram matrix is singular");
    RationalMatrix p = RationalMatrix::identity(n);
    RationalMatrix correction = a * (*gram_inv * at);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) p.at(r, c) -= correction.at(r, c);
    projector_ = std::make_unique<RationalMatrix>(std::move(p));
  });
  return *projector_;
}

const std::vector<std::vector<double>>& RyserContext::float_projector() const {
  std::call_once(fproj_once_, [this] {
    const auto& p = projector();
    auto out = std::make_unique<std::vector<std::vector<double>>>(
        p.rows(), std::vector<double>(p.cols(), 0.0));
    for (std::size_t r = 0; r < p.rows(); ++r)
      for (std::size_t c = 0; c < p.cols(); ++c)
        (*out)[r][c] = to_double(p.at(r, c));
    float_projector_ = std::move(out);
  });
  return *float_projector_;
}

std::vector<SignedMeasure> nullspace_phi(const RyserContext& rc) {
  return rc.phi_nullspace();
}

std::optional<RatVec> ryser_coordinates(const RyserContext& rc,
                                        const SignedMeasure& m) {
  const auto& b = rc.basis();
  if (m.w.size() != rc.universe().order_count())
    throw DomainError("measure has wrong length");
  if (b.dim == 0) {
    for (const auto& x : m.w)
      if (x != 0) return std::nullopt;
    return RatVec{};
  }
  std::vector<RatVec> cols;
  for (const auto& v : b.vectors) cols.push_back(v.w);
  return RationalMatrix::from_columns(cols).solve(m.w);
}

bool in_ryser_space(const RyserContext& rc, const SignedMeasure& m) {
  return ryser_coordinates(rc, m).has_value();
}

SignedMeasure project_orthocomplement(const RyserContext& rc,
                                      const SignedMeasure& m) {
  if (m.w.size() != rc.universe().order_count())
    throw DomainError("measure has wrong length");
  return SignedMeasure{rc.projector().apply(m.w)};
}

}  // namespace rum
