#ifndef RUM_MATRIX_HPP
#define RUM_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "rum/rational.hpp"

namespace rum {

// Dense exact-rational matrix. Row-major.
class RationalMatrix {
 public:
  RationalMatrix() : rows_(0), cols_(0) {}
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_columns(const std::vector<RatVec>& cols);
  static RationalMatrix from_rows(const std::vector<RatVec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  RationalMatrix transpose() const;
  RationalMatrix operator*(const RationalMatrix& rhs) const;
  RatVec apply(const RatVec& v) const;  // matrix * column vector
  RatVec column(std::size_t c) const;

  // Exact rank via fraction-free (Bareiss) elimination over the integers.
  std::size_t rank() const;

  // Reduced row echelon form; if pivot_cols is non-null it receives the
  // pivot column indices in order.
  RationalMatrix rref(std::vector<std::size_t>* pivot_cols = nullptr) const;

  // Basis of {x : Ax = 0}, one vector per free column, deterministic.
  std::vector<RatVec> nullspace_basis() const;

  // Any particular solution of Ax = b, or nullopt when inconsistent.
  std::optional<RatVec> solve(const RatVec& rhs) const;

  std::optional<RationalMatrix> inverse() const;

  bool operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
};

// Rank of the span of a set of vectors.
std::size_t span_rank(const std::vector<RatVec>& vectors);

// Phase-1 simplex feasibility for {x >= 0 : Ax = b}, exact arithmetic,
// Bland's rule. Redundant rows are tolerated; inconsistent systems report
// infeasible.
struct FeasibilityResult {
  bool feasible = false;
  RatVec point;  // defined only when feasible
};
FeasibilityResult solve_equality_feasibility(const RationalMatrix& A,
                                             const RatVec& b);

}  // namespace rum

#endif
