#include "rum/matrix.hpp"

#include <algorithm>

#include "rum/errors.hpp"

namespace rum {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<RatVec>& cols) {
  if (cols.empty()) return RationalMatrix(0, 0);
  RationalMatrix m(cols[0].size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != m.rows()) throw Error("ragged column set");
    for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, c) = cols[c][r];
  }
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RatVec>& rows) {
  if (rows.empty()) return RationalMatrix(0, 0);
  RationalMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw Error("ragged row set");
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error("matrix product shape mismatch");
  RationalMatrix out(rows_, rhs.cols_);
  Rational acc;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& aik = at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        if (rhs.at(k, j) == 0) continue;
        acc = aik * rhs.at(k, j);
        out.at(i, j) += acc;
      }
    }
  return out;
}

RatVec RationalMatrix::apply(const RatVec& v) const {
  if (v.size() != cols_) throw Error("matrix apply shape mismatch");
  RatVec out(rows_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      if (at(r, c) == 0 || v[c] == 0) continue;
      out[r] += at(r, c) * v[c];
    }
  return out;
}

RatVec RationalMatrix::column(std::size_t c) const {
  RatVec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
  return out;
}

std::size_t RationalMatrix::rank() const {
  if (rows_ == 0 || cols_ == 0) return 0;
  // clear denominators row by row, then fraction-free Bareiss elimination
  std::vector<std::vector<mpz_class>> m(rows_, std::vector<mpz_class>(cols_));
  for (std::size_t r = 0; r < rows_; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto& den = at(r, c).get_den();
      l = l / gcd(l, den) * den;
    }
    for (std::size_t c = 0; c < cols_; ++c) {
      const Rational& q = at(r, c);
      m[r][c] = q.get_num() * (l / q.get_den());
    }
  }
  mpz_class prev = 1, t1, t2;
  std::size_t rank = 0, row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t p = row;
    while (p < rows_ && m[p][col] == 0) ++p;
    if (p == rows_) continue;
    std::swap(m[p], m[row]);
    for (std::size_t i = row + 1; i < rows_; ++i) {
      for (std::size_t j = col + 1; j < cols_; ++j) {
        t1 = m[row][col] * m[i][j];
        t2 = m[i][col] * m[row][j];
        t1 -= t2;
        mpz_divexact(m[i][j].get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][col] = 0;
    }
    prev = m[row][col];
    ++rank;
    ++row;
  }
  return rank;
}

RationalMatrix RationalMatrix::rref(std::vector<std::size_t>* pivot_cols) const {
  RationalMatrix m = *this;
  if (pivot_cols) pivot_cols->clear();
  std::size_t row = 0;
  Rational factor;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t p = row;
    while (p < rows_ && m.at(p, col) == 0) ++p;
    if (p == rows_) continue;
    if (p != row)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(p, j), m.at(row, j));
    Rational inv = 1 / m.at(row, col);
    for (std::size_t j = col; j < cols_; ++j) m.at(row, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      factor = m.at(i, col);
      for (std::size_t j = col; j < cols_; ++j)
        m.at(i, j) -= factor * m.at(row, j);
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++row;
  }
  return m;
}

std::vector<RatVec> RationalMatrix::nullspace_basis() const {
  std::vector<std::size_t> pivots;
  RationalMatrix r = rref(&pivots);
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
    if (is_pivot[free_col]) continue;
    RatVec v(cols_, Rational(0));
    v[free_col] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -r.at(i, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> RationalMatrix::solve(const RatVec& rhs) const {
  if (rhs.size() != rows_) throw Error("solve shape mismatch");
  RationalMatrix aug(rows_, cols_ + 1);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
    aug.at(r, cols_) = rhs[r];
  }
  std::vector<std::size_t> pivots;
  RationalMatrix r = aug.rref(&pivots);
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;  // 0 = 1
  RatVec x(cols_, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = r.at(i, cols_);
  return x;
}

std::optional<RationalMatrix> RationalMatrix::inverse() const {
  if (rows_ != cols_) throw Error("inverse of non-square matrix");
  RationalMatrix aug(rows_, 2 * cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
    aug.at(r, cols_ + r) = 1;
  }
  std::vector<std::size_t> pivots;
  RationalMatrix rr = aug.rref(&pivots);
  if (pivots.size() != rows_) return std::nullopt;
  for (std::size_t i = 0; i < rows_; ++i)
    if (pivots[i] != i) return std::nullopt;
  RationalMatrix inv(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) inv.at(r, c) = rr.at(r, cols_ + c);
  return inv;
}

std::size_t span_rank(const std::vector<RatVec>& vectors) {
  if (vectors.empty()) return 0;
  return RationalMatrix::from_rows(vectors).rank();
}

FeasibilityResult solve_equality_feasibility(const RationalMatrix& A,
                                             const RatVec& b) {
  const std::size_t m = A.rows(), n = A.cols();
  if (b.size() != m) throw Error("feasibility shape mismatch");

  // Tableau [A | I | b], basis starts on the artificial columns; minimize
  // the sum of artificials with Bland's rule. Artificials never re-enter.
  const std::size_t width = n + m + 1;
  std::vector<RatVec> t(m, RatVec(width, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    int sign = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * A.at(i, j);
    t[i][n + i] = 1;
    t[i][width - 1] = sign * b[i];
  }
  // objective row: w_j = sum_i t[i][j] over structural columns
  RatVec w(width, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) {
      std::size_t col = (j == n) ? width - 1 : j;
      w[col] += t[i][col];
    }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  Rational factor;
  for (;;) {
    // Bland: smallest structural index with positive reduced cost
    std::size_t enter = width;
    for (std::size_t j = 0; j < n; ++j)
      if (w[j] > 0) { enter = j; break; }
    if (enter == width) break;

    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][width - 1] / t[i][enter];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) {
      // unbounded reduced direction cannot happen in phase 1 (w >= 0 below)
      throw Error("phase-1 simplex: unbounded column");
    }

    Rational inv = 1 / t[leave][enter];
    for (std::size_t j = 0; j < width; ++j) t[leave][j] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      factor = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= factor * t[leave][j];
    }
    if (w[enter] != 0) {
      factor = w[enter];
      for (std::size_t j = 0; j < width; ++j) w[j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }

  FeasibilityResult res;
  if (w[width - 1] != 0) {
    res.feasible = false;
    return res;
  }
  res.feasible = true;
  res.point.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.point[basis[i]] = t[i][width - 1];
  return res;
}

}  // namespace rum
