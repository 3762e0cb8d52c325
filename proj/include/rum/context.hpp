#ifndef RUM_CONTEXT_HPP
#define RUM_CONTEXT_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "rum/matrix.hpp"
#include "rum/universe.hpp"

namespace rum {

// Canonical ordering of the (x, A) cells with x in A: menus sorted by size
// then lexicographically by element list, alternatives by index within a
// menu. Rows of the phi matrix, choice tables and Block-Marschak tables all
// share this layout.
class CellIndex {
 public:
  explicit CellIndex(int n);

  std::size_t size() const { return cells_.size(); }
  int alt(std::size_t row) const { return cells_[row].first; }
  Menu menu(std::size_t row) const { return Menu{cells_[row].second}; }
  std::size_t row_of(int x, Menu a) const;  // throws DomainError if x not in a

 private:
  int n_;
  std::vector<std::pair<int, std::uint32_t>> cells_;
  std::vector<std::int32_t> row_lookup_;  // [x * 2^n + mask]
};

// Shared per-universe state: the enumerated order list plus lazily built,
// immutable caches (upper-contour table, phi matrix, conjugate squares).
// Queries after construction are read-only and thread-safe.
class UniverseContext {
 public:
  explicit UniverseContext(Universe u);
  ~UniverseContext();
  UniverseContext(const UniverseContext&) = delete;
  UniverseContext& operator=(const UniverseContext&) = delete;

  const Universe& universe() const { return u_; }
  int n() const { return u_.size(); }
  std::size_t order_count() const { return orders_.size(); }
  const std::vector<LinearOrder>& orders() const { return orders_; }
  const LinearOrder& order(std::size_t id) const { return orders_[id]; }
  std::size_t id_of(const LinearOrder& o) const { return order_index(o); }
  const CellIndex& cells() const { return cells_; }

  // U(x,A): ids of orders whose strict upper contour set at x is exactly
  // A \ {x}, sorted ascending. Throws DomainError unless x is in A.
  const std::vector<std::uint32_t>& upper_contour(int x, Menu a) const;

  // 0/1 matrix of the choice-probability map: rows = cells, columns =
  // orders; entry 1 iff x is maximal in A under the column's order.
  const RationalMatrix& phi_matrix() const;

  // Rows (cell ids) in which a given order's column carries a 1.
  const std::vector<std::uint16_t>& maximal_cells(std::size_t order_id) const;

  const std::vector<ConjugateSquare>& squares() const;

 private:
  struct Caches;
  const Caches& caches() const;

  Universe u_;
  std::vector<LinearOrder> orders_;
  CellIndex cells_;
  mutable std::once_flag caches_once_;
  mutable std::unique_ptr<Caches> caches_;
  mutable std::once_flag squares_once_;
  mutable std::unique_ptr<std::vector<ConjugateSquare>> squares_;
};

// Free-function form of the upper-contour query (returns orders, not ids).
std::vector<LinearOrder> upper_contour_orders(const UniverseContext& ctx, int x,
                                              Menu a);

}  // namespace rum

#endif
