#include "rum/context.hpp"

#include <algorithm>

namespace rum {

namespace {

std::vector<int> mask_members(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if ((mask >> i) & 1u) out.push_back(i);
  return out;
}

}  // namespace

CellIndex::CellIndex(int n) : n_(n) {
  std::vector<std::uint32_t> menus;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) menus.push_back(mask);
  std::sort(menus.begin(), menus.end(),
            [](std::uint32_t a, std::uint32_t b) {
              int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
              if (pa != pb) return pa < pb;
              return mask_members(a) < mask_members(b);
            });
  row_lookup_.assign(static_cast<std::size_t>(n) << n, -1);
  for (auto mask : menus)
    for (int x : mask_members(mask)) {
      row_lookup_[(static_cast<std::size_t>(x) << n_) + mask] =
          static_cast<std::int32_t>(cells_.size());
      cells_.emplace_back(x, mask);
    }
}

std::size_t CellIndex::row_of(int x, Menu a) const {
  if (!a.contains(x)) throw DomainError("alternative not in menu");
  auto r = row_lookup_[(static_cast<std::size_t>(x) << n_) + a.mask];
  if (r < 0) throw DomainError("bad cell");
  return static_cast<std::size_t>(r);
}

struct UniverseContext::Caches {
  // per cell: sorted ids of orders in U(x,A)
  std::vector<std::vector<std::uint32_t>> ucells;
  // per order: cell rows where the order's phi column is 1
  std::vector<std::vector<std::uint16_t>> maximal;
  RationalMatrix phi;
};

UniverseContext::UniverseContext(Universe u)
    : u_(std::move(u)), orders_(enumerate_orders(u_)), cells_(u_.size()) {}

UniverseContext::~UniverseContext() = default;

const UniverseContext::Caches& UniverseContext::caches() const {
  std::call_once(caches_once_, [this] {
    auto c = std::make_unique<Caches>();
    const int n = u_.size();
    c->ucells.resize(cells_.size());
    c->maximal.resize(orders_.size());
    for (std::size_t oid = 0; oid < orders_.size(); ++oid) {
      const auto& o = orders_[oid];
      // upper contour sets: walking the ranking top-down
      std::uint32_t above = 0;
      for (int pos = 0; pos < n; ++pos) {
        int x = o.ranking[pos];
        c->ucells[cells_.row_of(x, Menu{above | (1u << x)})].push_back(
            static_cast<std::uint32_t>(oid));
        above |= 1u << x;
      }
      // cells where x is maximal in A under o: for each prefix element x,
      // menus A = {x} + subset of alternatives ranked below x
      std::uint32_t below = (1u << n) - 1;
      for (int pos = 0; pos < n; ++pos) {
        int x = o.ranking[pos];
        below &= ~(1u << x);
        // enumerate subsets of `below`
        std::uint32_t sub = below;
        for (;;) {
          c->maximal[oid].push_back(static_cast<std::uint16_t>(
              cells_.row_of(x, Menu{sub | (1u << x)})));
          if (sub == 0) break;
          sub = (sub - 1) & below;
        }
      }
      std::sort(c->maximal[oid].begin(), c->maximal[oid].end());
    }
    c->phi = RationalMatrix(cells_.size(), orders_.size());
    for (std::size_t oid = 0; oid < orders_.size(); ++oid)
      for (auto row : c->maximal[oid]) c->phi.at(row, oid) = 1;
    caches_ = std::move(c);
  });
  return *caches_;
}

const std::vector<std::uint32_t>& UniverseContext::upper_contour(int x,
                                                                 Menu a) const {
  return caches().ucells[cells_.row_of(x, a)];
}

const RationalMatrix& UniverseContext::phi_matrix() const {
  return caches().phi;
}

const std::vector<std::uint16_t>& UniverseContext::maximal_cells(
    std::size_t order_id) const {
  return caches().maximal.at(order_id);
}

const std::vector<ConjugateSquare>& UniverseContext::squares() const {
  std::call_once(squares_once_, [this] {
    squares_ = std::make_unique<std::vector<ConjugateSquare>>(
        enumerate_conjugate_squares(u_));
  });
  return *squares_;
}

std::vector<LinearOrder> upper_contour_orders(const UniverseContext& ctx, int x,
                                              Menu a) {
  std::vector<LinearOrder> out;
  for (auto id : ctx.upper_contour(x, a)) out.push_back(ctx.order(id));
  return out;
}

}  // namespace rum
