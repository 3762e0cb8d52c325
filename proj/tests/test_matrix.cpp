#include <doctest.h>

#include <random>

#include "rum/matrix.hpp"

using namespace rum;

namespace {

RationalMatrix from_ints(const std::vector<std::vector<long>>& rows) {
  RationalMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c];
  return m;
}

}  // namespace

TEST_CASE("rank") {
  CHECK(from_ints({{1, 2}, {2, 4}}).rank() == 1);
  CHECK(from_ints({{1, 0}, {0, 1}}).rank() == 2);
  CHECK(from_ints({{0, 0}, {0, 0}}).rank() == 0);
  CHECK(from_ints({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}).rank() == 2);
  // rationals: entries with denominators
  RationalMatrix m(2, 2);
  m.at(0, 0) = make_rational(1, 2);
  m.at(0, 1) = make_rational(1, 3);
  m.at(1, 0) = make_rational(3, 2);
  m.at(1, 1) = 1;
  CHECK(m.rank() == 1);  // second row is 3x the first
  m.at(1, 1) = 2;
  CHECK(m.rank() == 2);
}

TEST_CASE("rref, nullspace, solve, inverse") {
  auto m = from_ints({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  auto ns = m.nullspace_basis();
  REQUIRE(ns.size() == 1);
  for (const auto& v : ns) {
    auto img = m.apply(v);
    for (const auto& x : img) CHECK(x == 0);
  }

  auto sol = m.solve({make_rational(6), make_rational(15), make_rational(24)});
  REQUIRE(sol.has_value());
  auto img = m.apply(*sol);
  CHECK(img[0] == 6);
  CHECK(img[1] == 15);
  CHECK(img[2] == 24);
  CHECK_FALSE(m.solve({Rational(1), Rational(0), Rational(0)}).has_value());

  auto inv = from_ints({{2, 1}, {1, 1}}).inverse();
  REQUIRE(inv.has_value());
  auto prod = *inv * from_ints({{2, 1}, {1, 1}});
  CHECK(prod == RationalMatrix::identity(2));
  CHECK_FALSE(from_ints({{1, 2}, {2, 4}}).inverse().has_value());
}

TEST_CASE("rank agrees with rref pivot count on random matrices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 7), entry(-3, 3);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = dim(rng), c = dim(rng);
    RationalMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        m.at(i, j) = make_rational(entry(rng), 1 + (t % 3));
    std::vector<std::size_t> pivots;
    m.rref(&pivots);
    CHECK(m.rank() == pivots.size());
  }
}

TEST_CASE("phase-1 feasibility") {
  // x + y = 1, x,y >= 0
  auto a = from_ints({{1, 1}});
  auto res = solve_equality_feasibility(a, {Rational(1)});
  REQUIRE(res.feasible);
  CHECK(res.point[0] + res.point[1] == 1);
  CHECK(res.point[0] >= 0);
  CHECK(res.point[1] >= 0);

  // x = -1 infeasible over x >= 0
  auto b = from_ints({{1}});
  CHECK_FALSE(solve_equality_feasibility(b, {Rational(-1)}).feasible);

  // redundant rows tolerated
  auto c = from_ints({{1, 1}, {2, 2}});
  auto res2 = solve_equality_feasibility(c, {Rational(1), Rational(2)});
  CHECK(res2.feasible);
  // inconsistent redundancy
  auto res3 = solve_equality_feasibility(c, {Rational(1), Rational(3)});
  CHECK_FALSE(res3.feasible);

  // negative right-hand side but feasible: x - y = -2
  auto d = from_ints({{1, -1}});
  auto res4 = solve_equality_feasibility(d, {Rational(-2)});
  REQUIRE(res4.feasible);
  CHECK(res4.point[0] - res4.point[1] == -2);

  // equality system with a unique degenerate solution
  auto e = from_ints({{1, 1}, {1, -1}});
  auto res5 = solve_equality_feasibility(e, {Rational(2), Rational(2)});
  REQUIRE(res5.feasible);
  CHECK(res5.point[0] == 2);
  CHECK(res5.point[1] == 0);
}

TEST_CASE("phase-1 on random feasible and infeasible systems") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> dim(1, 6), entry(0, 3);
  for (int t = 0; t < 100; ++t) {
    std::size_t m = dim(rng), n = dim(rng) + 2;
    RationalMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) = entry(rng);
    // feasible by construction: b = A x0 for a nonnegative x0
    RatVec x0(n);
    for (auto& x : x0) x = entry(rng);
    auto b = a.apply(x0);
    auto res = solve_equality_feasibility(a, b);
    REQUIRE(res.feasible);
    auto img = a.apply(res.point);
    CHECK(img == b);
    for (const auto& x : res.point) CHECK(x >= 0);
  }
}
