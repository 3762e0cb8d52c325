#include <doctest.h>

#include <random>
#include <set>

#include "rum/ident.hpp"
#include "test_support.hpp"

using namespace rum;
using rumtest::ord;

namespace {

SupportRestriction support_of(const UniverseContext& ctx,
                              const std::vector<std::string>& orders) {
  std::vector<LinearOrder> os;
  for (const auto& s : orders) os.push_back(ord(ctx, s));
  return SupportRestriction::of_orders(ctx, os);
}

const std::vector<std::string> kSixOrders = {"abcdef", "baefcd", "cdbafe",
                                             "abefcd", "bacdfe", "cdbaef"};

}  // namespace

TEST_CASE("is_identified_support on the worked examples") {
  UniverseContext four(rumtest::abcd());
  RyserContext rc4(four);
  CHECK_FALSE(is_identified_support(
      rc4, support_of(four, {"abcd", "badc", "abdc", "bacd"})));
  CHECK(is_identified_support(rc4, support_of(four, {"abcd", "abdc"})));

  UniverseContext six(rumtest::abcdef());
  RyserContext rc6(six);
  CHECK_FALSE(is_identified_support(rc6, support_of(six, kSixOrders)));
}

TEST_CASE("separable pairs vs contained squares") {
  UniverseContext four(rumtest::abcd());
  auto fishburn = support_of(four, {"abcd", "badc", "abdc", "bacd"});
  CHECK(has_separable_pair(four, fishburn));
  CHECK(contains_conjugate_square(four, fishburn));
  auto pair_only = support_of(four, {"abcd", "badc"});
  CHECK(has_separable_pair(four, pair_only));
  CHECK_FALSE(contains_conjugate_square(four, pair_only));
  auto none = support_of(four, {"abcd", "abdc"});
  CHECK_FALSE(has_separable_pair(four, none));
  CHECK_FALSE(contains_conjugate_square(four, none));

  // the six-order support carries separable pairs (the zippering pairs) but
  // no complete conjugate square, and is still unidentified
  UniverseContext six(rumtest::abcdef());
  RyserContext rc6(six);
  auto sixsup = support_of(six, kSixOrders);
  CHECK(has_separable_pair(six, sixsup));
  CHECK_FALSE(contains_conjugate_square(six, sixsup));
  CHECK_FALSE(is_identified_support(rc6, sixsup));
}

TEST_CASE("point identification") {
  UniverseContext four(rumtest::abcd());
  auto pm = Distribution::make(four, point_mass(four, ord(four, "abcd")).w);
  CHECK(point_identified_unrestricted(four, pm));
  auto mu12 = rumtest::uniform_dist(four, {"abcd", "badc"});
  CHECK_FALSE(point_identified_unrestricted(four, mu12));

  UniverseContext six(rumtest::abcdef());
  auto mu123 = rumtest::uniform_dist(six, {"abcdef", "baefcd", "cdbafe"});
  CHECK_FALSE(point_identified_unrestricted(six, mu123));
}

TEST_CASE("rank test agrees with the subspace test (small exhaustive)") {
  UniverseContext ctx(rumtest::abcd());
  RyserContext rc(ctx);
  // all supports of size <= 4 over a fixed pool to keep the unit suite fast;
  // the acceptance suite runs the full |S| <= 6 sweep
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < ctx.order_count(); i += 2) pool.push_back(i);
  for (std::uint32_t mask = 1; mask < (1u << pool.size()); ++mask) {
    if (__builtin_popcount(mask) > 4) continue;
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if ((mask >> i) & 1u) ids.push_back(pool[i]);
    auto s = SupportRestriction::of_ids(ids);
    CHECK(is_identified_support(rc, s) ==
          (ryser_support_intersection_dim(rc, s) == 0));
  }
}

TEST_CASE("equivalence class of the Fishburn uniform") {
  UniverseContext ctx(rumtest::abcd());
  RyserContext rc(ctx);
  auto mu12 = rumtest::uniform_dist(ctx, {"abcd", "badc"});
  auto mu34 = rumtest::uniform_dist(ctx, {"abdc", "bacd"});
  auto s = support_of(ctx, {"abcd", "badc", "abdc", "bacd"});
  auto report = equivalence_class(rc, mu12, s);
  CHECK(report.class_dim == 1);
  CHECK(report.extreme);
  REQUIRE(report.witnesses.has_value());
  bool found = false;
  for (const auto& w : *report.witnesses)
    if (w == mu34) found = true;
  CHECK(found);
  for (const auto& w : *report.witnesses)
    CHECK(behaviorally_equivalent(ctx, mu12, w));
}

TEST_CASE("equivalence class of a point mass is a point") {
  UniverseContext ctx(rumtest::abcd());
  RyserContext rc(ctx);
  auto pm = Distribution::make(ctx, point_mass(ctx, ord(ctx, "abcd")).w);
  auto report = equivalence_class(rc, pm, SupportRestriction::full(ctx));
  CHECK(report.class_dim == 0);
  CHECK_FALSE(report.witnesses.has_value());
  CHECK(report.extreme);
}

TEST_CASE("equivalence class of the six-order uniform") {
  UniverseContext ctx(rumtest::abcdef());
  RyserContext rc(ctx);
  auto mu_all = rumtest::uniform_dist(ctx, kSixOrders);
  auto mu123 = rumtest::uniform_dist(ctx, {"abcdef", "baefcd", "cdbafe"});
  auto mu456 = rumtest::uniform_dist(ctx, {"abefcd", "bacdfe", "cdbaef"});
  auto report = equivalence_class(rc, mu_all, support_of(ctx, kSixOrders));
  CHECK(report.class_dim == 1);
  REQUIRE(report.witnesses.has_value());
  std::set<RatVec> witness_set;
  for (const auto& w : *report.witnesses) witness_set.insert(w.w);
  CHECK(witness_set.count(mu123.w) == 1);
  CHECK(witness_set.count(mu456.w) == 1);
}

TEST_CASE("support violations are rejected") {
  UniverseContext ctx(rumtest::abcd());
  RyserContext rc(ctx);
  auto mu12 = rumtest::uniform_dist(ctx, {"abcd", "badc"});
  auto s = support_of(ctx, {"abcd", "abdc"});
  CHECK_THROWS_AS(equivalence_class(rc, mu12, s), DomainError);
  CHECK_THROWS_AS(is_extreme(rc, mu12, s), DomainError);
  CHECK_THROWS_AS(enumerate_extreme_points(rc, mu12, s), DomainError);
}

TEST_CASE("is_extreme on the worked examples") {
  UniverseContext ctx(rumtest::abcd());
  RyserContext rc(ctx);
  auto full = SupportRestriction::full(ctx);
  auto mu12 = rumtest::uniform_dist(ctx, {"abcd", "badc"});
  CHECK(is_extreme(rc, mu12, full));  // two independent columns
  auto uniform4 = rumtest::uniform_dist(ctx, {"abcd", "badc", "abdc", "bacd"});
  CHECK_FALSE(is_extreme(rc, uniform4, full));  // swap dependency
  auto pm = Distribution::make(ctx, point_mass(ctx, ord(ctx, "abcd")).w);
  CHECK(is_extreme(rc, pm, full));
}

TEST_CASE("vertex enumeration: Fishburn segment") {
  UniverseContext ctx(rumtest::abcd());
  RyserContext rc(ctx);
  auto mu12 = rumtest::uniform_dist(ctx, {"abcd", "badc"});
  auto mu34 = rumtest::uniform_dist(ctx, {"abdc", "bacd"});
  auto s = support_of(ctx, {"abcd", "badc", "abdc", "bacd"});
  auto verts = enumerate_extreme_points(rc, mu12, s);
  CHECK_FALSE(verts.truncated);
  REQUIRE(verts.vertices.size() == 2);
  std::set<RatVec> got{verts.vertices[0].w, verts.vertices[1].w};
  CHECK(got == std::set<RatVec>{mu12.w, mu34.w});
}

TEST_CASE("vertex enumeration: singleton class") {
  UniverseContext ctx(rumtest::abcd());
  RyserContext rc(ctx);
  auto pm = Distribution::make(ctx, point_mass(ctx, ord(ctx, "acbd")).w);
  auto verts = enumerate_extreme_points(rc, pm, SupportRestriction::full(ctx));
  REQUIRE(verts.vertices.size() == 1);
  CHECK(verts.vertices[0] == pm);
}

TEST_CASE("vertex enumeration: six-order class") {
  UniverseContext ctx(rumtest::abcdef());
  RyserContext rc(ctx);
  auto mu_all = rumtest::uniform_dist(ctx, kSixOrders);
  auto mu123 = rumtest::uniform_dist(ctx, {"abcdef", "baefcd", "cdbafe"});
  auto mu456 = rumtest::uniform_dist(ctx, {"abefcd", "bacdfe", "cdbaef"});
  auto verts =
      enumerate_extreme_points(rc, mu_all, support_of(ctx, kSixOrders));
  std::set<RatVec> got;
  for (const auto& v : verts.vertices) got.insert(v.w);
  CHECK(got.count(mu123.w) == 1);
  CHECK(got.count(mu456.w) == 1);
  // every vertex distinct, extreme, and equivalent to the input
  CHECK(got.size() == verts.vertices.size());
  for (const auto& v : verts.vertices) {
    CHECK(behaviorally_equivalent(ctx, v, mu_all));
    CHECK(is_extreme(rc, v, support_of(ctx, kSixOrders)));
  }
}

TEST_CASE("zipper on the Fishburn example") {
  UniverseContext ctx(rumtest::abcd());
  auto mu12 = rumtest::uniform_dist(ctx, {"abcd", "badc"});
  auto mu34 = rumtest::uniform_dist(ctx, {"abdc", "bacd"});
  auto seq = zipper(ctx, mu12, mu34);
  REQUIRE(seq.steps.size() == 1);
  CHECK(seq.steps[0].weight == make_rational(1, 2));
  CHECK(seq.steps[0].square ==
        make_conjugate_square(ord(ctx, "abcd"), ord(ctx, "badc"), 2));
  CHECK(seq.steps[0].direction == SwapStep::Direction::Forward);
  CHECK(apply_swaps(ctx, mu12, seq) == mu34);
}

TEST_CASE("zipper on the six-order example, both directions") {
  UniverseContext ctx(rumtest::abcdef());
  auto mu123 = rumtest::uniform_dist(ctx, {"abcdef", "baefcd", "cdbafe"});
  auto mu456 = rumtest::uniform_dist(ctx, {"abefcd", "bacdfe", "cdbaef"});
  auto fwd = zipper(ctx, mu123, mu456);
  CHECK(apply_swaps(ctx, mu123, fwd) == mu456);
  CHECK(fwd.steps.size() <= 8);  // a handful of swaps suffices
  auto bwd = zipper(ctx, mu456, mu123);
  CHECK(apply_swaps(ctx, mu456, bwd) == mu123);
  for (const auto& st : fwd.steps) CHECK(st.weight > 0);
  CHECK(fwd.provenance.size() == fwd.steps.size());
}

TEST_CASE("zipper trivial and error cases") {
  UniverseContext ctx(rumtest::abcd());
  auto mu12 = rumtest::uniform_dist(ctx, {"abcd", "badc"});
  auto seq = zipper(ctx, mu12, mu12);
  CHECK(seq.steps.empty());
  auto pm = Distribution::make(ctx, point_mass(ctx, ord(ctx, "abcd")).w);
  CHECK_THROWS_AS(zipper(ctx, mu12, pm), DomainError);
}

TEST_CASE("apply_swaps catches simplex exits with the step index") {
  UniverseContext ctx(rumtest::abcd());
  auto mu12 = rumtest::uniform_dist(ctx, {"abcd", "badc"});
  SwapSequence seq;
  SwapStep step;
  step.square = make_conjugate_square(ord(ctx, "abcd"), ord(ctx, "badc"), 2);
  step.weight = Rational(2);
  step.direction = SwapStep::Direction::Forward;
  seq.steps.push_back(step);
  try {
    apply_swaps(ctx, mu12, seq);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("step 0") != std::string::npos);
  }
  CHECK(apply_swaps(ctx, mu12, SwapSequence{}) == mu12);
}

TEST_CASE("zipper round trips on random equivalent pairs") {
  std::mt19937_64 rng(53);
  for (auto u : {rumtest::abcd(), rumtest::abcde()}) {
    UniverseContext ctx(u);
    for (int t = 0; t < 40; ++t) {
      auto a = rumtest::random_distribution(ctx, rng);
      auto b = rumtest::random_equivalent(ctx, a, rng, 8);
      auto seq = zipper(ctx, a, b);
      CHECK(apply_swaps(ctx, a, seq) == b);
    }
  }
}

TEST_CASE("zipper handles degenerate universes") {
  UniverseContext two(Universe({"a", "b"}));
  auto mu = rumtest::uniform_dist(two, {"ab", "ba"});
  CHECK(zipper(two, mu, mu).steps.empty());
  UniverseContext three(rumtest::abc());
  auto mu3 = rumtest::uniform_dist(three, {"abc", "cba"});
  CHECK(zipper(three, mu3, mu3).steps.empty());
}

TEST_CASE("identified support means every class is a point") {
  UniverseContext ctx(rumtest::abcd());
  RyserContext rc(ctx);
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<std::size_t> pick(0, ctx.order_count() - 1);
  std::uniform_int_distribution<int> size_pick(1, 6), weight(1, 9);
  for (int t = 0; t < 40; ++t) {
    std::vector<std::size_t> ids;
    int s = size_pick(rng);
    for (int i = 0; i < s; ++i) ids.push_back(pick(rng));
    auto sup = SupportRestriction::of_ids(ids);
    bool ident = is_identified_support(rc, sup);
    // a few random distributions on the support
    bool all_point_classes = true;
    for (int r = 0; r < 4; ++r) {
      RatVec w(ctx.order_count(), Rational(0));
      long total = 0;
      std::vector<long> raw(sup.order_ids.size());
      for (auto& x : raw) {
        x = weight(rng);
        total += x;
      }
      for (std::size_t i = 0; i < sup.order_ids.size(); ++i)
        w[sup.order_ids[i]] = make_rational(raw[i], total);
      auto mu = Distribution::make(ctx, std::move(w));
      auto rep = equivalence_class(rc, mu, sup);
      if (rep.class_dim != 0) all_point_classes = false;
    }
    if (ident) CHECK(all_point_classes);
    if (!all_point_classes) CHECK_FALSE(ident);
  }
}

TEST_CASE("extreme iff subspace condition on the support") {
  std::mt19937_64 rng(61);
  for (auto u : {rumtest::abcd(), rumtest::abcde()}) {
    UniverseContext ctx(u);
    RyserContext rc(ctx);
    auto full = SupportRestriction::full(ctx);
    for (int t = 0; t < 30; ++t) {
      auto mu = rumtest::random_distribution(ctx, rng);
      auto sup = SupportRestriction::of_ids(mu.support());
      CHECK(is_extreme(rc, mu, full) ==
            (ryser_support_intersection_dim(rc, sup) == 0));
    }
  }
}

TEST_CASE("extreme distributions have singleton classes on their support") {
  UniverseContext ctx(rumtest::abcde());
  RyserContext rc(ctx);
  std::mt19937_64 rng(67);
  int extremes = 0;
  for (int t = 0; t < 30; ++t) {
    auto mu = rumtest::random_distribution(ctx, rng, 5);
    auto sup = SupportRestriction::of_ids(mu.support());
    if (!is_extreme(rc, mu, sup)) continue;
    ++extremes;
    CHECK(equivalence_class(rc, mu, sup).class_dim == 0);
  }
  CHECK(extremes > 0);
}
