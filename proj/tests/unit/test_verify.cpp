#include <doctest.h>

#include "support.hpp"
#include "tcspan/build.hpp"
#include "tcspan/error.hpp"
#include "tcspan/verify.hpp"

using namespace tcspan;

namespace {

SpannerGraph plain(const Poset& p, std::initializer_list<std::pair<VertexId, VertexId>> edges) {
  SpannerGraph h;
  h.num_originals = p.size();
  h.dim = p.dim();
  for (const auto& pt : p.points()) h.coords.emplace_back(pt);
  for (auto [a, b] : edges) h.edges.push_back({a, b});
  h.normalize();
  return h;
}

}  // namespace

TEST_CASE("verify examples") {
  const Poset h81 = hypergrid(8, 1);
  CHECK(is_steiner_ktc(build_steiner_2tc(h81), h81, 2).is_valid);

  const Poset line = hypergrid(4, 1);
  const auto rep = is_steiner_ktc(plain(line, {{0, 1}, {1, 2}, {2, 3}}), line, 2);
  CHECK_FALSE(rep.is_valid);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].kind == ViolationKind::kTooFar);
  CHECK(rep.violations[0].from == 0);
  CHECK(rep.violations[0].to == 3);
  CHECK(rep.violations[0].distance == 3);
  CHECK(is_steiner_ktc(plain(line, {{0, 1}, {1, 2}, {2, 3}}), line, 3).is_valid);

  CHECK(is_steiner_ktc(bipartite_single_steiner(4), bipartite_embedding(4), 2).is_valid);
}

TEST_CASE("verify flags forbidden reach, bad edges and id mismatch") {
  const Poset g(2, 3, {{0, 1}, {1, 0}});
  SpannerGraph h;
  h.num_originals = 2;
  h.dim = 2;
  h.coords = {std::nullopt, std::nullopt, std::nullopt};
  h.edges = {{0, 2}, {2, 1}};
  h.normalize();
  const auto rep = is_steiner_ktc(h, g, 2);
  CHECK_FALSE(rep.is_valid);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].kind == ViolationKind::kForbiddenReach);

  const Poset line = hypergrid(3, 1);
  SpannerGraph down = plain(line, {{0, 1}, {1, 2}});
  down.coords.emplace_back(GridPoint{0});  // never mind the duplicate, edge check first
  down.coords.pop_back();
  down.edges.push_back({2, 0});
  const auto bad = is_steiner_ktc(down, line, 2);
  CHECK(bad.total_violations >= 1);
  bool saw_bad_edge = false;
  for (const auto& v : bad.violations) saw_bad_edge = saw_bad_edge || v.kind == ViolationKind::kBadEdge;
  CHECK(saw_bad_edge);

  CHECK_THROWS_AS(is_steiner_ktc(plain(line, {}), hypergrid(4, 1), 2), InputError);
  CHECK_THROWS_AS(is_steiner_ktc(plain(line, {}), line, 0), InputError);
}

TEST_CASE("violations are capped and sorted, threads do not change the report") {
  const Poset g = hypergrid(60, 1);
  const SpannerGraph empty = plain(g, {});
  const auto one = is_steiner_ktc(empty, g, 2, 1);
  const auto four = is_steiner_ktc(empty, g, 2, 4);
  CHECK(one.total_violations == 60 * 59 / 2);
  CHECK(one.violations.size() == VerificationReport::kMaxViolations);
  CHECK(std::is_sorted(one.violations.begin(), one.violations.end()));
  CHECK(one.violations == four.violations);
}

TEST_CASE("replace_steiner examples") {
  // unreachable Steiner vertex is pruned
  const Poset line = hypergrid(3, 1);
  SpannerGraph h = plain(line, {{0, 1}, {1, 2}});
  h.coords.emplace_back(std::nullopt);
  h.edges.push_back({3, 2});
  h.normalize();
  const SpannerGraph r = replace_steiner(h, line, 2);
  CHECK(r.num_steiners() == 0);
  CHECK(r.edges.size() == 2);

  // bipartite n=4: the relay lands on the max of the left points, (2,2) 1-based
  const SpannerGraph b = replace_steiner(bipartite_single_steiner(4), bipartite_embedding(4), 2);
  REQUIRE(b.num_steiners() == 1);
  CHECK(*b.coords[4] == GridPoint{1, 1});
  CHECK(b.edges.size() == 4);
  CHECK(is_steiner_ktc(b, bipartite_embedding(4), 2).is_valid);

  // no Steiner vertices: unchanged
  const SpannerGraph same = plain(line, {{0, 1}, {1, 2}});
  CHECK(replace_steiner(same, line, 2).edges == same.edges);

  // invalid input is rejected
  const Poset l4 = hypergrid(4, 1);
  CHECK_THROWS_AS(replace_steiner(plain(l4, {{0, 1}, {1, 2}, {2, 3}}), l4, 2), InputError);
}

TEST_CASE("grid_spanner_from_steiner") {
  const Poset h41 = hypergrid(4, 1);
  const SpannerGraph built = build_steiner_2tc(h41);
  CHECK(grid_spanner_from_steiner(built, 4, 1, 2).edges == built.edges);

  // H_{2,2} closure edges plus an abstract midpoint relay between (0,0) and (1,1)
  const Poset h22 = hypergrid(2, 2);
  SpannerGraph h = plain(h22, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  h.coords.emplace_back(std::nullopt);
  h.edges.push_back({0, 4});
  h.edges.push_back({4, 3});
  h.normalize();
  const SpannerGraph g = grid_spanner_from_steiner(h, 2, 2, 2);
  CHECK(g.num_steiners() == 0);
  CHECK(g.edges.size() <= h.edges.size());
  CHECK(is_steiner_ktc(g, h22, 2).is_valid);

  const Poset h21 = hypergrid(2, 1);
  CHECK(grid_spanner_from_steiner(plain(h21, {{0, 1}}), 2, 1, 2).edges.size() == 1);
}

TEST_CASE("replace_steiner keeps validity on random injected instances") {
  CounterRng rng(5, 0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + rng.below(3);
    const std::size_t n = 2 + rng.below(11);
    const Poset p = testing::random_poset(rng, n, d, d == 1 ? n + 2 : 6);
    const unsigned k = 2 + static_cast<unsigned>(rng.below(2));
    const SpannerGraph base = rebase_originals(build_steiner_2tc(canonicalize_embedding(p)), p);
    const SpannerGraph h = testing::inject_steiners(base, p, rng, 1 + static_cast<unsigned>(rng.below(4)));
    REQUIRE(is_steiner_ktc(h, p, k).is_valid);
    const SpannerGraph r = replace_steiner(h, p, k);
    CHECK(is_steiner_ktc(r, p, k).is_valid);
    CHECK(r.edges.size() <= h.edges.size());
    CHECK(testing::naive_is_ktc(p.points(), r.num_vertices(), testing::edge_pairs(r), k));
    for (const auto& c : r.coords) {
      REQUIRE(c.has_value());
      for (std::size_t i = 0; i < d; ++i) CHECK((*c)[i] < p.side());
    }
  }
}

TEST_CASE("replacement point is monotone in the set") {
  CounterRng rng(6, 0);
  for (int t = 0; t < 500; ++t) {
    const std::size_t d = 1 + rng.below(4);
    std::vector<GridPoint> small;
    const std::size_t n = 1 + rng.below(6);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Coord> c(d);
      for (auto& x : c) x = static_cast<Coord>(rng.below(10));
      small.emplace_back(c);
    }
    std::vector<GridPoint> big = small;
    const std::size_t extra = rng.below(4);
    for (std::size_t i = 0; i < extra; ++i) {
      std::vector<Coord> c(d);
      for (auto& x : c) x = static_cast<Coord>(rng.below(10));
      big.emplace_back(c);
    }
    CHECK(dominance_leq(replacement_point(small), replacement_point(big)));
  }
  CHECK_THROWS_AS(replacement_point({}), InputError);
}
