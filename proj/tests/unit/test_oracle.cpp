#include <doctest.h>

#include "support.hpp"
#include "tcspan/build.hpp"
#include "tcspan/error.hpp"
#include "tcspan/oracle.hpp"
#include "tcspan/verify.hpp"

using namespace tcspan;

TEST_CASE("oracle examples") {
  CHECK(min_2tc_bruteforce(hypergrid(3, 1)).opt_size == 2);
  CHECK(min_2tc_bruteforce(hypergrid(4, 1)).opt_size == 4);
  CHECK(min_2tc_bruteforce(hypergrid(5, 1)).opt_size == 6);
  CHECK(min_2tc_bruteforce(hypergrid(2, 2)).opt_size == 4);
  CHECK(min_ktc_bruteforce(hypergrid(4, 1), 3).opt_size == 3);
  for (unsigned k = 1; k <= 4; ++k) CHECK(min_ktc_bruteforce(hypergrid(2, 1), k).opt_size == 1);
  CHECK(min_ktc_bruteforce(hypergrid(5, 1), 2).opt_size == 6);
  CHECK(min_2tc_bruteforce(hypergrid(1, 1)).opt_size == 0);
}

TEST_CASE("oracle agrees with full subset search") {
  for (auto [m, d] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 1}, {5, 1}, {2, 2}}) {
    const Poset g = hypergrid(m, d);
    CHECK(min_2tc_bruteforce(g).opt_size == testing::naive_min_2tc(g.points()));
  }
  CounterRng rng(8, 0);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = 1 + rng.below(3);
    const Poset p = testing::random_poset(rng, 2 + rng.below(6), d, 8);
    if (count_comparable_pairs(p) > 14) continue;
    const OracleResult r = min_2tc_bruteforce(p);
    CHECK(r.opt_size == testing::naive_min_2tc(p.points()));
    CHECK(is_steiner_ktc(witness_graph(r, p), p, 2).is_valid);
  }
}

TEST_CASE("witness is a valid spanner and matches opt_size") {
  for (auto [m, d] : std::vector<std::pair<int, int>>{{3, 1}, {4, 1}, {5, 1}, {2, 2}, {6, 1}}) {
    const Poset g = hypergrid(m, d);
    for (unsigned k = 2; k <= 3; ++k) {
      const OracleResult r = k == 2 ? min_2tc_bruteforce(g) : min_ktc_bruteforce(g, k);
      CHECK(r.witness.size() == r.opt_size);
      CHECK(is_steiner_ktc(witness_graph(r, g), g, k).is_valid);
    }
  }
}

TEST_CASE("opt is monotone on lines and below the construction") {
  std::size_t last = 0;
  for (std::uint64_t m = 1; m <= 9; ++m) {
    const Poset g = hypergrid(m, 1);
    const std::size_t opt = min_2tc_bruteforce(g).opt_size;
    CHECK(opt >= last);
    last = opt;
    const SpannerGraph built = build_steiner_2tc(g);
    if (built.num_steiners() == 0) CHECK(built.edges.size() >= opt);
  }
}

TEST_CASE("oracle guards") {
  CHECK_THROWS_AS(min_2tc_bruteforce(hypergrid(12, 1)), GuardError);
  CHECK_THROWS_AS(min_2tc_bruteforce(hypergrid(8, 1), 5), GuardError);
}
