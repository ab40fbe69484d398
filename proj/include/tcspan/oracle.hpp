#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tcspan/poset.hpp"
#include "tcspan/spanner.hpp"

namespace tcspan {

struct OracleResult {
  std::size_t opt_size = 0;
  std::vector<Edge> witness;  // over element ids, sorted
  std::uint64_t explored = 0; // search-tree nodes visited
};

inline constexpr std::size_t kOracleMaxPairs = 40;
inline constexpr std::uint64_t kOracleDefaultBudget = 10'000'000;

/// Exact sparsest 2-TC-spanner over edges of the transitive closure. A pair
/// u < v is served by its own edge or by a relay w with both (u,w) and (w,v)
/// selected. Branch and bound on edge variables: pairs without any relay are
/// forced in, branching follows the uncovered pair with the fewest remaining
/// options, and a disjoint-option packing bounds the remaining cost.
/// Throws GuardError when the closure exceeds max_pairs or the search visits
/// more than `budget` nodes.
OracleResult min_2tc_bruteforce(const Poset& g, std::uint64_t budget = kOracleDefaultBudget,
                                std::size_t max_pairs = kOracleMaxPairs);

/// Same search with feasibility "every comparable pair within k hops".
OracleResult min_ktc_bruteforce(const Poset& g, unsigned k, std::uint64_t budget = kOracleDefaultBudget,
                                std::size_t max_pairs = kOracleMaxPairs);

/// Wraps an oracle witness as a spanner without Steiner vertices.
SpannerGraph witness_graph(const OracleResult& r, const Poset& g);

}  // namespace tcspan
