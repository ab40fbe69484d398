#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tcspan/poset.hpp"
#include "tcspan/spanner.hpp"

namespace tcspan {

/// Bit length used by the prefix construction for an n-element poset:
/// ceil(log2 n), and 1 when n == 1.
unsigned prefix_bits(std::size_t n);

/// The ell-bit code formed by the first i bits of t, then a single 1, then
/// ell-i-1 zeros. Requires t < 2^ell and i < ell.
std::uint64_t prefix_point(std::uint64_t t, unsigned i, unsigned ell);

/// Per-dimension relay between x < y: in each dimension the prefix code of x
/// at the length of the longest common prefix of x_i and y_i. Satisfies
/// x <= z <= y. Throws InputError when x_i == y_i in some dimension.
GridPoint lcp_point(const GridPoint& x, const GridPoint& y, unsigned ell);

/// Steiner 2-TC-spanner of a canonical poset: every element is joined to each
/// comparable prefix point (p_{i_1}(x_1), ..., p_{i_d}(x_d)). Candidate points
/// are identified by coordinates, so a point equal to an element is that
/// element. Steiner ids are assigned in lexicographic order of coordinates.
SpannerGraph build_steiner_2tc(const Poset& p);

/// Coordinate and edge lookup over a spanner produced by build_steiner_2tc,
/// answering two-hop queries without graph search.
class PathIndex {
 public:
  explicit PathIndex(const SpannerGraph& s);

  /// Vertex sequence x -> y or x -> z -> y. Throws InputError when x is not
  /// strictly below y, and std::logic_error when a relay edge is missing.
  std::vector<VertexId> path(VertexId x, VertexId y) const;

  unsigned ell() const { return ell_; }

 private:
  bool has_edge(VertexId tail, VertexId head) const;

  const SpannerGraph* graph_;
  unsigned ell_;
  std::unordered_map<GridPoint, VertexId, GridPointHash> by_coords_;
  std::unordered_set<std::uint64_t> edges_;
};

std::vector<VertexId> path_query(const PathIndex& index, VertexId x, VertexId y);

/// K_{n/2,n/2} embedded in [0,n-1]^2: left element i (1-based) at
/// (i, n/2+1-i), right element i at (n+1-i, i+n/2), shifted to 0-based.
/// Left elements get ids 0..n/2-1, right elements n/2..n-1.
Poset bipartite_embedding(std::size_t n);

/// The same poset with a single coordinate-free Steiner relay: n/2 edges into
/// it from the left part and n/2 edges out of it to the right part.
SpannerGraph bipartite_single_steiner(std::size_t n);

}  // namespace tcspan
