#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "tcspan/poset.hpp"

namespace tcspan {

using VertexId = std::uint32_t;

struct Edge {
  VertexId tail = 0;
  VertexId head = 0;
  auto operator<=>(const Edge&) const = default;
  bool operator==(const Edge&) const = default;
};

/// Directed graph over the elements of a base poset (ids 0..num_originals-1)
/// plus Steiner vertices (ids num_originals..). Any vertex may carry grid
/// coordinates; Steiner vertices without coordinates are abstract relays.
struct SpannerGraph {
  std::size_t num_originals = 0;
  std::size_t dim = 0;
  std::vector<std::optional<GridPoint>> coords;  // one slot per vertex
  std::vector<Edge> edges;                       // sorted, unique

  std::size_t num_vertices() const { return coords.size(); }
  std::size_t num_steiners() const { return coords.size() - num_originals; }
  bool is_steiner(VertexId v) const { return v >= num_originals; }

  /// Sorts and deduplicates edges, then checks structural invariants (ids in
  /// range, no self-loops, coordinate dimension, distinct coordinates).
  /// Dominance along edges is the verifier's job.
  void normalize();
};

/// Out-adjacency in CSR form.
struct Adjacency {
  std::vector<std::size_t> offsets;
  std::vector<VertexId> targets;

  explicit Adjacency(const SpannerGraph& g);
  std::size_t size() const { return offsets.size() - 1; }
  auto out(VertexId v) const {
    return std::span<const VertexId>(targets.data() + offsets[v], offsets[v + 1] - offsets[v]);
  }
};

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// BFS hop distances from `source` to every vertex (kUnreachable when none).
std::vector<std::uint32_t> bfs_distances(const Adjacency& adj, VertexId source);

/// Copies the graph with originals taking the coordinates of `base` and
/// Steiner coordinates dropped. Used when a spanner built on one embedding is
/// reinterpreted over another embedding of the same poset.
SpannerGraph rebase_originals(const SpannerGraph& h, const Poset& base);

}  // namespace tcspan
