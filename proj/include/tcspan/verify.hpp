#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tcspan/poset.hpp"
#include "tcspan/spanner.hpp"

namespace tcspan {

enum class ViolationKind { kTooFar, kForbiddenReach, kBadEdge };

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  VertexId from;
  VertexId to;
  // Hop distance for too-far/forbidden-reach (kUnreachable when a comparable
  // pair is disconnected); 1 for bad edges.
  std::uint32_t distance;

  auto operator<=>(const Violation&) const = default;
};

struct VerificationReport {
  bool is_valid = true;
  std::vector<Violation> violations;  // sorted, capped at kMaxViolations
  std::size_t total_violations = 0;   // uncapped count

  static constexpr std::size_t kMaxViolations = 1000;
};

/// Checks that h is a Steiner k-TC-spanner of g: every comparable pair of
/// elements within k hops, every other ordered pair unreachable, and every
/// edge between coordinate-carrying vertices going strictly up in dominance.
/// Cost is one BFS per element, O(n * (V + E)).
VerificationReport is_steiner_ktc(const SpannerGraph& h, const Poset& g, unsigned k, unsigned threads = 1);

/// Coordinate-wise maximum of a non-empty set of points.
GridPoint replacement_point(std::span<const GridPoint> prev);

/// Embeds every Steiner vertex of a valid k-TC-spanner into the grid of g.
/// Steiner vertices no element reaches are pruned; each remaining one moves to
/// the coordinate-wise maximum of the elements that reach it. Vertices landing
/// on the same point are merged (on an element, into that element), and
/// parallel edges and self-loops are dropped. Throws InputError when h is not
/// a valid k-TC-spanner of g.
SpannerGraph replace_steiner(const SpannerGraph& h, const Poset& g, unsigned k);

/// Turns a Steiner k-TC-spanner of H_{m,d} into an ordinary one (all vertices
/// are grid points) with no more edges.
SpannerGraph grid_spanner_from_steiner(const SpannerGraph& h, std::uint64_t m, std::size_t d, unsigned k);

}  // namespace tcspan
