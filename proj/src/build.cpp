#include "tcspan/build.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include <fmt/format.h>

#include "tcspan/error.hpp"

namespace tcspan {

unsigned prefix_bits(std::size_t n) {
  if (n <= 1) return 1;
  return static_cast<unsigned>(std::bit_width(n - 1));
}

std::uint64_t prefix_point(std::uint64_t t, unsigned i, unsigned ell) {
  if (ell == 0 || ell > 63) throw InputError(fmt::format("prefix length {} out of range", ell));
  if (i >= ell) throw InputError(fmt::format("prefix index {} not below {}", i, ell));
  if (t >> ell) throw InputError(fmt::format("{} does not fit in {} bits", t, ell));
  const unsigned low = ell - i;
  return ((t >> low) << low) | (std::uint64_t{1} << (low - 1));
}

GridPoint lcp_point(const GridPoint& x, const GridPoint& y, unsigned ell) {
  if (x.dim() != y.dim()) throw InputError("lcp_point: dimension mismatch");
  GridPoint z = x;
  for (std::size_t k = 0; k < x.dim(); ++k) {
    const std::uint64_t diff = std::uint64_t{x[k]} ^ y[k];
    if (diff == 0) {
      throw InputError(fmt::format("lcp_point: coordinate {} equal in both points (non-canonical)", k));
    }
    const auto common = ell - static_cast<unsigned>(std::bit_width(diff));
    z[k] = static_cast<Coord>(prefix_point(x[k], common, ell));
  }
  return z;
}

namespace {

enum class Order { kBelow, kAbove, kEqual, kIncomparable };

// Relation of a to b under dominance.
Order compare(const GridPoint& a, const GridPoint& b) {
  bool le = true;
  bool ge = true;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    le = le && a[k] <= b[k];
    ge = ge && a[k] >= b[k];
  }
  if (le && ge) return Order::kEqual;
  if (le) return Order::kBelow;
  if (ge) return Order::kAbove;
  return Order::kIncomparable;
}

std::uint64_t edge_key(VertexId tail, VertexId head) { return (std::uint64_t{tail} << 32) | head; }

}  // namespace

SpannerGraph build_steiner_2tc(const Poset& p) {
  if (!p.is_canonical()) {
    throw InputError("build_steiner_2tc requires a canonical embedding (distinct coordinates per dimension)");
  }
  const std::size_t n = p.size();
  const std::size_t d = p.dim();
  const unsigned ell = prefix_bits(n);

  std::unordered_map<GridPoint, VertexId, GridPointHash> vertex_of;
  vertex_of.reserve(n * 4);
  for (ElementId e = 0; e < n; ++e) vertex_of.emplace(p.point(e), e);
  std::vector<GridPoint> steiner_points;  // provisional ids n + index
  std::vector<Edge> edges;

  std::vector<unsigned> tuple(d, 0);
  GridPoint candidate;
  for (ElementId e = 0; e < n; ++e) {
    const GridPoint& x = p.point(e);
    std::fill(tuple.begin(), tuple.end(), 0U);
    candidate = x;
    while (true) {
      for (std::size_t k = 0; k < d; ++k) {
        candidate[k] = static_cast<Coord>(prefix_point(x[k], tuple[k], ell));
      }
      // When n is not a power of two a prefix point can land at or past n.
      // Nothing lies above such a point, so it would be a dead-end sink.
      bool in_grid = true;
      for (std::size_t k = 0; k < d; ++k) in_grid = in_grid && candidate[k] < n;
      const Order rel = compare(x, candidate);
      if (in_grid && (rel == Order::kBelow || rel == Order::kAbove)) {
        auto [it, fresh] = vertex_of.emplace(candidate, static_cast<VertexId>(n + steiner_points.size()));
        if (fresh) steiner_points.push_back(candidate);
        if (rel == Order::kBelow) {
          edges.push_back({e, it->second});
        } else {
          edges.push_back({it->second, e});
        }
      }
      std::size_t k = 0;
      while (k < d && ++tuple[k] == ell) tuple[k++] = 0;
      if (k == d) break;
    }
  }

  // Renumber Steiner vertices by coordinate order so the output does not
  // depend on discovery order.
  std::vector<VertexId> order(steiner_points.size());
  for (VertexId i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](VertexId a, VertexId b) { return steiner_points[a] < steiner_points[b]; });
  std::vector<VertexId> final_id(steiner_points.size());
  for (VertexId rank = 0; rank < order.size(); ++rank) final_id[order[rank]] = static_cast<VertexId>(n + rank);
  auto remap = [&](VertexId v) { return v < n ? v : final_id[v - n]; };

  SpannerGraph out;
  out.num_originals = n;
  out.dim = d;
  out.coords.reserve(n + steiner_points.size());
  for (ElementId e = 0; e < n; ++e) out.coords.emplace_back(p.point(e));
  for (VertexId rank = 0; rank < order.size(); ++rank) out.coords.emplace_back(steiner_points[order[rank]]);
  out.edges.reserve(edges.size());
  for (const Edge& edge : edges) out.edges.push_back({remap(edge.tail), remap(edge.head)});
  out.normalize();
  return out;
}

PathIndex::PathIndex(const SpannerGraph& s) : graph_(&s), ell_(prefix_bits(s.num_originals)) {
  by_coords_.reserve(s.num_vertices());
  for (VertexId v = 0; v < s.num_vertices(); ++v) {
    if (s.coords[v]) {
      by_coords_.emplace(*s.coords[v], v);
    } else if (!s.is_steiner(v)) {
      throw InputError(fmt::format("path index: original vertex {} has no coordinates", v));
    }
  }
  edges_.reserve(s.edges.size());
  for (const Edge& e : s.edges) edges_.insert(edge_key(e.tail, e.head));
}

bool PathIndex::has_edge(VertexId tail, VertexId head) const { return edges_.contains(edge_key(tail, head)); }

std::vector<VertexId> PathIndex::path(VertexId x, VertexId y) const {
  const SpannerGraph& s = *graph_;
  if (x >= s.num_originals || y >= s.num_originals) {
    throw InputError(fmt::format("path query ({},{}) must name original elements", x, y));
  }
  const GridPoint& px = *s.coords[x];
  const GridPoint& py = *s.coords[y];
  if (x == y || !dominance_leq(px, py)) {
    throw InputError(fmt::format("path query: element {} is not strictly below element {}", x, y));
  }
  const GridPoint z = lcp_point(px, py, ell_);
  auto it = by_coords_.find(z);
  if (it == by_coords_.end()) {
    throw std::logic_error(fmt::format("relay {} missing from spanner", z.to_string()));
  }
  const VertexId relay = it->second;
  if (relay == y) {
    if (!has_edge(x, y)) throw std::logic_error(fmt::format("edge ({},{}) missing from spanner", x, y));
    return {x, y};
  }
  if (!has_edge(x, relay) || !has_edge(relay, y)) {
    throw std::logic_error(fmt::format("relay edges through {} missing from spanner", relay));
  }
  return {x, relay, y};
}

std::vector<VertexId> path_query(const PathIndex& index, VertexId x, VertexId y) { return index.path(x, y); }

Poset bipartite_embedding(std::size_t n) {
  if (n < 2 || n % 2 != 0) throw InputError(fmt::format("bipartite example needs an even n >= 2, got {}", n));
  const std::size_t half = n / 2;
  std::vector<GridPoint> points;
  points.reserve(n);
  for (std::size_t i = 1; i <= half; ++i) {
    points.push_back(GridPoint{static_cast<Coord>(i - 1), static_cast<Coord>(half - i)});
  }
  for (std::size_t i = 1; i <= half; ++i) {
    points.push_back(GridPoint{static_cast<Coord>(n - i), static_cast<Coord>(i + half - 1)});
  }
  return Poset(2, n, std::move(points));
}

SpannerGraph bipartite_single_steiner(std::size_t n) {
  const Poset base = bipartite_embedding(n);
  const std::size_t half = n / 2;
  SpannerGraph s;
  s.num_originals = n;
  s.dim = 2;
  for (const GridPoint& pt : base.points()) s.coords.emplace_back(pt);
  s.coords.emplace_back(std::nullopt);
  const auto relay = static_cast<VertexId>(n);
  for (VertexId v = 0; v < half; ++v) s.edges.push_back({v, relay});
  for (VertexId v = static_cast<VertexId>(half); v < n; ++v) s.edges.push_back({relay, v});
  s.normalize();
  return s;
}

}  // namespace tcspan
