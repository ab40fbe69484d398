#include "tcspan/spanner.hpp"

#include <algorithm>
#include <unordered_map>

#include <fmt/format.h>

#include "tcspan/error.hpp"

namespace tcspan {

void SpannerGraph::normalize() {
  if (num_originals > coords.size()) throw InputError("spanner has fewer vertices than originals");
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const auto n = coords.size();
  for (const Edge& e : edges) {
    if (e.tail >= n || e.head >= n) {
      throw InputError(fmt::format("edge ({},{}) references a missing vertex", e.tail, e.head));
    }
    if (e.tail == e.head) throw InputError(fmt::format("self-loop at vertex {}", e.tail));
  }
  std::unordered_map<GridPoint, VertexId, GridPointHash> owner;
  for (VertexId v = 0; v < n; ++v) {
    if (!coords[v]) continue;
    if (coords[v]->dim() != dim) {
      throw InputError(fmt::format("vertex {} has {} coordinates, expected {}", v, coords[v]->dim(), dim));
    }
    auto [it, fresh] = owner.emplace(*coords[v], v);
    if (!fresh) {
      throw InputError(fmt::format("vertices {} and {} share coordinates {}", it->second, v,
                                   coords[v]->to_string()));
    }
  }
}

Adjacency::Adjacency(const SpannerGraph& g) : offsets(g.num_vertices() + 1, 0) {
  for (const Edge& e : g.edges) ++offsets[e.tail + 1];
  for (std::size_t v = 0; v < g.num_vertices(); ++v) offsets[v + 1] += offsets[v];
  targets.resize(g.edges.size());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  // edges are sorted, so each out-list ends up sorted by head id
  for (const Edge& e : g.edges) targets[fill[e.tail]++] = e.head;
}

std::vector<std::uint32_t> bfs_distances(const Adjacency& adj, VertexId source) {
  std::vector<std::uint32_t> dist(adj.size(), kUnreachable);
  std::vector<VertexId> frontier{source};
  dist[source] = 0;
  std::size_t head = 0;
  while (head < frontier.size()) {
    VertexId u = frontier[head++];
    for (VertexId w : adj.out(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        frontier.push_back(w);
      }
    }
  }
  return dist;
}

SpannerGraph rebase_originals(const SpannerGraph& h, const Poset& base) {
  if (h.num_originals != base.size()) {
    throw InputError(fmt::format("spanner has {} originals but poset has {} elements", h.num_originals,
                                 base.size()));
  }
  SpannerGraph out = h;
  out.dim = base.dim();
  for (VertexId v = 0; v < out.num_vertices(); ++v) {
    if (out.is_steiner(v)) {
      out.coords[v].reset();
    } else {
      out.coords[v] = base.point(v);
    }
  }
  return out;
}

}  // namespace tcspan
