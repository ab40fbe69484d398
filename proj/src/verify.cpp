#include "tcspan/verify.hpp"

#include <algorithm>
#include <unordered_map>

#include <fmt/format.h>

#include "tcspan/error.hpp"
#include "tcspan/parallel.hpp"

namespace tcspan {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kTooFar:
      return "too-far";
    case ViolationKind::kForbiddenReach:
      return "forbidden-reach";
    case ViolationKind::kBadEdge:
      return "bad-edge";
  }
  return "unknown";
}

namespace {

void check_ids(const SpannerGraph& h, const Poset& g) {
  if (h.num_originals != g.size()) {
    throw InputError(fmt::format("spanner has {} originals but poset has {} elements", h.num_originals, g.size()));
  }
  if (h.num_vertices() < h.num_originals) throw InputError("spanner vertex table shorter than originals");
  for (VertexId v = 0; v < h.num_originals; ++v) {
    if (h.coords[v] && *h.coords[v] != g.point(v)) {
      throw InputError(fmt::format("original {} has coordinates {} in the spanner but {} in the poset", v,
                                   h.coords[v]->to_string(), g.point(v).to_string()));
    }
  }
}

const GridPoint* coords_of(const SpannerGraph& h, const Poset& g, VertexId v) {
  if (!h.is_steiner(v)) return &g.point(v);
  return h.coords[v] ? &*h.coords[v] : nullptr;
}

}  // namespace

VerificationReport is_steiner_ktc(const SpannerGraph& h, const Poset& g, unsigned k, unsigned threads) {
  if (k == 0) throw InputError("stretch k must be at least 1");
  check_ids(h, g);

  std::vector<Violation> found;
  for (const Edge& e : h.edges) {
    const GridPoint* a = coords_of(h, g, e.tail);
    const GridPoint* b = coords_of(h, g, e.head);
    if (a && b && (a->dim() != b->dim() || !dominance_less(*a, *b))) {
      found.push_back({ViolationKind::kBadEdge, e.tail, e.head, 1});
    }
  }

  const Adjacency adj(h);
  const std::size_t n = g.size();
  const unsigned workers = resolve_threads(threads);
  std::vector<std::vector<Violation>> per_worker(workers);
  parallel_blocks(n, workers, [&](unsigned w, std::size_t begin, std::size_t end) {
    auto& local = per_worker[w];
    for (auto s = static_cast<VertexId>(begin); s < end; ++s) {
      const auto dist = bfs_distances(adj, s);
      for (VertexId t = 0; t < n; ++t) {
        if (t == s) continue;
        if (g.less(s, t)) {
          if (dist[t] > k) local.push_back({ViolationKind::kTooFar, s, t, dist[t]});
        } else if (dist[t] != kUnreachable) {
          local.push_back({ViolationKind::kForbiddenReach, s, t, dist[t]});
        }
      }
    }
  });
  for (auto& local : per_worker) found.insert(found.end(), local.begin(), local.end());

  std::sort(found.begin(), found.end());
  VerificationReport report;
  report.total_violations = found.size();
  report.is_valid = found.empty();
  if (found.size() > VerificationReport::kMaxViolations) found.resize(VerificationReport::kMaxViolations);
  report.violations = std::move(found);
  return report;
}

GridPoint replacement_point(std::span<const GridPoint> prev) {
  if (prev.empty()) throw InputError("replacement point of an empty set");
  GridPoint r = prev.front();
  for (const GridPoint& x : prev.subspan(1)) {
    if (x.dim() != r.dim()) throw InputError("replacement point: dimension mismatch");
    for (std::size_t i = 0; i < r.dim(); ++i) r[i] = std::max(r[i], x[i]);
  }
  return r;
}

SpannerGraph replace_steiner(const SpannerGraph& h, const Poset& g, unsigned k) {
  const VerificationReport before = is_steiner_ktc(h, g, k);
  if (!before.is_valid) {
    throw InputError(fmt::format("replace_steiner: input is not a Steiner {}-TC-spanner ({} violations)", k,
                                 before.total_violations));
  }
  const std::size_t n = g.size();
  const std::size_t total = h.num_vertices();
  const Adjacency adj(h);

  // prev[s]: elements reaching Steiner vertex s.
  std::vector<std::vector<GridPoint>> prev(total);
  for (VertexId x = 0; x < n; ++x) {
    const auto dist = bfs_distances(adj, x);
    for (auto s = static_cast<VertexId>(n); s < total; ++s) {
      if (dist[s] != kUnreachable) prev[s].push_back(g.point(x));
    }
  }

  std::unordered_map<GridPoint, VertexId, GridPointHash> owner;
  for (VertexId x = 0; x < n; ++x) owner.emplace(g.point(x), x);

  SpannerGraph out;
  out.num_originals = n;
  out.dim = g.dim();
  for (VertexId x = 0; x < n; ++x) out.coords.emplace_back(g.point(x));

  constexpr VertexId kPruned = kUnreachable;
  std::vector<VertexId> image(total, kPruned);
  for (VertexId x = 0; x < n; ++x) image[x] = x;
  // Steiner targets are collected first and numbered in coordinate order.
  std::vector<std::pair<GridPoint, VertexId>> fresh;
  for (auto s = static_cast<VertexId>(n); s < total; ++s) {
    if (prev[s].empty()) continue;
    GridPoint r = replacement_point(prev[s]);
    if (auto it = owner.find(r); it != owner.end() && it->second < n) {
      image[s] = it->second;
    } else {
      fresh.emplace_back(std::move(r), s);
    }
  }
  std::sort(fresh.begin(), fresh.end());
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    if (i == 0 || fresh[i].first != fresh[i - 1].first) {
      out.coords.emplace_back(fresh[i].first);
    }
    image[fresh[i].second] = static_cast<VertexId>(out.coords.size() - 1);
  }

  for (const Edge& e : h.edges) {
    const VertexId a = image[e.tail];
    const VertexId b = image[e.head];
    if (a == kPruned || b == kPruned || a == b) continue;
    out.edges.push_back({a, b});
  }
  out.normalize();
  return out;
}

SpannerGraph grid_spanner_from_steiner(const SpannerGraph& h, std::uint64_t m, std::size_t d, unsigned k) {
  const Poset grid = hypergrid(m, d);
  SpannerGraph out = replace_steiner(h, grid, k);
  if (out.num_steiners() != 0) {
    throw std::logic_error("grid replacement left Steiner vertices behind");
  }
  return out;
}

}  // namespace tcspan
