#pragma once

// Reference implementations used only by tests. Each one is written against
// the definitions directly and shares no code with the library routine it
// checks.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "tcspan/poset.hpp"
#include "tcspan/rng.hpp"
#include "tcspan/spanner.hpp"

namespace tcspan::testing {

inline bool leq(const GridPoint& a, const GridPoint& b) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

// All-pairs hop distances by plain BFS over an edge list (no CSR).
inline std::vector<std::vector<std::uint32_t>> all_distances(std::size_t vertices,
                                                             const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  constexpr auto kInf = UINT32_MAX;
  std::vector<std::vector<std::uint32_t>> adj(vertices);
  for (auto [a, b] : edges) adj[a].push_back(b);
  std::vector<std::vector<std::uint32_t>> dist(vertices, std::vector<std::uint32_t>(vertices, kInf));
  for (std::size_t s = 0; s < vertices; ++s) {
    std::queue<std::uint32_t> q;
    dist[s][s] = 0;
    q.push(static_cast<std::uint32_t>(s));
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto w : adj[u]) {
        if (dist[s][w] == kInf) {
          dist[s][w] = dist[s][u] + 1;
          q.push(w);
        }
      }
    }
  }
  return dist;
}

// Definition-level k-TC check over originals 0..n-1 of `points`.
inline bool naive_is_ktc(const std::vector<GridPoint>& points, std::size_t vertices,
                         const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges, unsigned k) {
  const auto dist = all_distances(vertices, edges);
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = 0; b < points.size(); ++b) {
      if (a == b) continue;
      const bool below = leq(points[a], points[b]);
      if (below && dist[a][b] > k) return false;
      if (!below && dist[a][b] != UINT32_MAX) return false;
    }
  }
  return true;
}

// Smallest edge set over closure pairs that is a 2-TC-spanner, by trying
// every subset in order of size. Feasible for up to ~20 closure pairs.
inline std::size_t naive_min_2tc(const std::vector<GridPoint>& points) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> closure;
  for (std::uint32_t a = 0; a < points.size(); ++a) {
    for (std::uint32_t b = 0; b < points.size(); ++b) {
      if (a != b && leq(points[a], points[b])) closure.emplace_back(a, b);
    }
  }
  const std::size_t p = closure.size();
  std::size_t best = p;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size >= best) continue;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> chosen;
    for (std::size_t i = 0; i < p; ++i) {
      if (mask >> i & 1U) chosen.push_back(closure[i]);
    }
    if (naive_is_ktc(points, points.size(), chosen, 2)) best = size;
  }
  return best;
}

inline std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_pairs(const SpannerGraph& h) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const Edge& e : h.edges) out.emplace_back(e.tail, e.head);
  return out;
}

// p_i(t) through explicit bit strings.
inline std::uint64_t prefix_point_by_string(std::uint64_t t, unsigned i, unsigned ell) {
  std::string bits;
  for (unsigned b = ell; b-- > 0;) bits.push_back((t >> b & 1U) ? '1' : '0');
  std::string code = bits.substr(0, i) + "1" + std::string(ell - i - 1, '0');
  return std::stoull(code, nullptr, 2);
}

// Jumps straight from the definition: every ordered pair a < b (by first
// coordinate), every level vector, every odd box. Returns
// (a, b, ivec, jvec) tuples with 1-based i and j.
using JumpTuple = std::tuple<std::uint32_t, std::uint32_t, std::vector<unsigned>, std::vector<std::uint64_t>>;

inline std::set<JumpTuple> naive_jumps(const std::vector<GridPoint>& points, unsigned ell, unsigned levels) {
  const std::size_t n = points.size();
  const std::size_t dims = points.front().dim() - 1;
  std::vector<std::uint32_t> by_first(n);
  for (std::uint32_t e = 0; e < n; ++e) by_first[points[e][0]] = e;
  // interval of coordinate c (0-based) at level i, 1-based j
  auto interval = [&](std::uint64_t c, unsigned i) {
    const std::uint64_t width = std::uint64_t{1} << (ell - i);
    return c / width + 1;
  };
  std::set<JumpTuple> out;
  if (levels == 0) return out;
  std::vector<unsigned> ivec(dims, 1);
  while (true) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        const auto a = by_first[x];
        const auto b = by_first[y];
        std::vector<std::uint64_t> ja(dims);
        bool ok = true;
        for (std::size_t t = 0; t < dims && ok; ++t) {
          ja[t] = interval(points[a][t + 1], ivec[t]);
          ok = ja[t] % 2 == 1 && interval(points[b][t + 1], ivec[t]) == ja[t] + 1;
        }
        if (!ok) continue;
        for (std::size_t z = x + 1; z < y && ok; ++z) {
          const auto c = by_first[z];
          bool in_low = true;
          bool in_high = true;
          for (std::size_t t = 0; t < dims; ++t) {
            const auto jc = interval(points[c][t + 1], ivec[t]);
            in_low = in_low && jc == ja[t];
            in_high = in_high && jc == ja[t] + 1;
          }
          ok = !in_low && !in_high;
        }
        if (ok) out.insert({a, b, ivec, ja});
      }
    }
    std::size_t t = dims;
    while (t-- > 0) {
      if (ivec[t] < levels) {
        ++ivec[t];
        break;
      }
      ivec[t] = 1;
    }
    if (t == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

// Random poset with distinct points in [0, side)^d (n must fit).
inline Poset random_poset(CounterRng& rng, std::size_t n, std::size_t d, std::uint64_t side) {
  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < d && cells < n; ++i) cells *= side;
  if (cells < n) throw std::invalid_argument("random_poset: grid too small");
  std::set<std::vector<Coord>> seen;
  std::vector<GridPoint> points;
  while (points.size() < n) {
    std::vector<Coord> c(d);
    for (auto& x : c) x = static_cast<Coord>(rng.below(side));
    if (seen.insert(c).second) points.emplace_back(c);
  }
  return Poset(d, side, std::move(points));
}

// Adds Steiner relays to a valid spanner of p without breaking validity: each
// relay sits at a cut point c, takes edges from elements below c and gives
// edges to elements above c (so every path through it joins comparable
// elements). Some relays carry coordinates, some are abstract, some form
// two-relay chains, and one is left unreachable.
inline SpannerGraph inject_steiners(const SpannerGraph& base, const Poset& p, CounterRng& rng, unsigned relays) {
  SpannerGraph h = base;
  std::set<GridPoint> used;
  for (const auto& c : h.coords) {
    if (c) used.insert(*c);
  }
  const std::size_t d = p.dim();
  for (unsigned r = 0; r < relays; ++r) {
    std::vector<Coord> cut(d);
    for (auto& x : cut) x = static_cast<Coord>(rng.below(p.side()));
    const GridPoint c(cut);
    const bool with_coords = rng.below(2) == 0 && !used.contains(c);
    const bool chain = rng.below(3) == 0;
    std::vector<VertexId> low;
    std::vector<VertexId> high;
    for (VertexId v = 0; v < p.size(); ++v) {
      const bool below = with_coords ? (leq(p.point(v), c) && p.point(v) != c) : leq(p.point(v), c);
      const bool above = with_coords ? (leq(c, p.point(v)) && p.point(v) != c) : (leq(c, p.point(v)) && !below);
      if (below && rng.below(2) == 0) low.push_back(v);
      if (above && rng.below(2) == 0) high.push_back(v);
    }
    const auto s = static_cast<VertexId>(h.coords.size());
    h.coords.emplace_back(with_coords ? std::optional<GridPoint>(c) : std::nullopt);
    if (with_coords) used.insert(c);
    VertexId exit_vertex = s;
    if (chain) {
      exit_vertex = s + 1;
      h.coords.emplace_back(std::nullopt);
      h.edges.push_back({s, exit_vertex});
    }
    for (VertexId v : low) h.edges.push_back({v, s});
    for (VertexId v : high) h.edges.push_back({exit_vertex, v});
  }
  // unreachable relay pointing at the first element
  if (p.size() > 0) {
    const auto s = static_cast<VertexId>(h.coords.size());
    h.coords.emplace_back(std::nullopt);
    h.edges.push_back({s, 0});
  }
  h.normalize();
  return h;
}

}  // namespace tcspan::testing
