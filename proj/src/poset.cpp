#include "tcspan/poset.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "tcspan/error.hpp"

namespace tcspan {

std::string GridPoint::to_string() const { return fmt::format("({})", fmt::join(coords_, ",")); }

std::size_t GridPointHash::operator()(const GridPoint& p) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ p.dim();
  for (Coord c : p.coords()) {
    h ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

bool dominance_leq(const GridPoint& x, const GridPoint& y) {
  if (x.dim() != y.dim()) {
    throw InputError(fmt::format("dimension mismatch: {} vs {}", x.dim(), y.dim()));
  }
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (x[i] > y[i]) return false;
  }
  return true;
}

bool dominance_less(const GridPoint& x, const GridPoint& y) { return dominance_leq(x, y) && x != y; }

Poset::Poset(std::size_t dim, std::uint64_t side, std::vector<GridPoint> points)
    : dim_(dim), side_(side), points_(std::move(points)) {
  if (dim_ == 0) throw InputError("poset dimension must be positive");
  if (side_ == 0) throw InputError("poset side length must be positive");
  if (side_ > std::uint64_t{std::numeric_limits<Coord>::max()} + 1) {
    throw InputError("poset side length exceeds coordinate range");
  }
  std::unordered_set<GridPoint, GridPointHash> seen;
  seen.reserve(points_.size());
  for (std::size_t id = 0; id < points_.size(); ++id) {
    const GridPoint& pt = points_[id];
    if (pt.dim() != dim_) {
      throw InputError(fmt::format("element {} has {} coordinates, expected {}", id, pt.dim(), dim_));
    }
    for (Coord c : pt.coords()) {
      if (c >= side_) {
        throw InputError(fmt::format("element {} coordinate {} outside [0,{})", id, c, side_));
      }
    }
    if (!seen.insert(pt).second) {
      throw InputError(fmt::format("duplicate coordinates {} at element {}", pt.to_string(), id));
    }
  }
}

bool Poset::is_canonical() const {
  std::vector<Coord> column(points_.size());
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t e = 0; e < points_.size(); ++e) column[e] = points_[e][i];
    std::sort(column.begin(), column.end());
    if (std::adjacent_find(column.begin(), column.end()) != column.end()) return false;
  }
  return true;
}

bool Relation::contains(ElementId u, ElementId v) const {
  return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(u, v));
}

Poset hypergrid(std::uint64_t m, std::size_t d, std::uint64_t max_elements) {
  if (m == 0 || d == 0) throw InputError("hypergrid needs m >= 1 and d >= 1");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (total > max_elements / m) {
      throw GuardError(fmt::format("hypergrid {}^{} exceeds {} elements", m, d, max_elements));
    }
    total *= m;
  }
  std::vector<GridPoint> points;
  points.reserve(total);
  std::vector<Coord> cur(d, 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    points.emplace_back(cur);
    for (std::size_t i = d; i-- > 0;) {
      if (++cur[i] < m) break;
      cur[i] = 0;
    }
  }
  return Poset(d, m, std::move(points));
}

Poset canonicalize_embedding(const Poset& p) {
  const std::size_t n = p.size();
  if (n == 0) throw InputError("cannot canonicalize an empty poset");
  std::vector<GridPoint> out(n, GridPoint(std::vector<Coord>(p.dim(), 0)));
  std::vector<ElementId> order(n);
  for (std::size_t i = 0; i < p.dim(); ++i) {
    std::iota(order.begin(), order.end(), ElementId{0});
    std::sort(order.begin(), order.end(), [&](ElementId a, ElementId b) {
      if (p.point(a)[i] != p.point(b)[i]) return p.point(a)[i] < p.point(b)[i];
      return p.point(a) < p.point(b);
    });
    for (std::size_t rank = 0; rank < n; ++rank) out[order[rank]][i] = static_cast<Coord>(rank);
  }
  Poset canon(p.dim(), n, std::move(out));
  for (ElementId u = 0; u < n; ++u) {
    for (ElementId v = 0; v < n; ++v) {
      if (p.leq(u, v) != canon.leq(u, v)) {
        throw InputError(fmt::format("tie-break changes comparability of elements {} and {}", u, v));
      }
    }
  }
  return canon;
}

Relation transitive_closure(const Poset& p, std::size_t max_pairs) {
  Relation rel;
  for (ElementId u = 0; u < p.size(); ++u) {
    for (ElementId v = 0; v < p.size(); ++v) {
      if (p.less(u, v)) {
        if (rel.pairs.size() == max_pairs) {
          throw GuardError(fmt::format("transitive closure exceeds {} pairs", max_pairs));
        }
        rel.pairs.emplace_back(u, v);
      }
    }
  }
  return rel;
}

std::uint64_t count_comparable_pairs(const Poset& p) {
  std::uint64_t count = 0;
  for (ElementId u = 0; u < p.size(); ++u) {
    for (ElementId v = 0; v < p.size(); ++v) count += p.less(u, v) ? 1 : 0;
  }
  return count;
}

}  // namespace tcspan
