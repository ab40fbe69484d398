#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tcspan {

using Coord = std::uint32_t;
using ElementId = std::uint32_t;

/// A point of the hypergrid [0, m-1]^d.
class GridPoint {
 public:
  GridPoint() = default;
  explicit GridPoint(std::vector<Coord> coords) : coords_(std::move(coords)) {}
  GridPoint(std::initializer_list<Coord> coords) : coords_(coords) {}

  std::size_t dim() const { return coords_.size(); }
  Coord operator[](std::size_t i) const { return coords_[i]; }
  Coord& operator[](std::size_t i) { return coords_[i]; }
  std::span<const Coord> coords() const { return coords_; }

  auto operator<=>(const GridPoint&) const = default;
  bool operator==(const GridPoint&) const = default;

  std::string to_string() const;

 private:
  std::vector<Coord> coords_;
};

struct GridPointHash {
  std::size_t operator()(const GridPoint& p) const noexcept;
};

/// Componentwise x <= y. Throws InputError on a dimension mismatch.
bool dominance_leq(const GridPoint& x, const GridPoint& y);

/// x <= y and x != y.
bool dominance_less(const GridPoint& x, const GridPoint& y);

/// An n-element poset embedded in the hypergrid [0, side-1]^dim with the
/// dominance order. Element ids are positions in points().
class Poset {
 public:
  Poset() = default;
  /// Validates dimensions, coordinate range and distinctness.
  Poset(std::size_t dim, std::uint64_t side, std::vector<GridPoint> points);

  std::size_t dim() const { return dim_; }
  std::uint64_t side() const { return side_; }
  std::size_t size() const { return points_.size(); }
  const GridPoint& point(ElementId id) const { return points_[id]; }
  const std::vector<GridPoint>& points() const { return points_; }

  bool leq(ElementId u, ElementId v) const { return dominance_leq(points_[u], points_[v]); }
  bool less(ElementId u, ElementId v) const { return u != v && leq(u, v); }
  bool comparable(ElementId u, ElementId v) const { return leq(u, v) || leq(v, u); }

  /// True when, for every dimension, the coordinates of all elements are
  /// pairwise distinct.
  bool is_canonical() const;

 private:
  std::size_t dim_ = 0;
  std::uint64_t side_ = 0;
  std::vector<GridPoint> points_;
};

/// Sorted list of pairs (u, v) with u strictly below v.
struct Relation {
  std::vector<std::pair<ElementId, ElementId>> pairs;

  std::size_t size() const { return pairs.size(); }
  bool contains(ElementId u, ElementId v) const;
};

inline constexpr std::uint64_t kDefaultMaxGridElements = std::uint64_t{1} << 24;
inline constexpr std::size_t kDefaultClosureBudget = std::size_t{1} << 16;

/// The hypergrid H_{m,d}: one element per point of [0,m-1]^d, listed in
/// lexicographic order of coordinates.
Poset hypergrid(std::uint64_t m, std::size_t d,
                std::uint64_t max_elements = kDefaultMaxGridElements);

/// Rank-transforms every dimension so that coordinates become a permutation
/// of 0..n-1. Ties inside a dimension are broken by the full coordinate vector
/// (lexicographically). The comparability relation is re-checked afterwards;
/// a mismatch throws InputError naming the offending pair.
Poset canonicalize_embedding(const Poset& p);

/// All strictly comparable pairs. Throws GuardError when the relation would
/// exceed max_pairs.
Relation transitive_closure(const Poset& p, std::size_t max_pairs = kDefaultClosureBudget);

/// Number of strictly comparable pairs (no materialization).
std::uint64_t count_comparable_pairs(const Poset& p);

}  // namespace tcspan
