#include "tcspan/jumps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "tcspan/build.hpp"
#include "tcspan/error.hpp"
#include "tcspan/parallel.hpp"
#include "tcspan/rng.hpp"
#include "tcspan/verify.hpp"

namespace tcspan {

namespace {

// 0-based block of coordinate c at level i: interval j = block + 1.
std::uint64_t block_of(Coord c, unsigned level, unsigned ell) { return std::uint64_t{c} >> (ell - level); }

// Elements ordered by first coordinate; validates the sampled-poset shape.
std::vector<ElementId> by_first_coordinate(const Poset& p, unsigned& ell) {
  const std::size_t n = p.size();
  if (p.dim() < 2) throw InputError("jumps need d >= 2");
  if (n < 2 || !std::has_single_bit(n)) {
    throw InputError(fmt::format("jumps need n to be a power of two (n >= 2), got {}", n));
  }
  ell = static_cast<unsigned>(std::countr_zero(n));
  std::vector<ElementId> order(n, kUnreachable);
  for (ElementId e = 0; e < n; ++e) {
    const GridPoint& pt = p.point(e);
    for (std::size_t t = 0; t < p.dim(); ++t) {
      if (pt[t] >= n) throw InputError(fmt::format("element {} has a coordinate outside [0,{})", e, n));
    }
    if (order[pt[0]] != kUnreachable) {
      throw InputError(fmt::format("elements {} and {} share first coordinate {}", order[pt[0]], e, pt[0]));
    }
    order[pt[0]] = e;
  }
  return order;
}

unsigned levels_for(std::size_t d, unsigned ell) { return ell / static_cast<unsigned>(d - 1); }

// Calls fn(ivec) for every ivec in [1, levels]^{dims}.
template <typename Fn>
void for_each_partition(std::size_t dims, unsigned levels, Fn&& fn) {
  if (levels == 0) return;
  std::vector<unsigned> ivec(dims, 1);
  while (true) {
    fn(ivec);
    std::size_t t = dims;
    while (t-- > 0) {
      if (ivec[t] < levels) {
        ++ivec[t];
        break;
      }
      ivec[t] = 1;
    }
    if (t == static_cast<std::size_t>(-1)) return;
  }
}

std::vector<std::uint64_t> blocks_of(const GridPoint& pt, const std::vector<unsigned>& ivec, unsigned ell) {
  std::vector<std::uint64_t> out(ivec.size());
  for (std::size_t t = 0; t < ivec.size(); ++t) out[t] = block_of(pt[t + 1], ivec[t], ell);
  return out;
}

}  // namespace

Poset sample_poset(const RandomPosetSpec& spec) {
  if (spec.n < 1 || spec.d < 1) throw InputError("sample_poset needs n >= 1 and d >= 1");
  if (spec.n > (std::uint64_t{1} << 31)) throw InputError("sample_poset: n too large");
  CounterRng rng(spec.seed, spec.stream);
  std::vector<GridPoint> points;
  points.reserve(spec.n);
  for (std::size_t a = 0; a < spec.n; ++a) {
    std::vector<Coord> c(spec.d);
    c[0] = static_cast<Coord>(a);
    for (std::size_t t = 1; t < spec.d; ++t) c[t] = static_cast<Coord>(rng.below(spec.n));
    points.emplace_back(std::move(c));
  }
  return Poset(spec.d, spec.n, std::move(points));
}

JumpSet enumerate_jumps(const Poset& p) {
  JumpSet out;
  const auto order = by_first_coordinate(p, out.ell);
  out.n = p.size();
  out.d = p.dim();
  out.levels = levels_for(out.d, out.ell);
  const std::size_t dims = out.d - 1;

  std::vector<std::int64_t> last;  // per group: element with parity all-0, or -1
  for_each_partition(dims, out.levels, [&](const std::vector<unsigned>& ivec) {
    // group index: mixed radix over (block >> 1), 2^{i_t - 1} values per dimension
    std::uint64_t groups = 1;
    for (unsigned i : ivec) groups <<= (i - 1);
    last.assign(groups, -1);
    PartitionCount count{ivec, 0};
    for (ElementId e : order) {
      const GridPoint& pt = p.point(e);
      std::uint64_t group = 0;
      unsigned ones = 0;
      for (std::size_t t = 0; t < dims; ++t) {
        const std::uint64_t blk = block_of(pt[t + 1], ivec[t], out.ell);
        ones += static_cast<unsigned>(blk & 1U);
        group = (group << (ivec[t] - 1)) | (blk >> 1);
      }
      if (ones == 0) {
        last[group] = e;
      } else if (ones == dims) {
        if (last[group] >= 0) {
          const auto a = static_cast<ElementId>(last[group]);
          auto blocks = blocks_of(p.point(a), ivec, out.ell);
          for (auto& b : blocks) b += 1;
          out.jumps.push_back({a, e, ivec, std::move(blocks)});
          ++count.jumps;
        }
        last[group] = -1;
      }
    }
    out.partitions.push_back(std::move(count));
  });
  return out;
}

bool is_jump(const Poset& p, const Jump& jump) {
  unsigned ell = 0;
  const auto order = by_first_coordinate(p, ell);
  const std::size_t dims = p.dim() - 1;
  if (jump.ivec.size() != dims || jump.jvec.size() != dims) return false;
  const unsigned levels = levels_for(p.dim(), ell);
  for (std::size_t t = 0; t < dims; ++t) {
    if (jump.ivec[t] < 1 || jump.ivec[t] > levels) return false;
    if (jump.jvec[t] % 2 == 0 || jump.jvec[t] > (std::uint64_t{1} << jump.ivec[t])) return false;
  }
  auto in_box = [&](ElementId e, std::uint64_t shift) {
    const GridPoint& pt = p.point(e);
    for (std::size_t t = 0; t < dims; ++t) {
      if (block_of(pt[t + 1], jump.ivec[t], ell) + 1 != jump.jvec[t] + shift) return false;
    }
    return true;
  };
  const Coord fa = p.point(jump.a)[0];
  const Coord fb = p.point(jump.b)[0];
  if (fa >= fb || !in_box(jump.a, 0) || !in_box(jump.b, 1)) return false;
  for (Coord c = fa + 1; c < fb; ++c) {
    if (in_box(order[c], 0) || in_box(order[c], 1)) return false;
  }
  return true;
}

double expected_jumps_lower_bound(std::size_t n, std::size_t d) {
  const double ell = std::log2(static_cast<double>(n));
  if (d == 2) return static_cast<double>(n) * (ell - 1) / 4;
  const double levels = std::floor(ell / static_cast<double>(d - 1));
  return std::pow(levels, static_cast<double>(d - 1)) * static_cast<double>(n) / std::pow(2.0, static_cast<double>(d)) -
         static_cast<double>(n) / 4;
}

JumpStats monte_carlo_jumps(std::size_t n, std::size_t d, std::uint64_t trials, std::uint64_t seed,
                            unsigned threads) {
  if (trials < 2) throw InputError("monte_carlo_jumps needs at least 2 trials");
  JumpStats stats;
  stats.n = n;
  stats.d = d;
  stats.trials = trials;
  stats.seed = seed;
  stats.per_trial.assign(trials, 0);
  stats.per_trial_partitions.assign(trials, {});
  parallel_blocks(trials, resolve_threads(threads), [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const Poset p = sample_poset({n, d, seed, t});
      const JumpSet js = enumerate_jumps(p);
      stats.per_trial[t] = js.size();
      for (const auto& part : js.partitions) stats.per_trial_partitions[t].push_back(part.jumps);
      if (t == 0) {
        for (const auto& part : js.partitions) stats.partition_labels.push_back(part.ivec);
      }
    }
  });
  double sum = 0;
  for (auto c : stats.per_trial) sum += static_cast<double>(c);
  stats.mean = sum / static_cast<double>(trials);
  double var = 0;
  for (auto c : stats.per_trial) var += (static_cast<double>(c) - stats.mean) * (static_cast<double>(c) - stats.mean);
  var /= static_cast<double>(trials - 1);
  stats.stddev = std::sqrt(var);
  stats.stderr_mean = stats.stddev / std::sqrt(static_cast<double>(trials));
  stats.ci95_low = stats.mean - 1.96 * stats.stderr_mean;
  stats.ci95_high = stats.mean + 1.96 * stats.stderr_mean;
  return stats;
}

JumpMapping jump_edge_mapping(const Poset& p, const SpannerGraph& h, unsigned k) {
  const JumpSet js = enumerate_jumps(p);
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    if (!h.coords[v]) throw InputError(fmt::format("jump mapping: vertex {} has no grid coordinates", v));
  }
  const VerificationReport report = is_steiner_ktc(h, p, k);
  if (!report.is_valid) {
    throw InputError(fmt::format("jump mapping: spanner is not a {}-TC-spanner ({} violations)", k,
                                 report.total_violations));
  }

  JumpMapping out;
  out.d = p.dim();
  out.k = k;
  out.spanner_edges = h.edges.size();
  out.min_hamming = static_cast<unsigned>((p.dim() - 1 + k - 1) / k);
  if (p.dim() == 2) {
    out.multiplicity_bound = 1;
  } else {
    out.multiplicity_bound = std::pow(2.0, static_cast<double>(p.dim() - 1)) *
                             std::pow(static_cast<double>(js.levels),
                                      static_cast<double>(p.dim() - 1) - static_cast<double>(out.min_hamming));
  }

  // reverse adjacency for distances to the target
  SpannerGraph reversed = h;
  for (Edge& e : reversed.edges) std::swap(e.tail, e.head);
  std::sort(reversed.edges.begin(), reversed.edges.end());
  const Adjacency forward(h);
  const Adjacency backward(reversed);

  std::map<std::pair<Edge, std::vector<unsigned>>, std::uint64_t> per_partition;
  for (const Jump& jump : js.jumps) {
    const auto to_target = bfs_distances(backward, jump.b);
    if (to_target[jump.a] == kUnreachable || to_target[jump.a] > k) {
      throw InputError(fmt::format("jump ({},{}) has no path of length <= {}", jump.a, jump.b, k));
    }
    MappedJump mj{jump, {jump.a}, {}, 0};
    VertexId cur = jump.a;
    while (cur != jump.b) {
      for (VertexId next : forward.out(cur)) {
        if (to_target[next] + 1 == to_target[cur]) {
          cur = next;
          break;
        }
      }
      mj.path.push_back(cur);
    }
    const std::size_t dims = p.dim() - 1;
    bool found = false;
    for (std::size_t s = 0; s + 1 < mj.path.size(); ++s) {
      const auto from = blocks_of(*h.coords[mj.path[s]], jump.ivec, js.ell);
      const auto to = blocks_of(*h.coords[mj.path[s + 1]], jump.ivec, js.ell);
      if (p.dim() == 2) {
        if (from[0] + 1 == jump.jvec[0] && to[0] == jump.jvec[0]) {
          mj.edge = {mj.path[s], mj.path[s + 1]};
          mj.hamming = 1;
          found = true;
          break;
        }
      } else {
        unsigned dist = 0;
        for (std::size_t t = 0; t < dims; ++t) dist += ((from[t] ^ to[t]) & 1U) ? 1 : 0;
        if (!found || dist > mj.hamming) {
          mj.edge = {mj.path[s], mj.path[s + 1]};
          mj.hamming = dist;
          found = true;
        }
      }
    }
    if (!found || (p.dim() > 2 && mj.hamming < out.min_hamming)) {
      throw InputError(fmt::format("jump ({},{}): no crossing edge on the selected path", jump.a, jump.b));
    }
    ++out.multiplicity[mj.edge];
    ++per_partition[{mj.edge, jump.ivec}];
    out.mapped.push_back(std::move(mj));
  }
  for (const auto& [edge, count] : out.multiplicity) out.max_multiplicity = std::max(out.max_multiplicity, count);
  out.injective = out.max_multiplicity <= 1;
  out.per_partition_injective = std::all_of(per_partition.begin(), per_partition.end(),
                                            [](const auto& kv) { return kv.second <= 1; });
  out.within_bound = static_cast<double>(out.max_multiplicity) <= out.multiplicity_bound;
  return out;
}

SpannerGraph embedded_2tc_spanner(const Poset& p) {
  const Poset canon = canonicalize_embedding(p);
  const SpannerGraph built = build_steiner_2tc(canon);
  return replace_steiner(rebase_originals(built, p), p, 2);
}

}  // namespace tcspan
