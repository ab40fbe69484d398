#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "tcspan/poset.hpp"
#include "tcspan/spanner.hpp"

namespace tcspan {

// Random posets with one element per first coordinate and jumps across dyadic
// box partitions of coordinates 2..d. Grid coordinates are 0-based; box and
// interval indices (i, j) keep their 1-based meaning: interval j of level i in
// a dimension holds coordinates c with (c >> (ell - i)) == j - 1.

struct RandomPosetSpec {
  std::size_t n = 2;
  std::size_t d = 2;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Element a has first coordinate a; the other d-1 coordinates are uniform in
/// [0, n). Deterministic in (seed, stream).
Poset sample_poset(const RandomPosetSpec& spec);

struct Jump {
  ElementId a = 0;
  ElementId b = 0;
  std::vector<unsigned> ivec;       // partition levels, one per dimension 2..d
  std::vector<std::uint64_t> jvec;  // odd box index of p_a (1-based)

  auto operator<=>(const Jump&) const = default;
};

struct PartitionCount {
  std::vector<unsigned> ivec;
  std::uint64_t jumps = 0;
};

struct JumpSet {
  std::size_t n = 0;
  std::size_t d = 0;
  unsigned ell = 0;        // log2 n
  unsigned levels = 0;     // ell' = floor(ell / (d - 1)); levels per dimension
  std::vector<Jump> jumps; // ordered by partition, then by a
  std::vector<PartitionCount> partitions;

  std::size_t size() const { return jumps.size(); }
};

/// All jumps of every partition BP(ivec), ivec in [ell']^{d-1}, found with one
/// left-to-right pass per partition. A pair (a, b) produced by two partitions
/// is listed once per partition. Requires n a power of two and first
/// coordinates forming a permutation of 0..n-1.
JumpSet enumerate_jumps(const Poset& p);

/// Definition-level check of a single jump: membership of both ends and
/// emptiness of both boxes strictly between them. O(n).
bool is_jump(const Poset& p, const Jump& jump);

struct JumpStats {
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double mean = 0;
  double stddev = 0;
  double stderr_mean = 0;
  double ci95_low = 0;
  double ci95_high = 0;
  std::vector<std::uint64_t> per_trial;
  std::vector<std::vector<std::uint64_t>> per_trial_partitions;
  std::vector<std::vector<unsigned>> partition_labels;
};

/// Samples `trials` posets (trial t uses stream (seed, t)) and summarizes |J|.
JumpStats monte_carlo_jumps(std::size_t n, std::size_t d, std::uint64_t trials, std::uint64_t seed,
                            unsigned threads = 1);

/// n(ell-1)/4 for d == 2, (ell')^{d-1} n / 2^d - n/4 for d > 2.
double expected_jumps_lower_bound(std::size_t n, std::size_t d);

struct MappedJump {
  Jump jump;
  std::vector<VertexId> path;
  Edge edge;
  unsigned hamming = 0;  // parity distance across the selected edge
};

struct JumpMapping {
  std::size_t d = 0;
  unsigned k = 0;
  unsigned min_hamming = 0;  // ceil((d-1)/k)
  std::vector<MappedJump> mapped;
  std::map<Edge, std::uint64_t> multiplicity;
  std::uint64_t max_multiplicity = 0;
  double multiplicity_bound = 0;  // 2^{d-1} (ell')^{d-1-d'} for d > 2, 1 for d == 2
  bool injective = false;
  bool per_partition_injective = false;  // no edge takes two jumps of one partition
  bool within_bound = false;
  std::size_t spanner_edges = 0;
};

/// Maps every jump to one edge of h: along the lexicographically smallest
/// shortest path from p_a to p_b, the edge crossing from box j to box j+1
/// (d == 2) or the first edge of maximal parity Hamming distance (d > 2).
/// Requires h to be a valid k-TC-spanner of p whose vertices all carry grid
/// coordinates (see replace_steiner). Throws InputError otherwise.
JumpMapping jump_edge_mapping(const Poset& p, const SpannerGraph& h, unsigned k);

/// Steiner 2-TC-spanner of a sampled poset expressed in the poset's own grid:
/// canonicalize, build, re-attach the original embedding, replace Steiner
/// vertices.
SpannerGraph embedded_2tc_spanner(const Poset& p);

}  // namespace tcspan
