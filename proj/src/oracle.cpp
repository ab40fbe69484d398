#include "tcspan/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include <fmt/format.h>

#include "tcspan/error.hpp"

namespace tcspan {

namespace {

using Mask = std::uint64_t;

struct Closure {
  std::vector<std::pair<ElementId, ElementId>> pairs;
  std::map<std::pair<ElementId, ElementId>, unsigned> index;
};

Closure closure_for_search(const Poset& g, std::size_t max_pairs) {
  const std::size_t limit = std::min<std::size_t>(max_pairs, 64);
  Relation rel;
  try {
    rel = transitive_closure(g, limit);
  } catch (const GuardError&) {
    throw GuardError(fmt::format(
        "oracle search limited to {} comparable pairs; use a smaller instance", limit));
  }
  Closure c;
  c.pairs = std::move(rel.pairs);
  for (unsigned i = 0; i < c.pairs.size(); ++i) c.index.emplace(c.pairs[i], i);
  return c;
}

OracleResult finish(const Closure& c, Mask best, std::uint64_t explored) {
  OracleResult r;
  r.explored = explored;
  for (unsigned i = 0; i < c.pairs.size(); ++i) {
    if (best >> i & 1U) r.witness.push_back({c.pairs[i].first, c.pairs[i].second});
  }
  r.opt_size = r.witness.size();
  return r;
}

Mask full_mask(std::size_t count) { return count == 64 ? ~Mask{0} : (Mask{1} << count) - 1; }

class TwoHopSearch {
 public:
  TwoHopSearch(const Poset& g, const Closure& c, std::uint64_t budget) : closure_(c), budget_(budget) {
    options_.resize(c.pairs.size());
    for (unsigned p = 0; p < c.pairs.size(); ++p) {
      const auto [u, v] = c.pairs[p];
      options_[p].push_back(Mask{1} << p);
      for (ElementId w = 0; w < g.size(); ++w) {
        if (g.less(u, w) && g.less(w, v)) {
          options_[p].push_back(Mask{1} << c.index.at({u, w}) | Mask{1} << c.index.at({w, v}));
        }
      }
    }
    best_ = full_mask(c.pairs.size());
  }

  OracleResult run() {
    Mask forced = 0;
    for (unsigned p = 0; p < options_.size(); ++p) {
      if (options_[p].size() == 1) forced |= options_[p][0];
    }
    search(forced, 0);
    return finish(closure_, best_, explored_);
  }

 private:
  void search(Mask in, Mask out) {
    if (++explored_ > budget_) {
      throw GuardError(fmt::format("oracle budget of {} nodes exhausted", budget_));
    }
    const int cost = std::popcount(in);
    if (cost >= std::popcount(best_)) return;

    int pick = -1;
    std::size_t pick_viable = SIZE_MAX;
    Mask used = 0;
    int packing = 0;
    for (unsigned p = 0; p < options_.size(); ++p) {
      bool covered = false;
      std::size_t viable = 0;
      Mask pending = 0;
      for (Mask opt : options_[p]) {
        if ((opt & in) == opt) {
          covered = true;
          break;
        }
        if ((opt & out) == 0) {
          ++viable;
          pending |= opt & ~in;
        }
      }
      if (covered) continue;
      if (viable == 0) return;
      if ((pending & used) == 0) {
        used |= pending;
        ++packing;
      }
      if (viable < pick_viable) {
        pick_viable = viable;
        pick = static_cast<int>(p);
      }
    }
    if (pick < 0) {
      best_ = in;
      return;
    }
    if (cost + packing >= std::popcount(best_)) return;

    Mask branch_opt = 0;
    for (Mask opt : options_[pick]) {
      if ((opt & out) == 0) {
        branch_opt = opt;
        break;
      }
    }
    const Mask undecided = branch_opt & ~in;
    const Mask bit = undecided & (~undecided + 1);
    search(in | bit, out);
    search(in, out | bit);
  }

  const Closure& closure_;
  std::uint64_t budget_;
  std::uint64_t explored_ = 0;
  std::vector<std::vector<Mask>> options_;
  Mask best_;
};

class KHopSearch {
 public:
  KHopSearch(const Poset& g, const Closure& c, unsigned k, std::uint64_t budget)
      : closure_(c), k_(k), budget_(budget) {
    // compact vertex ids over elements touched by the closure
    std::map<ElementId, unsigned> local;
    for (const auto& [u, v] : c.pairs) {
      local.emplace(u, 0);
      local.emplace(v, 0);
    }
    unsigned next = 0;
    for (auto& [id, slot] : local) slot = next++;
    vertices_ = next;
    for (const auto& [u, v] : c.pairs) ends_.emplace_back(local.at(u), local.at(v));
    interval_.resize(c.pairs.size(), 0);
    for (unsigned p = 0; p < c.pairs.size(); ++p) {
      const auto [u, v] = c.pairs[p];
      for (unsigned e = 0; e < c.pairs.size(); ++e) {
        const auto [a, b] = c.pairs[e];
        if (g.leq(u, a) && g.leq(b, v)) interval_[p] |= Mask{1} << e;
      }
    }
    best_ = full_mask(c.pairs.size());
  }

  OracleResult run() {
    Mask forced = 0;
    for (unsigned p = 0; p < interval_.size(); ++p) {
      if (std::popcount(interval_[p]) == 1) forced |= interval_[p];
    }
    search(forced, 0);
    return finish(closure_, best_, explored_);
  }

 private:
  // Vertices within k hops of `source` using edges in `edges` (bit i = local vertex i).
  std::vector<bool> within_k(unsigned source, Mask edges) const {
    std::vector<bool> seen(vertices_, false);
    std::vector<unsigned> frontier{source};
    seen[source] = true;
    for (unsigned step = 0; step < k_ && !frontier.empty(); ++step) {
      std::vector<unsigned> next;
      for (unsigned e = 0; e < ends_.size(); ++e) {
        if (!(edges >> e & 1U)) continue;
        const auto [a, b] = ends_[e];
        if (!seen[b] && std::find(frontier.begin(), frontier.end(), a) != frontier.end()) {
          seen[b] = true;
          next.push_back(b);
        }
      }
      frontier = std::move(next);
    }
    return seen;
  }

  // Bit p set when pair p is within k hops using `edges`.
  Mask satisfied(Mask edges) const {
    Mask ok = 0;
    std::vector<std::vector<bool>> cache(vertices_);
    for (unsigned p = 0; p < ends_.size(); ++p) {
      const auto [u, v] = ends_[p];
      if (cache[u].empty()) cache[u] = within_k(u, edges);
      if (cache[u][v]) ok |= Mask{1} << p;
    }
    return ok;
  }

  void search(Mask in, Mask out) {
    if (++explored_ > budget_) {
      throw GuardError(fmt::format("oracle budget of {} nodes exhausted", budget_));
    }
    const int cost = std::popcount(in);
    if (cost >= std::popcount(best_)) return;
    const Mask all = full_mask(ends_.size());
    if (satisfied(all & ~out) != all) return;
    const Mask done = satisfied(in);
    if (done == all) {
      best_ = in;
      return;
    }
    int pick = -1;
    int pick_size = 65;
    Mask used = 0;
    int packing = 0;
    for (unsigned p = 0; p < ends_.size(); ++p) {
      if (done >> p & 1U) continue;
      const Mask cand = interval_[p] & ~in & ~out;
      if ((cand & used) == 0) {
        used |= cand;
        ++packing;
      }
      if (std::popcount(cand) < pick_size) {
        pick_size = std::popcount(cand);
        pick = static_cast<int>(p);
      }
    }
    if (cost + packing >= std::popcount(best_)) return;
    const Mask cand = interval_[pick] & ~in & ~out;
    const Mask bit = cand & (~cand + 1);
    search(in | bit, out);
    search(in, out | bit);
  }

  const Closure& closure_;
  unsigned k_;
  std::uint64_t budget_;
  std::uint64_t explored_ = 0;
  unsigned vertices_ = 0;
  std::vector<std::pair<unsigned, unsigned>> ends_;
  std::vector<Mask> interval_;
  Mask best_;
};

}  // namespace

OracleResult min_2tc_bruteforce(const Poset& g, std::uint64_t budget, std::size_t max_pairs) {
  const Closure c = closure_for_search(g, max_pairs);
  return TwoHopSearch(g, c, budget).run();
}

OracleResult min_ktc_bruteforce(const Poset& g, unsigned k, std::uint64_t budget, std::size_t max_pairs) {
  if (k == 0) throw InputError("stretch k must be at least 1");
  const Closure c = closure_for_search(g, max_pairs);
  return KHopSearch(g, c, k, budget).run();
}

SpannerGraph witness_graph(const OracleResult& r, const Poset& g) {
  SpannerGraph s;
  s.num_originals = g.size();
  s.dim = g.dim();
  for (const GridPoint& pt : g.points()) s.coords.emplace_back(pt);
  s.edges = r.witness;
  s.normalize();
  return s;
}

}  // namespace tcspan
