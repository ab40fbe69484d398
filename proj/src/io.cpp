#include "tcspan/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "tcspan/error.hpp"

namespace tcspan::io {

namespace {

json coords_to_json(const GridPoint& p) {
  json out = json::array();
  for (Coord c : p.coords()) out.push_back(std::uint64_t{c} + 1);
  return out;
}

GridPoint coords_from_json(const json& j, std::size_t d, std::string_view what) {
  if (!j.is_array() || j.size() != d) {
    throw InputError(fmt::format("{}: expected an array of {} coordinates", what, d));
  }
  std::vector<Coord> c(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!j[i].is_number_integer()) throw InputError(fmt::format("{}: coordinates must be integers", what));
    const auto v = j[i].get<std::int64_t>();
    if (v < 1 || v > std::int64_t{1} << 32) throw InputError(fmt::format("{}: coordinate {} out of range (1-based)", what, v));
    c[i] = static_cast<Coord>(v - 1);
  }
  return GridPoint(std::move(c));
}

template <typename T>
T require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(fmt::format("missing field \"{}\"", key));
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(fmt::format("field \"{}\": {}", key, e.what()));
  }
}

json long_double_json(long double x) { return static_cast<double>(x); }

json partition_label(const std::vector<unsigned>& ivec) {
  json out = json::array();
  for (unsigned i : ivec) out.push_back(i);
  return out;
}

}  // namespace

std::string_view version() { return TCSPAN_VERSION; }

json make_meta(std::string_view command, const json& config, std::optional<std::uint64_t> seed) {
  json meta;
  meta["tool"] = "tcspan";
  meta["version"] = version();
  meta["command"] = command;
  meta["config"] = config;
  meta["seed"] = seed ? json(*seed) : json(nullptr);
  return meta;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open {}", path.string()));
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(fmt::format("{}: malformed JSON ({})", path.string(), e.what()));
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(fmt::format("cannot write {}", path.string()));
  out << text;
  if (!out) throw InputError(fmt::format("write to {} failed", path.string()));
}

std::string point_label(const GridPoint& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) out += fmt::format("{}{}", i ? "," : "", std::uint64_t{p[i]} + 1);
  return out + ")";
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Poset poset_from_json(const json& j) {
  const auto d = require<std::int64_t>(j, "d");
  const auto m = require<std::int64_t>(j, "m");
  if (d < 1) throw InputError("poset: d must be >= 1");
  if (m < 1) throw InputError("poset: m must be >= 1");
  const json& pts = j.at("points");
  if (!pts.is_array()) throw InputError("poset: \"points\" must be an array");
  std::vector<GridPoint> points;
  points.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    points.push_back(coords_from_json(pts[i], static_cast<std::size_t>(d), fmt::format("point {}", i + 1)));
  }
  return Poset(static_cast<std::size_t>(d), static_cast<std::uint64_t>(m), std::move(points));
}

json poset_to_json(const Poset& p) {
  json out;
  out["d"] = p.dim();
  out["m"] = p.side();
  json pts = json::array();
  for (const auto& pt : p.points()) pts.push_back(coords_to_json(pt));
  out["points"] = std::move(pts);
  return out;
}

SpannerGraph spanner_from_json(const json& j) {
  SpannerGraph h;
  const auto n = require<std::int64_t>(j, "originals");
  if (n < 0) throw InputError("spanner: negative \"originals\"");
  h.num_originals = static_cast<std::size_t>(n);
  h.dim = j.contains("d") ? require<std::size_t>(j, "d") : 0;
  h.coords.assign(h.num_originals, std::nullopt);

  auto infer_dim = [&](const json& arr) {
    if (h.dim == 0 && arr.is_array()) h.dim = arr.size();
  };
  if (j.contains("points")) {
    const json& pts = j.at("points");
    if (!pts.is_array() || pts.size() != h.num_originals) {
      throw InputError("spanner: \"points\" must list one entry per original");
    }
    for (std::size_t v = 0; v < pts.size(); ++v) {
      if (pts[v].is_null()) continue;
      infer_dim(pts[v]);
      h.coords[v] = coords_from_json(pts[v], h.dim, fmt::format("original {}", v + 1));
    }
  }
  if (j.contains("steiners")) {
    const json& st = j.at("steiners");
    if (!st.is_array()) throw InputError("spanner: \"steiners\" must be an array");
    for (std::size_t s = 0; s < st.size(); ++s) {
      if (st[s].is_null()) {
        h.coords.emplace_back(std::nullopt);
        continue;
      }
      infer_dim(st[s]);
      h.coords.emplace_back(coords_from_json(st[s], h.dim, fmt::format("steiner {}", h.num_originals + s + 1)));
    }
  }
  const json& edges = j.at("edges");
  if (!edges.is_array()) throw InputError("spanner: \"edges\" must be an array");
  const std::int64_t total = static_cast<std::int64_t>(h.coords.size());
  for (const json& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw InputError("spanner: each edge must be [tail, head]");
    }
    const auto t = e[0].get<std::int64_t>();
    const auto hd = e[1].get<std::int64_t>();
    if (t < 1 || t > total || hd < 1 || hd > total) {
      throw InputError(fmt::format("spanner: edge [{}, {}] references an unknown vertex (ids are 1..{})", t, hd, total));
    }
    h.edges.push_back({static_cast<VertexId>(t - 1), static_cast<VertexId>(hd - 1)});
  }
  h.normalize();
  return h;
}

json spanner_to_json(const SpannerGraph& h) {
  json out;
  out["originals"] = h.num_originals;
  out["d"] = h.dim;
  json pts = json::array();
  bool any_point = false;
  for (std::size_t v = 0; v < h.num_originals; ++v) {
    if (h.coords[v]) {
      pts.push_back(coords_to_json(*h.coords[v]));
      any_point = true;
    } else {
      pts.push_back(nullptr);
    }
  }
  if (any_point) out["points"] = std::move(pts);
  json st = json::array();
  for (std::size_t v = h.num_originals; v < h.num_vertices(); ++v) {
    st.push_back(h.coords[v] ? coords_to_json(*h.coords[v]) : json(nullptr));
  }
  out["steiners"] = std::move(st);

  auto before = [&](VertexId a, VertexId b) {
    const auto& ca = h.coords[a];
    const auto& cb = h.coords[b];
    if (ca && cb && *ca != *cb) return *ca < *cb;
    if (ca.has_value() != cb.has_value()) return ca.has_value();
    return a < b;
  };
  std::vector<Edge> edges = h.edges;
  std::sort(edges.begin(), edges.end(), [&](const Edge& x, const Edge& y) {
    if (x.tail != y.tail) return before(x.tail, y.tail);
    if (x.head != y.head) return before(x.head, y.head);
    return false;
  });
  json ej = json::array();
  for (const Edge& e : edges) ej.push_back({e.tail + 1, e.head + 1});
  out["edges"] = std::move(ej);
  return out;
}

std::string spanner_to_dot(const SpannerGraph& h) {
  std::ostringstream out;
  out << "digraph spanner {\n  rankdir=BT;\n";
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    const std::string label =
        h.coords[v] ? fmt::format("{}\\n{}", v + 1, coords_to_json(*h.coords[v]).dump()) : std::to_string(v + 1);
    out << fmt::format("  v{} [label=\"{}\"{}];\n", v + 1, label,
                       h.is_steiner(v) ? ", shape=box, style=dashed" : "");
  }
  for (const Edge& e : h.edges) out << fmt::format("  v{} -> v{};\n", e.tail + 1, e.head + 1);
  out << "}\n";
  return out.str();
}

json rational_to_json(const Rational& q) {
  return {{"decimal", to_decimal(q, 20)}, {"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

json certificate_to_json(const DualCertificate& c) {
  json out;
  out["m"] = c.m;
  out["d"] = c.d;
  out["status"] = to_string(c.status);
  out["objective_raw"] = rational_to_json(c.objective_raw);
  out["objective_closed_form"] = rational_to_json(c.objective_closed_form);
  out["objective_matches"] = c.objective_matches ? json(*c.objective_matches) : json(nullptr);
  out["max_constraint_lhs"] = rational_to_json(c.max_constraint_lhs);
  out["argmax_u"] = coords_to_json(c.argmax_u);
  out["argmax_v"] = coords_to_json(c.argmax_v);
  out["pairs_checked"] = c.pairs_checked;
  out["exact_candidates"] = c.exact_candidates;
  out["scale"] = long_double_json(c.scale);
  out["certified_bound"] = long_double_json(c.certified_bound);
  out["envelope"] = long_double_json(c.envelope);
  out["margin"] = long_double_json(DualCertificate::kMargin);
  out["lhs_within_scale"] = c.lhs_within_scale;
  out["objective_exceeds_envelope"] = c.objective_exceeds_envelope;
  return out;
}

json integral_to_json(const IntegralReport& r) {
  return {{"d", r.d},
          {"samples", r.samples},
          {"J", r.J},
          {"J_error", r.J_error},
          {"J_estimated_error", r.J_estimated_error},
          {"I_estimate", r.I_estimate},
          {"I_stderr", r.I_stderr},
          {"I_bound", r.I_bound},
          {"J_ok", r.J_ok},
          {"I_ok", r.I_ok},
          {"inconclusive", r.inconclusive}};
}

json report_to_json(const VerificationReport& r) {
  json out;
  out["is_valid"] = r.is_valid;
  out["total_violations"] = r.total_violations;
  out["truncated"] = r.total_violations > r.violations.size();
  json vs = json::array();
  for (const Violation& v : r.violations) {
    json item;
    item["kind"] = to_string(v.kind);
    item["pair"] = {v.from, v.to};
    item["ids"] = {v.from + 1, v.to + 1};
    item["distance"] = v.distance == kUnreachable ? json(nullptr) : json(v.distance);
    vs.push_back(std::move(item));
  }
  out["violations"] = std::move(vs);
  return out;
}

json oracle_to_json(const OracleResult& r) {
  json out;
  out["opt_size"] = r.opt_size;
  out["explored"] = r.explored;
  json w = json::array();
  for (const Edge& e : r.witness) w.push_back({e.tail + 1, e.head + 1});
  out["witness"] = std::move(w);
  return out;
}

json mapping_to_json(const JumpMapping& m) {
  json out;
  out["d"] = m.d;
  out["k"] = m.k;
  out["jumps"] = m.mapped.size();
  out["spanner_edges"] = m.spanner_edges;
  out["min_hamming"] = m.min_hamming;
  out["max_multiplicity"] = m.max_multiplicity;
  out["multiplicity_bound"] = m.multiplicity_bound;
  out["injective"] = m.injective;
  out["per_partition_injective"] = m.per_partition_injective;
  out["within_bound"] = m.within_bound;
  json items = json::array();
  for (const MappedJump& mj : m.mapped) {
    json item;
    item["a"] = mj.jump.a + 1;
    item["b"] = mj.jump.b + 1;
    item["ivec"] = partition_label(mj.jump.ivec);
    item["jvec"] = mj.jump.jvec;
    json path = json::array();
    for (VertexId v : mj.path) path.push_back(v + 1);
    item["path"] = std::move(path);
    item["edge"] = {mj.edge.tail + 1, mj.edge.head + 1};
    item["hamming"] = mj.hamming;
    items.push_back(std::move(item));
  }
  out["mapped"] = std::move(items);
  json mult = json::array();
  for (const auto& [edge, count] : m.multiplicity) mult.push_back({{"edge", {edge.tail + 1, edge.head + 1}}, {"count", count}});
  out["multiplicity"] = std::move(mult);
  return out;
}

std::string jump_stats_csv(const JumpStats& s, const json& meta) {
  std::string out = "# " + meta.dump() + "\n";
  out += "trial,jumps";
  for (const auto& label : s.partition_labels) {
    out += ",bp";
    for (unsigned i : label) out += fmt::format("_{}", i);
  }
  out += "\n";
  for (std::size_t t = 0; t < s.per_trial.size(); ++t) {
    out += fmt::format("{},{}", t, s.per_trial[t]);
    for (auto c : s.per_trial_partitions[t]) out += fmt::format(",{}", c);
    out += "\n";
  }
  return out;
}

json jump_stats_summary(const JumpStats& s) {
  return {{"n", s.n},
          {"d", s.d},
          {"trials", s.trials},
          {"seed", s.seed},
          {"mean", s.mean},
          {"stddev", s.stddev},
          {"stderr", s.stderr_mean},
          {"ci95", {s.ci95_low, s.ci95_high}},
          {"lower_bound", expected_jumps_lower_bound(s.n, s.d)}};
}

}  // namespace tcspan::io
