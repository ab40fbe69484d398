#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "tcspan/dual.hpp"
#include "tcspan/jumps.hpp"
#include "tcspan/oracle.hpp"
#include "tcspan/poset.hpp"
#include "tcspan/rational.hpp"
#include "tcspan/spanner.hpp"
#include "tcspan/verify.hpp"

// File formats. Coordinates and vertex ids are 1-based on disk and 0-based in
// memory; every reader converts on load and every writer converts back.

namespace tcspan::io {

using nlohmann::json;

std::string_view version();

/// {"tool", "version", "command", "config", "seed"}; seed is null when the
/// command draws no randomness.
json make_meta(std::string_view command, const json& config, std::optional<std::uint64_t> seed = std::nullopt);

json read_json_file(const std::filesystem::path& path);
/// Truncates and writes; InputError on failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);
/// Pretty-printed JSON with a trailing newline.
std::string dump(const json& j);

/// "(a,b,...)" in file (1-based) coordinates.
std::string point_label(const GridPoint& p);

// {"d": int, "m": int, "points": [[c1..cd], ...]}
Poset poset_from_json(const json& j);
json poset_to_json(const Poset& p);

// {"originals": n, "d": d, "points": [...], "steiners": [[..] | null, ...],
//  "edges": [[tail, head], ...]}. Edge order: tail coordinates, then head
// coordinates (coordinate-free vertices after all others, by id).
SpannerGraph spanner_from_json(const json& j);
json spanner_to_json(const SpannerGraph& h);
std::string spanner_to_dot(const SpannerGraph& h);

json rational_to_json(const Rational& q);
json certificate_to_json(const DualCertificate& c);
json integral_to_json(const IntegralReport& r);
json report_to_json(const VerificationReport& r);
json oracle_to_json(const OracleResult& r);
json mapping_to_json(const JumpMapping& m);

/// One row per trial: trial, jumps, then one column per partition. The first
/// line is a '#' comment carrying the metadata as compact JSON.
std::string jump_stats_csv(const JumpStats& s, const json& meta);
json jump_stats_summary(const JumpStats& s);

}  // namespace tcspan::io
