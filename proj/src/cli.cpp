#include "tcspan/cli.hpp"

#include <bit>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tcspan/build.hpp"
#include "tcspan/dual.hpp"
#include "tcspan/error.hpp"
#include "tcspan/io.hpp"
#include "tcspan/jumps.hpp"
#include "tcspan/oracle.hpp"
#include "tcspan/parallel.hpp"
#include "tcspan/poset.hpp"
#include "tcspan/report.hpp"
#include "tcspan/verify.hpp"

namespace tcspan::cli {

namespace {

using io::json;

struct Globals {
  unsigned threads = 0;
  bool unsafe = false;
};

// Parsed options of a subcommand, minus the ones that cannot change output.
json config_of(const CLI::App& sub) {
  json config = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "threads") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_type_size() == 0) {
        config[name] = true;
      } else if (res.size() == 1) {
        config[name] = res.front();
      } else {
        config[name] = res;
      }
    } else if (!opt->get_default_str().empty()) {
      config[name] = opt->get_default_str();
    }
  }
  return config;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    io::write_text_file(out, text);
  }
}

json with_meta(json body, const CLI::App& sub, std::optional<std::uint64_t> seed = std::nullopt) {
  body["meta"] = io::make_meta(sub.get_name(), config_of(sub), seed);
  return body;
}

Poset load_poset(const std::string& path) { return io::poset_from_json(io::read_json_file(path)); }

SpannerGraph load_spanner(const std::string& path) { return io::spanner_from_json(io::read_json_file(path)); }

std::string describe(const Violation& v) {
  const std::string dist = v.distance == kUnreachable ? "inf" : std::to_string(v.distance);
  return fmt::format("{} ({},{}) {}", to_string(v.kind), v.from, v.to, dist);
}

}  // namespace

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args);
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"tcspan: Steiner 2-TC-spanners of low-dimensional posets"};
  app.set_version_flag("--version", std::string(io::version()));
  app.set_config("--config", "", "TOML/INI file with option values");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--threads", g.threads, "worker threads (default: $TCSPAN_THREADS, else 1)");
  app.add_flag("--unsafe", g.unsafe, "lift size guards on enumeration and search");

  int exit_code = kExitOk;
  std::function<void()> action;

  // embed
  std::string in;
  std::string out;
  auto* embed = app.add_subcommand("embed", "rank-transform a poset to its canonical embedding");
  embed->add_option("--in", in, "poset JSON")->required();
  embed->add_option("--out", out, "output poset JSON (default stdout)");
  embed->callback([&] {
    action = [&] {
      const Poset canon = canonicalize_embedding(load_poset(in));
      emit(out, io::dump(with_meta(io::poset_to_json(canon), *embed)));
    };
  });

  // grid
  std::uint64_t m = 2;
  std::size_t d = 1;
  auto* grid = app.add_subcommand("grid", "write the hypergrid H_{m,d} as a poset");
  grid->add_option("--m", m, "side length")->required()->check(CLI::PositiveNumber);
  grid->add_option("--d", d, "dimension")->required()->check(CLI::PositiveNumber);
  grid->add_option("--out", out, "output poset JSON (default stdout)");
  grid->callback([&] {
    action = [&] {
      const Poset p = hypergrid(m, d, g.unsafe ? std::numeric_limits<std::uint64_t>::max() : kDefaultMaxGridElements);
      emit(out, io::dump(with_meta(io::poset_to_json(p), *grid)));
    };
  });

  // build
  std::string dot;
  auto* build = app.add_subcommand("build", "Steiner 2-TC-spanner of a canonical poset");
  build->add_option("--in", in, "canonical poset JSON")->required();
  build->add_option("--out", out, "output spanner JSON (default stdout)");
  build->add_option("--dot", dot, "also write a DOT rendering");
  build->callback([&] {
    action = [&] {
      const SpannerGraph s = build_steiner_2tc(load_poset(in));
      emit(out, io::dump(with_meta(io::spanner_to_json(s), *build)));
      if (!dot.empty()) io::write_text_file(dot, io::spanner_to_dot(s));
    };
  });

  // verify
  std::string poset_path;
  std::string spanner_path;
  unsigned k = 2;
  std::string report_path;
  auto* verify = app.add_subcommand("verify", "check a graph as a Steiner k-TC-spanner; exit 1 if invalid");
  verify->add_option("--poset", poset_path, "poset JSON")->required();
  verify->add_option("--spanner", spanner_path, "spanner JSON")->required();
  verify->add_option("--k", k, "hop bound")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--report", report_path, "write the report as JSON");
  verify->callback([&] {
    action = [&] {
      const Poset p = load_poset(poset_path);
      const SpannerGraph h = load_spanner(spanner_path);
      const VerificationReport rep = is_steiner_ktc(h, p, k, resolve_threads(g.threads));
      if (!report_path.empty()) io::write_text_file(report_path, io::dump(with_meta(io::report_to_json(rep), *verify)));
      if (rep.is_valid) {
        std::cout << fmt::format("valid Steiner {}-TC-spanner: {} vertices, {} edges\n", k, h.num_vertices(),
                                 h.edges.size());
      } else {
        std::cout << fmt::format("invalid: {} violation(s)\n", rep.total_violations);
        constexpr std::size_t kShown = 20;
        for (std::size_t i = 0; i < rep.violations.size() && i < kShown; ++i) {
          std::cout << "  " << describe(rep.violations[i]) << "\n";
        }
        exit_code = kExitFailed;
      }
    };
  });

  // path
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  auto* path = app.add_subcommand("path", "two-hop path between elements of a built spanner");
  path->add_option("--spanner", spanner_path, "spanner JSON written by build")->required();
  path->add_option("--from", from, "element id (1-based)")->required();
  path->add_option("--to", to, "element id (1-based)")->required();
  path->callback([&] {
    action = [&] {
      const SpannerGraph s = load_spanner(spanner_path);
      if (from < 1 || to < 1 || from > s.num_originals || to > s.num_originals) {
        throw InputError(fmt::format("element ids must be in 1..{}", s.num_originals));
      }
      const PathIndex index(s);
      const auto hops = path_query(index, from - 1, to - 1);
      std::string line;
      for (std::size_t i = 0; i < hops.size(); ++i) {
        const VertexId v = hops[i];
        line += fmt::format("{}{}{}", i ? " -> " : "", v + 1, s.coords[v] ? " " + io::point_label(*s.coords[v]) : "");
      }
      std::cout << line << "\n";
    };
  });

  // oracle
  std::uint64_t budget = kOracleDefaultBudget;
  auto* oracle = app.add_subcommand("oracle", "exact sparsest k-TC-spanner of a tiny poset");
  oracle->add_option("--poset", poset_path, "poset JSON")->required();
  oracle->add_option("--k", k, "hop bound")->capture_default_str()->check(CLI::PositiveNumber);
  oracle->add_option("--budget", budget, "search node budget")->capture_default_str();
  oracle->add_option("--out", out, "output JSON (default stdout)");
  oracle->callback([&] {
    action = [&] {
      const Poset p = load_poset(poset_path);
      const std::size_t max_pairs = g.unsafe ? 64 : kOracleMaxPairs;
      const OracleResult r = k == 2 ? min_2tc_bruteforce(p, budget, max_pairs) : min_ktc_bruteforce(p, k, budget, max_pairs);
      emit(out, io::dump(with_meta(io::oracle_to_json(r), *oracle)));
    };
  });

  // dualbound
  std::optional<std::uint64_t> sample;
  std::uint64_t seed = 0;
  auto* dual = app.add_subcommand("dualbound", "dual lower-bound certificate for H_{m,d}; exit 1 if a check fails");
  dual->add_option("--m", m, "side length")->required()->check(CLI::PositiveNumber);
  dual->add_option("--d", d, "dimension")->required()->check(CLI::PositiveNumber);
  dual->add_option("--sample", sample, "spot-check this many random pairs instead of all");
  dual->add_option("--seed", seed, "seed for --sample")->capture_default_str();
  dual->add_option("--out", out, "output JSON (default stdout)");
  dual->callback([&] {
    action = [&] {
      CertifyOptions opts;
      opts.sample = sample;
      opts.seed = seed;
      if (g.unsafe) opts.max_points = std::numeric_limits<std::uint64_t>::max();
      const DualCertificate c = certify(m, d, opts);
      emit(out, io::dump(with_meta(io::certificate_to_json(c), *dual, sample ? std::optional(seed) : std::nullopt)));
      const bool ok = c.lhs_within_scale && c.objective_exceeds_envelope && c.objective_matches.value_or(true);
      if (!ok) exit_code = kExitFailed;
    };
  });

  // integrals
  std::uint64_t samples = 100000;
  auto* integrals = app.add_subcommand("integrals", "numerical check of the integral estimates for d in {1,2,3}");
  integrals->add_option("--d", d, "dimension")->required()->check(CLI::Range(1, 3));
  integrals->add_option("--samples", samples, "total quasi-Monte-Carlo points (split over 16 shifted replicates)")->capture_default_str();
  integrals->add_option("--seed", seed, "shift seed")->capture_default_str();
  integrals->add_option("--out", out, "output JSON (default stdout)");
  integrals->callback([&] {
    action = [&] {
      const IntegralReport r = integral_check(d, samples, seed);
      emit(out, io::dump(with_meta(io::integral_to_json(r), *integrals, seed)));
      if (!r.J_ok || (!r.I_ok && !r.inconclusive)) exit_code = kExitFailed;
    };
  });

  // jumps
  std::size_t n = 256;
  std::size_t jd = 2;
  std::uint64_t trials = 500;
  auto* jumps = app.add_subcommand("jumps", "Monte-Carlo jump counts over random posets");
  jumps->add_option("--n", n, "elements (rounded down to a power of two)")->capture_default_str();
  jumps->add_option("--d", jd, "dimension (>= 2)")->capture_default_str();
  jumps->add_option("--trials", trials, "number of posets")->capture_default_str();
  jumps->add_option("--seed", seed, "base seed; trial t uses stream (seed, t)")->capture_default_str();
  jumps->add_option("--out", out, "per-trial CSV (default stdout)");
  jumps->callback([&] {
    action = [&] {
      if (n < 2) throw InputError("--n must be at least 2");
      if (!std::has_single_bit(n)) {
        const std::size_t rounded = std::bit_floor(n);
        std::cerr << fmt::format("warning: n={} is not a power of two; using n={}\n", n, rounded);
        n = rounded;
      }
      const JumpStats s = monte_carlo_jumps(n, jd, trials, seed, resolve_threads(g.threads));
      json config = config_of(*jumps);
      config["n"] = std::to_string(n);
      emit(out, io::jump_stats_csv(s, io::make_meta("jumps", config, seed)));
      if (!out.empty() && out != "-") std::cout << io::jump_stats_summary(s).dump(2) << "\n";
    };
  });

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "draw one random poset (first coordinate = element index)");
  sample_cmd->add_option("--n", n, "elements")->required();
  sample_cmd->add_option("--d", d, "dimension")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", seed, "seed")->capture_default_str();
  sample_cmd->add_option("--out", out, "output poset JSON (default stdout)");
  sample_cmd->callback([&] {
    action = [&] {
      const Poset p = sample_poset({n, d, seed, 0});
      emit(out, io::dump(with_meta(io::poset_to_json(p), *sample_cmd, seed)));
    };
  });

  // jumpmap
  auto* jumpmap = app.add_subcommand("jumpmap", "map the jumps of a poset to edges of a spanner");
  jumpmap->add_option("--poset", poset_path, "poset JSON (power-of-two size, one element per first coordinate)")
      ->required();
  jumpmap->add_option("--spanner", spanner_path, "spanner JSON; omit to build one")->capture_default_str();
  jumpmap->add_option("--k", k, "hop bound")->capture_default_str()->check(CLI::PositiveNumber);
  jumpmap->add_option("--out", out, "output JSON (default stdout)");
  jumpmap->callback([&] {
    action = [&] {
      const Poset p = load_poset(poset_path);
      SpannerGraph h;
      if (spanner_path.empty()) {
        if (k != 2) throw InputError("without --spanner only --k 2 is supported");
        h = embedded_2tc_spanner(p);
      } else {
        h = rebase_originals(load_spanner(spanner_path), p);
        if (h.num_steiners() > 0) h = replace_steiner(h, p, k);
      }
      const JumpMapping mp = jump_edge_mapping(p, h, k);
      emit(out, io::dump(with_meta(io::mapping_to_json(mp), *jumpmap)));
      const bool ok = p.dim() == 2 ? mp.injective : mp.within_bound;
      if (!ok) exit_code = kExitFailed;
    };
  });

  // table
  std::vector<std::string> instances{"3x1", "4x1", "5x1", "2x2"};
  auto* table = app.add_subcommand("table", "size comparison table for hypergrids");
  table->add_option("--instances", instances, "list of MxD")->capture_default_str();
  table->callback([&] {
    action = [&] {
      std::vector<TableRow> rows;
      for (const std::string& spec : instances) {
        const auto x = spec.find('x');
        if (x == std::string::npos) throw InputError(fmt::format("instance '{}' is not of the form MxD", spec));
        try {
          rows.push_back(grid_row(std::stoull(spec.substr(0, x)), std::stoull(spec.substr(x + 1))));
        } catch (const std::logic_error&) {
          throw InputError(fmt::format("instance '{}' is not of the form MxD", spec));
        }
      }
      std::cout << report_table(rows);
    };
  });

  std::vector<std::string> argv_store{"tcspan"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (action) action();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << " (use --unsafe to override)\n";
    return kExitUsage;
  }
  return exit_code;
}

}  // namespace tcspan::cli
