#include "tcspan/report.hpp"

#include <fmt/format.h>

#include "tcspan/build.hpp"
#include "tcspan/dual.hpp"
#include "tcspan/error.hpp"
#include "tcspan/oracle.hpp"
#include "tcspan/poset.hpp"

namespace tcspan {

TableRow grid_row(std::uint64_t m, std::size_t d) {
  TableRow row;
  row.instance = fmt::format("H_{{{},{}}}", m, d);
  const Poset grid = hypergrid(m, d);
  row.n = grid.size();
  std::uint64_t bound = row.n;
  for (std::size_t i = 0; i < d; ++i) bound *= prefix_bits(grid.size());
  row.bound = bound;
  row.built = build_steiner_2tc(canonicalize_embedding(grid)).edges.size();
  try {
    row.oracle = min_2tc_bruteforce(grid).opt_size;
  } catch (const GuardError&) {
  }
  try {
    row.dual = certify(m, d).certified_bound;
  } catch (const GuardError&) {
  }
  return row;
}

std::string report_table(const std::vector<TableRow>& rows) {
  constexpr auto kHeader = "{:<12} {:>8} {:>8} {:>10} {:>8} {:>10}\n";
  std::string out = fmt::format(kHeader, "instance", "n", "built", "n*ell^d", "oracle", "dual");
  auto cell = [](const auto& v) { return v ? fmt::format("{}", *v) : std::string("-"); };
  for (const TableRow& r : rows) {
    const std::string dual = r.dual ? fmt::format("{:.4f}", static_cast<double>(*r.dual)) : "-";
    out += fmt::format(kHeader, r.instance, r.n, cell(r.built), cell(r.bound), cell(r.oracle), dual);
  }
  return out;
}

}  // namespace tcspan
