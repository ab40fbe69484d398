#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tcspan {

/// One instance of the size comparison: built spanner vs. the n * ell^d
/// bound vs. the exact optimum vs. the dual lower bound.
struct TableRow {
  std::string instance;
  std::uint64_t n = 0;
  std::optional<std::size_t> built;
  std::optional<std::uint64_t> bound;
  std::optional<std::size_t> oracle;
  std::optional<long double> dual;
};

/// Fills a row for H_{m,d}. Columns whose computation hits a guard are left
/// empty instead of failing the whole table.
TableRow grid_row(std::uint64_t m, std::size_t d);

/// Fixed-width text table; an empty list renders the header only.
std::string report_table(const std::vector<TableRow>& rows);

}  // namespace tcspan
