#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace mobilitylab::cli {

/// Rectangular numeric table with a header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Header line, then one line per row, every value as "%.9g", LF endings.
/// Throws std::invalid_argument for a ragged table.
std::string format_csv(const Table& table);

/// Writes format_csv(table) to `path` and returns the byte count.
/// Throws std::runtime_error on I/O failure.
std::size_t emit_csv(const Table& table, const std::string& path);

/// Runs one invocation. `args` excludes the program name.
/// Returns 0 on success, 2 on bad arguments or configuration, 1 when the
/// analysis itself is infeasible or output cannot be written.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mobilitylab::cli
