#pragma once

#include <iosfwd>
#include <string>

namespace olre {

// Implementations behind the CLI subcommands. Exit codes: 0 success,
// 1 numerical failure (partial results plus a failure manifest are kept),
// 2 invalid configuration or malformed input file.
int cmd_run(const std::string& config_path, int jobs, bool verbose, std::ostream& err);
int cmd_select(const std::string& config_path, bool verbose, std::ostream& err);
int cmd_plot(const std::string& csv_path, const std::string& svg_path, std::ostream& err);

}  // namespace olre
