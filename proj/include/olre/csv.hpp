#pragma once

#include <string>
#include <vector>

namespace olre {

// Doubles in output files carry 17 significant digits so that rereading
// reproduces the exact value.
std::string fmt17(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Minimal reader for the comma-separated files this tool writes: header row,
// LF endings, no quoting. Rows with a different field count than the header
// are rejected.
CsvTable read_csv(const std::string& path);

}  // namespace olre
