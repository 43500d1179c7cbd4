#include "olre/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace olre {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open CSV file \"" + path + "\"");
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string item;
    std::istringstream row(line);
    while (std::getline(row, item, ',')) fields.push_back(item);
    if (line.back() == ',') fields.emplace_back();
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      if (fields.size() != table.header.size())
        throw std::invalid_argument("malformed CSV row in \"" + path + "\": " + line);
      table.rows.push_back(std::move(fields));
    }
  }
  if (first) throw std::invalid_argument("CSV file \"" + path + "\" has no header row");
  return table;
}

}  // namespace olre
