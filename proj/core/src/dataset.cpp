#include "detem/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "detem/errors.hpp"

namespace detem {

void Dataset::validate() const {
  if (x.rows() < 1) throw InvalidConfig("dataset must contain at least one observation");
  if (!x.allFinite()) throw InvalidConfig("dataset contains non-finite entries");
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "# dim=" << data.dim() << "\n";
  char buf[64];
  for (int i = 0; i < data.size(); ++i) {
    for (int j = 0; j < data.dim(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", data.x(i, j));
      out << (j ? "," : "") << buf;
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# dim=", 0) != 0)
    throw IoError("missing '# dim=p' header in " + path);
  const int p = std::stoi(line.substr(6));
  std::vector<double> values;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    int cols = 0;
    while (std::getline(ss, cell, ',')) {
      values.push_back(std::stod(cell));
      ++cols;
    }
    if (cols != p) throw IoError("row width mismatch in " + path);
    ++rows;
  }
  Dataset data;
  data.x.resize(rows, p);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < p; ++j) data.x(i, j) = values[static_cast<std::size_t>(i) * p + j];
  data.validate();
  return data;
}

}  // namespace detem
