#include "jetgh/cloud_io.hpp"

#include <fmt/format.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "jetgh/errors.hpp"

namespace jetgh {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) {
    const auto b = f.find_first_not_of(" \t\r");
    const auto e = f.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : f.substr(b, e - b + 1));
  }
  return out;
}

bool parse_double(const std::string& s, double& v) {
  if (s.empty()) return false;
  char* end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

void write_cloud_csv(std::ostream& os, const PointCloud& cloud, const std::vector<std::string>& header,
                     const std::string& comment) {
  if (header.size() != static_cast<std::size_t>(cloud.dim()))
    throw ValidationError("write_cloud_csv: header has " + std::to_string(header.size()) + " names for " +
                          std::to_string(cloud.dim()) + " columns");
  if (!comment.empty()) os << "# " << comment << '\n';
  for (std::size_t j = 0; j < header.size(); ++j) os << (j ? "," : "") << header[j];
  os << '\n';
  std::string row;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    row.clear();
    const auto p = cloud.point(i);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j) row += ',';
      row += format_double(p[j]);
    }
    os << row << '\n';
  }
  if (!os) throw IoError("write_cloud_csv: write failed");
}

void write_lifted_csv(std::ostream& os, const LiftedCloud& lifted, const std::string& comment) {
  write_cloud_csv(os, lifted.cloud, lifted_column_names(lifted.order, lifted.ambient_dim), comment);
}

PointCloud read_cloud_csv(std::istream& is, CloudMetric metric, const std::string& source) {
  PointCloud cloud;
  std::string line;
  int lineno = 0;
  bool first_row = true;
  std::vector<double> values;
  while (std::getline(is, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const std::vector<std::string> fields = split_fields(line);
    values.resize(fields.size());
    bool numeric = true;
    for (std::size_t j = 0; j < fields.size(); ++j) numeric = numeric && parse_double(fields[j], values[j]);
    if (!numeric) {
      if (first_row) {
        first_row = false;
        continue;
      }
      throw IoError(source + ":" + std::to_string(lineno) + ": non-numeric value");
    }
    if (cloud.dim() == 0) cloud = PointCloud(static_cast<int>(fields.size()), metric);
    if (static_cast<int>(fields.size()) != cloud.dim())
      throw IoError(source + ":" + std::to_string(lineno) + ": expected " + std::to_string(cloud.dim()) +
                    " columns, found " + std::to_string(fields.size()));
    first_row = false;
    cloud.add(values);
  }
  if (is.bad()) throw IoError(source + ": read failed");
  if (cloud.empty()) throw IoError(source + ": no data rows");
  return cloud;
}

PointCloud read_cloud_csv(const std::string& path, CloudMetric metric) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_cloud_csv(in, metric, path);
}

}  // namespace jetgh
