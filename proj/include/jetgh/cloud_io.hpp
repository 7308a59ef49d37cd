#pragma once

// CSV serialization of point clouds: optional '#' comment lines, one header
// row, then one row per point with values printed to 17 significant digits.

#include <iosfwd>
#include <string>
#include <vector>

#include "jetgh/jet_lift.hpp"
#include "jetgh/point_cloud.hpp"

namespace jetgh {

std::string format_double(double v);

void write_cloud_csv(std::ostream& os, const PointCloud& cloud, const std::vector<std::string>& header,
                     const std::string& comment = {});
void write_lifted_csv(std::ostream& os, const LiftedCloud& lifted, const std::string& comment = {});

// Comment lines and a non-numeric first row are skipped. Throws IoError on
// unreadable files and ragged or non-numeric rows (with the line number).
PointCloud read_cloud_csv(std::istream& is, CloudMetric metric = {}, const std::string& source = "<stream>");
PointCloud read_cloud_csv(const std::string& path, CloudMetric metric = {});

}  // namespace jetgh
