#include "jetgh/point_cloud.hpp"

#include <sstream>

#include "jetgh/errors.hpp"

namespace jetgh {

std::string CloudMetric::describe() const {
  if (kind == MetricKind::Euclidean) return "euclidean";
  std::ostringstream os;
  os << "hyperbolic(rt=" << radius << ")";
  return os.str();
}

void PointCloud::add(std::span<const double> p) {
  if (static_cast<int>(p.size()) != dim_)
    throw ValidationError("PointCloud: point dimension " + std::to_string(p.size()) +
                          " does not match cloud dimension " + std::to_string(dim_));
  data_.insert(data_.end(), p.begin(), p.end());
}

}  // namespace jetgh
