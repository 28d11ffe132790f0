#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "pdgeom/pdgeom.hpp"

namespace testutil {

using namespace pdgeom;

// Diagram over the ray pair from persistence values.
inline Diagram ray_diagram(std::initializer_list<double> values) {
  std::vector<Point> pts;
  for (const double v : values) pts.push_back(Point::of_coords({v}));
  return Diagram(MetricPair::ray_origin(), std::move(pts));
}

// Diagram over the 1-fold diagonal pair from (birth, death) pairs.
inline Diagram plane_diagram(std::initializer_list<std::pair<double, double>> pts) {
  std::vector<Point> points;
  for (const auto& [b, d] : pts) points.push_back(Point::of_coords({b, d}));
  return Diagram(MetricPair::euclidean_delta(1), std::move(points));
}

inline Diagram linf_diagram(std::initializer_list<std::pair<double, double>> pts) {
  std::vector<Point> points;
  for (const auto& [b, d] : pts) points.push_back(Point::of_coords({b, d}));
  return Diagram(MetricPair::linf_plane_delta(), std::move(points));
}

}  // namespace testutil
