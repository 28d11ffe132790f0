#pragma once

#include <cstddef>
#include <vector>

#include "diagram.hpp"
#include "metric_pair.hpp"
#include "point.hpp"
#include "rng.hpp"

namespace pdgeom {

// Seeded ambient point generation for sweeps and probes. Constrained kinds
// respect their region; finite kinds draw ground indices (subset members are
// normalized away by the diagram constructor).
inline Point random_point(const MetricPair& pair, Rng& rng, double scale = 5.0) {
  switch (pair.kind()) {
    case MetricPair::Kind::kEuclideanDelta: {
      std::vector<double> c(pair.ambient_dim());
      for (double& v : c) v = rng.uniform(-scale, scale);
      return Point::of_coords(std::move(c));
    }
    case MetricPair::Kind::kEuclideanHalfplaneDelta:
    case MetricPair::Kind::kEuclideanQuadrantDelta: {
      const int n = pair.half_dim();
      const double lo = pair.kind() == MetricPair::Kind::kEuclideanQuadrantDelta ? 0.0 : -scale;
      std::vector<double> c(pair.ambient_dim());
      for (int i = 0; i < n; ++i) {
        const double birth = rng.uniform(lo, scale);
        c[static_cast<std::size_t>(i)] = birth;
        c[static_cast<std::size_t>(n + i)] = birth + rng.uniform(0.0, scale);
      }
      return Point::of_coords(std::move(c));
    }
    case MetricPair::Kind::kRayOrigin: return Point::of_coords({rng.uniform(0.0, scale)});
    case MetricPair::Kind::kLinfPlaneDelta:
      return Point::of_coords({rng.uniform(-scale, scale), rng.uniform(-scale, scale)});
    case MetricPair::Kind::kFinite: return Point::of_index(rng.uniform_index(pair.ground_size()));
    case MetricPair::Kind::kDisjointUnion: {
      const int side = rng.coin() ? 1 : 0;
      return random_point(side == 0 ? pair.left() : pair.right(), rng, scale).in_component(side);
    }
  }
  return Point::of_coords({});
}

inline Diagram random_diagram(const MetricPair& pair, Rng& rng, std::size_t max_points,
                              double scale = 5.0) {
  const std::size_t count = rng.uniform_index(max_points + 1);
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t k = 0; k < count; ++k) pts.push_back(random_point(pair, rng, scale));
  return Diagram(pair, std::move(pts));
}

inline Diagram random_nonempty_diagram(const MetricPair& pair, Rng& rng, std::size_t max_points,
                                       double scale = 5.0) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Diagram d = random_diagram(pair, rng, max_points, scale);
    if (!d.empty()) return d;
  }
  // Finite pairs whose ground set is almost all subset can starve the loop;
  // fall back to a single explicit off-subset point if one exists.
  if (pair.kind() == MetricPair::Kind::kFinite) {
    for (std::size_t i = 0; i < pair.ground_size(); ++i) {
      Diagram d(pair, {Point::of_index(i)});
      if (!d.empty()) return d;
    }
  }
  throw std::invalid_argument("could not draw a nonempty diagram over this pair");
}

}  // namespace pdgeom
