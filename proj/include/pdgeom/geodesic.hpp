#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diagram.hpp"
#include "exponent.hpp"
#include "matching.hpp"
#include "metric_pair.hpp"

namespace pdgeom {

// Convex-combination geodesic between two diagrams: each track moves one
// matched pair along an ambient geodesic; to-subset tracks run between a
// point and its nearest subset point (leaving the subset at time 0 on the
// target side, reaching it at time 1 on the source side). Evaluation drops
// whatever sits on the subset, so the endpoints reproduce the inputs.
class GeodesicPath {
 public:
  GeodesicPath(Diagram source, Diagram target, Matching matching)
      : source_(std::move(source)), target_(std::move(target)), matching_(std::move(matching)) {
    const MetricPair& pair = source_.pair();
    if (!pair.supports_geodesics()) {
      throw std::invalid_argument(pair.kind_name() + " supports no geodesics");
    }
    for (const auto& [i, j] : matching_.pairs) {
      tracks_.emplace_back(source_.points()[i], target_.points()[j]);
    }
    for (const std::size_t i : matching_.sigma_to_A) {
      tracks_.emplace_back(source_.points()[i], pair.subset_nearest(source_.points()[i]));
    }
    for (const std::size_t j : matching_.tau_to_A) {
      tracks_.emplace_back(pair.subset_nearest(target_.points()[j]), target_.points()[j]);
    }
  }

  const Diagram& source() const { return source_; }
  const Diagram& target() const { return target_; }
  const Matching& matching() const { return matching_; }
  double length() const { return matching_.cost; }

  // The interpolated diagram at time t in [0, 1].
  Diagram at(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("time must lie in [0, 1]");
    std::vector<Point> pts;
    pts.reserve(tracks_.size());
    for (const auto& [from, to] : tracks_) {
      pts.push_back(source_.pair().geodesic_point(from, to, t));
    }
    return Diagram(source_.pair(), std::move(pts));
  }

 private:
  Diagram source_, target_;
  Matching matching_;
  std::vector<std::pair<Point, Point>> tracks_;
};

// Builds the geodesic induced by an optimal matching. Finite p only; the
// bottleneck matching does not induce a constant-speed interpolation this way.
inline GeodesicPath geodesic(const Diagram& a, const Diagram& b, const Exponent& p) {
  if (p.is_inf()) {
    throw std::invalid_argument("geodesics are constructed for finite exponents");
  }
  Matching m = optimal_matching(a, b, p);
  return GeodesicPath(a, b, std::move(m));
}

// Midpoint diagnostics for the 2-norm: the time-1/2 diagram of the geodesic,
// its two half distances, and the cost of the composite matching obtained by
// gluing optimal matchings source->mid and mid->target at their shared mid
// points. For a true midpoint both halves equal half the total and the
// composite matching is optimal.
struct MidpointReport {
  Diagram midpoint;
  double total = 0.0;
  double first_half = 0.0;
  double second_half = 0.0;
  double composite_cost = 0.0;
  double max_half_deviation = 0.0;
  double composite_deviation = 0.0;
};

inline MidpointReport midpoint_check(const Diagram& a, const Diagram& b) {
  const Exponent p(2.0);
  const GeodesicPath path = geodesic(a, b, p);
  MidpointReport rep{path.at(0.5)};
  rep.total = path.length();
  rep.first_half = distance(a, rep.midpoint, p);
  rep.second_half = distance(rep.midpoint, b, p);
  rep.max_half_deviation = std::max(std::abs(rep.first_half - 0.5 * rep.total),
                                    std::abs(rep.second_half - 0.5 * rep.total));

  const Matching to_a = optimal_matching(a, rep.midpoint, p);
  const Matching to_b = optimal_matching(rep.midpoint, b, p);
  const std::size_t mid_size = rep.midpoint.size();
  std::vector<std::optional<std::size_t>> from_a(mid_size), to_b_of(mid_size);
  for (const auto& [i, k] : to_a.pairs) from_a[k] = i;
  for (const auto& [k, j] : to_b.pairs) to_b_of[k] = j;

  Matching composite;
  composite.p = p;
  for (std::size_t k = 0; k < mid_size; ++k) {
    if (from_a[k] && to_b_of[k]) {
      composite.pairs.emplace_back(*from_a[k], *to_b_of[k]);
    } else if (from_a[k]) {
      composite.sigma_to_A.push_back(*from_a[k]);
    } else if (to_b_of[k]) {
      composite.tau_to_A.push_back(*to_b_of[k]);
    }
  }
  for (const std::size_t i : to_a.sigma_to_A) composite.sigma_to_A.push_back(i);
  for (const std::size_t j : to_b.tau_to_A) composite.tau_to_A.push_back(j);
  composite.cost = matching_cost(a, b, composite);
  rep.composite_cost = composite.cost;
  rep.composite_deviation = std::abs(rep.composite_cost - rep.total);
  return rep;
}

}  // namespace pdgeom
