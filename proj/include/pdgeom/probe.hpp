#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "diagram.hpp"
#include "generate.hpp"
#include "matching.hpp"
#include "rng.hpp"

namespace pdgeom {

// Random probe of the two facts behind the dimension analysis of the ray
// diagram space: the sorted closed form agrees with the matcher, and the
// isometric embedding of the ray pair into the n-fold diagonal pair changes
// 2-norm diagram distances by a factor inside [1/sqrt(2), sqrt(2)].
struct DimensionProbe {
  std::size_t trials = 0;
  std::size_t degenerate_skipped = 0;  // pairs at distance ~0, no ratio
  double sorted_formula_max_error = 0.0;
  double ratio_min = kInfiniteDistance;
  double ratio_max = 0.0;

  bool ratios_within_bounds(double tol = 1e-9) const {
    if (ratio_max == 0.0 && ratio_min == kInfiniteDistance) return true;  // nothing measured
    return ratio_min >= 1.0 / std::sqrt(2.0) - tol && ratio_max <= std::sqrt(2.0) + tol;
  }
};

inline DimensionProbe probe_dimension(std::size_t max_points, std::size_t trials,
                                      std::uint64_t seed, int embed_n = 2) {
  if (max_points > 12) throw std::invalid_argument("probe cap: at most 12 points per diagram");
  const MetricPair ray = MetricPair::ray_origin();
  const RelativeMap embed = ray_to_delta_embedding(embed_n);
  const Exponent p(2.0);
  DimensionProbe out;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, t));
    const Diagram a = random_diagram(ray, rng, max_points);
    const Diagram b = random_diagram(ray, rng, max_points);
    const double via_matcher = distance(a, b, p);
    const double via_formula = sorted_ray_distance(a, b);
    out.sorted_formula_max_error =
        std::max(out.sorted_formula_max_error, std::abs(via_matcher - via_formula));
    ++out.trials;

    const double pushed = distance(pushforward(embed, a), pushforward(embed, b), p);
    if (via_matcher <= 1e-12) {
      ++out.degenerate_skipped;
      continue;
    }
    const double ratio = pushed / via_matcher;
    out.ratio_min = std::min(out.ratio_min, ratio);
    out.ratio_max = std::max(out.ratio_max, ratio);
  }
  return out;
}

}  // namespace pdgeom
