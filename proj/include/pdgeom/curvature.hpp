#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "diagram.hpp"
#include "generate.hpp"
#include "geodesic.hpp"
#include "matching.hpp"
#include "metric_pair.hpp"
#include "rng.hpp"

namespace pdgeom {

// Non-negative-curvature comparison data for one triple: with m the midpoint
// of the 2-norm geodesic from sigma2 to sigma3,
//   lhs  = d(sigma1, m)^2
//   rhs  = d(sigma1, sigma2)^2 / 2 + d(sigma1, sigma3)^2 / 2
//          - d(sigma2, sigma3)^2 / 4
// and slack = lhs - rhs is non-negative in a non-negatively curved space.
struct QuadrilateralReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

inline QuadrilateralReport quadrilateral_check(const Diagram& s1, const Diagram& s2,
                                               const Diagram& s3) {
  const Exponent p(2.0);
  const Diagram mid = geodesic(s2, s3, p).at(0.5);
  const double d1m = distance(s1, mid, p);
  const double d12 = distance(s1, s2, p);
  const double d13 = distance(s1, s3, p);
  const double d23 = distance(s2, s3, p);
  QuadrilateralReport rep;
  rep.lhs = d1m * d1m;
  rep.rhs = 0.5 * d12 * d12 + 0.5 * d13 * d13 - 0.25 * d23 * d23;
  rep.slack = rep.lhs - rep.rhs;
  return rep;
}

// Euclidean comparison angle at the empty diagram between two nonempty
// diagrams, from the 2-norm side lengths. Always within [0, pi/2] here.
inline double comparison_angle_at_empty(const Diagram& a, const Diagram& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("comparison angle needs two nonempty diagrams");
  }
  const Exponent p(2.0);
  const double da = persistence_norm(a, p);
  const double db = persistence_norm(b, p);
  const double dab = distance(a, b, p);
  double c = (da * da + db * db - dab * dab) / (2.0 * da * db);
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c);
}

namespace detail {

// Max-weight partial assignment of dot products via subset DP; `vs` is
// capped so masks fit comfortably.
inline double best_partial_dot_sum(const std::vector<std::vector<double>>& us,
                                   const std::vector<std::vector<double>>& vs) {
  if (vs.size() > 16) throw std::invalid_argument("direction enumeration cap exceeded");
  const std::size_t masks = std::size_t{1} << vs.size();
  std::vector<double> dp(masks, -kInfiniteDistance);
  dp[0] = 0.0;
  for (const auto& u : us) {
    std::vector<double> next = dp;  // leaving u unmatched keeps dp as is
    for (std::size_t mask = 0; mask < masks; ++mask) {
      if (dp[mask] == -kInfiniteDistance) continue;
      for (std::size_t j = 0; j < vs.size(); ++j) {
        if (mask & (std::size_t{1} << j)) continue;
        double dot = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) dot += u[k] * vs[j][k];
        const std::size_t to = mask | (std::size_t{1} << j);
        next[to] = std::max(next[to], dp[mask] + dot);
      }
    }
    dp = std::move(next);
  }
  double best = 0.0;
  for (const double v : dp) best = std::max(best, v);
  return best;
}

}  // namespace detail

// Inner product of the two directions that a pair of diagrams span at the
// empty diagram: the best total dot product of radial vectors (point minus
// its subset projection) over partial bijections that pair points sharing a
// base point. The empty bijection gives 0, so the value is never negative.
// Euclidean-metric kinds only; exact by enumeration over each base group.
inline double direction_inner_product(const Diagram& a, const Diagram& b,
                                      double base_tol = 1e-9) {
  const MetricPair& pair = a.pair();
  if (pair != b.pair()) throw std::invalid_argument("diagrams over different pairs");
  if (!pair.is_euclidean_family() && pair.kind() != MetricPair::Kind::kRayOrigin) {
    throw std::invalid_argument("direction inner products need a Euclidean-metric pair");
  }

  struct Radial {
    Point base;
    std::vector<double> vec;
  };
  const auto radials = [&](const Diagram& d) {
    std::vector<Radial> out;
    for (const Point& x : d.points()) {
      const Point nb = pair.subset_nearest(x);
      std::vector<double> v(x.coords.size());
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = x.coords[k] - nb.coords[k];
      out.push_back({nb, std::move(v)});
    }
    return out;
  };
  const std::vector<Radial> ra = radials(a), rb = radials(b);

  // Group both sides by (approximately) equal base points.
  std::vector<Point> bases;
  const auto base_id = [&](const Point& q) {
    for (std::size_t g = 0; g < bases.size(); ++g) {
      if (pair.distance(bases[g], q) <= base_tol) return g;
    }
    bases.push_back(q);
    return bases.size() - 1;
  };
  std::vector<std::vector<std::vector<double>>> ga, gb;
  for (const Radial& r : ra) {
    const std::size_t g = base_id(r.base);
    if (g >= ga.size()) ga.resize(g + 1);
    if (g >= gb.size()) gb.resize(g + 1);
    ga[g].push_back(r.vec);
  }
  for (const Radial& r : rb) {
    const std::size_t g = base_id(r.base);
    if (g >= ga.size()) ga.resize(g + 1);
    if (g >= gb.size()) gb.resize(g + 1);
    gb[g].push_back(r.vec);
  }

  double total = 0.0;
  for (std::size_t g = 0; g < ga.size(); ++g) {
    if (ga[g].empty() || g >= gb.size() || gb[g].empty()) continue;
    total += ga[g].size() <= gb[g].size() ? detail::best_partial_dot_sum(gb[g], ga[g])
                                          : detail::best_partial_dot_sum(ga[g], gb[g]);
  }
  return total;
}

// Comparison angles at the empty diagram between the prefixes of a diagram
// (points ordered by decreasing persistence) and the full diagram. The
// sequence decreases toward 0 as the prefix absorbs the full mass.
inline std::vector<double> direction_density_angles(const Diagram& d, std::size_t max_prefix = 0) {
  if (d.empty()) throw std::invalid_argument("density probe needs a nonempty diagram");
  std::vector<std::size_t> order(d.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const double pi = d.persistence(i), pj = d.persistence(j);
    if (pi != pj) return pi > pj;
    return d.points()[i] < d.points()[j];
  });
  const std::size_t upto = max_prefix == 0 ? d.size() : std::min(max_prefix, d.size());
  std::vector<double> angles;
  std::vector<Point> prefix;
  for (std::size_t n = 0; n < upto; ++n) {
    prefix.push_back(d.points()[order[n]]);
    angles.push_back(comparison_angle_at_empty(Diagram(d.pair(), prefix), d));
  }
  return angles;
}

// Seeded random sweeps. Trial i draws from Rng(Rng::derive(seed, i)), so the
// outcome is independent of worker count and scheduling.
struct QuadrilateralSweep {
  std::size_t trials = 0;
  std::size_t failures = 0;
  double min_slack = kInfiniteDistance;
};

struct AngleSweep {
  std::size_t trials = 0;
  std::size_t failures = 0;
  double max_angle = 0.0;
};

namespace detail {

template <class Body>
inline void parallel_trials(std::size_t trials, unsigned workers, const Body& body) {
  if (workers <= 1 || trials < 2) {
    for (std::size_t t = 0; t < trials; ++t) body(t);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t t = w; t < trials; t += workers) body(t);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace detail

inline QuadrilateralSweep quadrilateral_sweep(const MetricPair& pair, std::size_t trials,
                                              std::uint64_t seed, unsigned workers = 1,
                                              std::size_t max_points = 4, double tol = 1e-9) {
  const unsigned lanes = std::max(1u, workers);
  std::vector<QuadrilateralSweep> partial(lanes);
  detail::parallel_trials(trials, lanes, [&](std::size_t t) {
    Rng rng(Rng::derive(seed, t));
    const Diagram s1 = random_diagram(pair, rng, max_points);
    const Diagram s2 = random_diagram(pair, rng, max_points);
    const Diagram s3 = random_diagram(pair, rng, max_points);
    const QuadrilateralReport rep = quadrilateral_check(s1, s2, s3);
    QuadrilateralSweep& lane = partial[t % lanes];
    ++lane.trials;
    lane.min_slack = std::min(lane.min_slack, rep.slack);
    if (rep.slack < -tol) ++lane.failures;
  });
  QuadrilateralSweep out;
  for (const QuadrilateralSweep& lane : partial) {
    out.trials += lane.trials;
    out.failures += lane.failures;
    out.min_slack = std::min(out.min_slack, lane.min_slack);
  }
  if (trials == 0) out.min_slack = 0.0;
  return out;
}

inline AngleSweep angle_sweep(const MetricPair& pair, std::size_t trials, std::uint64_t seed,
                              unsigned workers = 1, std::size_t max_points = 4,
                              double tol = 1e-9) {
  const unsigned lanes = std::max(1u, workers);
  std::vector<AngleSweep> partial(lanes);
  detail::parallel_trials(trials, lanes, [&](std::size_t t) {
    Rng rng(Rng::derive(seed, t));
    const Diagram a = random_nonempty_diagram(pair, rng, max_points);
    const Diagram b = random_nonempty_diagram(pair, rng, max_points);
    const double angle = comparison_angle_at_empty(a, b);
    AngleSweep& lane = partial[t % lanes];
    ++lane.trials;
    lane.max_angle = std::max(lane.max_angle, angle);
    if (angle > std::acos(0.0) + tol) ++lane.failures;  // acos(0) = pi/2
  });
  AngleSweep out;
  for (const AngleSweep& lane : partial) {
    out.trials += lane.trials;
    out.failures += lane.failures;
    out.max_angle = std::max(out.max_angle, lane.max_angle);
  }
  return out;
}

}  // namespace pdgeom
