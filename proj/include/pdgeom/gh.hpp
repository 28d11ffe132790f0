#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diagram.hpp"
#include "exponent.hpp"
#include "matching.hpp"
#include "metric_pair.hpp"
#include "point.hpp"
#include "rng.hpp"

namespace pdgeom {

// An eps-approximation of metric pairs, carried as the sampled graph of a
// map f : (X, A) -> (Y, B) restricted to the closed R-neighborhood of A.
// Optionally a closed-form descriptor extends f beyond the sample.
struct PairApproximation {
  MetricPair source;
  MetricPair target;
  std::vector<Point> domain;  // sample points of X, all within R of A
  std::vector<Point> image;   // f(domain), parallel to `domain`
  std::optional<RelativeMap> closed_form;
  double eps = 0.0;
  double R = 0.0;
};

inline void validate_pair_approximation(const PairApproximation& apx) {
  if (apx.domain.size() != apx.image.size()) {
    throw std::invalid_argument("map sample needs one image per domain point");
  }
  if (!(apx.eps >= 0.0)) throw std::invalid_argument("eps must be non-negative");
  if (!(apx.R > 0.0)) throw std::invalid_argument("R must be positive");
  for (const Point& x : apx.domain) {
    apx.source.validate_point(x);
    if (apx.source.subset_distance(x) > apx.R + 1e-9) {
      throw std::invalid_argument("map domain leaves the R-neighborhood of the subset");
    }
  }
  for (const Point& y : apx.image) apx.target.validate_point(y);
  if (apx.closed_form) {
    if (apx.closed_form->source() != apx.source || apx.closed_form->target() != apx.target) {
      throw std::invalid_argument("closed form maps different pairs");
    }
  }
}

// f(x) for a sampled point (exact representation match), falling back to the
// closed form when present.
inline Point apply_approximation(const PairApproximation& apx, const Point& x) {
  for (std::size_t k = 0; k < apx.domain.size(); ++k) {
    if (apx.domain[k] == x) return apx.image[k];
  }
  if (apx.closed_form) return apx.closed_form->apply(x);
  throw std::invalid_argument("point outside the sampled map domain");
}

// The three approximation conditions measured on samples: metric distortion
// over domain pairs, Hausdorff gap between the image of the source subset
// sample and the target subset sample, and eps-coverage of the target
// R-neighborhood sample by image points. pass() compares against eps.
struct ApproxReport {
  double eps = 0.0;
  double max_distortion = 0.0;
  double hausdorff_gap = 0.0;
  double coverage_slack = 0.0;
  bool pass_distortion = false;
  bool pass_hausdorff = false;
  bool pass_coverage = false;
  bool pass() const { return pass_distortion && pass_hausdorff && pass_coverage; }
};

inline ApproxReport verify_pair_approximation(const PairApproximation& apx,
                                              const std::vector<Point>& target_sample,
                                              double tol = 1e-12) {
  validate_pair_approximation(apx);

  // Subset samples: finite kinds contribute their whole subset, continuous
  // kinds whatever subset points the samples contain.
  std::vector<Point> source_subset;
  if (apx.source.kind() == MetricPair::Kind::kFinite) {
    for (const std::size_t a : apx.source.subset_indices()) {
      source_subset.push_back(Point::of_index(a));
    }
  } else {
    for (const Point& x : apx.domain) {
      if (apx.source.subset_distance(x) <= tol) source_subset.push_back(x);
    }
  }
  if (source_subset.empty()) {
    throw std::invalid_argument("map sample contains no source subset points");
  }
  std::vector<Point> target_subset;
  if (apx.target.kind() == MetricPair::Kind::kFinite) {
    for (const std::size_t a : apx.target.subset_indices()) {
      target_subset.push_back(Point::of_index(a));
    }
  } else {
    for (const Point& y : target_sample) {
      if (apx.target.subset_distance(y) <= tol) target_subset.push_back(y);
    }
  }
  if (target_subset.empty()) {
    throw std::invalid_argument("target sample contains no subset points");
  }

  ApproxReport rep;
  rep.eps = apx.eps;

  for (std::size_t i = 0; i < apx.domain.size(); ++i) {
    for (std::size_t j = i + 1; j < apx.domain.size(); ++j) {
      const double ds = apx.source.distance(apx.domain[i], apx.domain[j]);
      const double dt = apx.target.distance(apx.image[i], apx.image[j]);
      if (std::isinf(ds) && std::isinf(dt)) continue;
      const double gap = std::isinf(ds) || std::isinf(dt) ? kInfiniteDistance : std::abs(ds - dt);
      rep.max_distortion = std::max(rep.max_distortion, gap);
    }
  }

  const auto one_sided = [&](const std::vector<Point>& from, const std::vector<Point>& to,
                             const MetricPair& pair) {
    double worst = 0.0;
    for (const Point& f : from) {
      double best = kInfiniteDistance;
      for (const Point& t : to) best = std::min(best, pair.distance(f, t));
      worst = std::max(worst, best);
    }
    return worst;
  };
  std::vector<Point> mapped_subset;
  mapped_subset.reserve(source_subset.size());
  for (const Point& a : source_subset) mapped_subset.push_back(apply_approximation(apx, a));
  rep.hausdorff_gap = std::max(one_sided(mapped_subset, target_subset, apx.target),
                               one_sided(target_subset, mapped_subset, apx.target));

  for (const Point& t : target_sample) {
    apx.target.validate_point(t);
    if (apx.target.subset_distance(t) > apx.R + tol) continue;
    double best = kInfiniteDistance;
    for (const Point& y : apx.image) best = std::min(best, apx.target.distance(t, y));
    rep.coverage_slack = std::max(rep.coverage_slack, best);
  }

  rep.pass_distortion = rep.max_distortion <= apx.eps + tol;
  rep.pass_hausdorff = rep.hausdorff_gap <= apx.eps + tol;
  rep.pass_coverage = rep.coverage_slack <= apx.eps + tol;
  return rep;
}

// Finite targets verify against their whole ground set.
inline ApproxReport verify_pair_approximation(const PairApproximation& apx, double tol = 1e-12) {
  if (apx.target.kind() != MetricPair::Kind::kFinite) {
    throw std::invalid_argument("continuous targets need an explicit sample");
  }
  std::vector<Point> sample;
  for (std::size_t i = 0; i < apx.target.ground_size(); ++i) sample.push_back(Point::of_index(i));
  return verify_pair_approximation(apx, sample, tol);
}

// Pushforward of a diagram along the approximation; images on the target
// subset vanish. Every diagram point must be covered by the sample or the
// closed form.
inline Diagram induced_diagram_map(const PairApproximation& apx, const Diagram& d) {
  if (d.pair() != apx.source) throw std::invalid_argument("diagram is not over the map source");
  std::vector<Point> pts;
  pts.reserve(d.size());
  for (const Point& x : d.points()) pts.push_back(apply_approximation(apx, x));
  return Diagram(apx.target, std::move(pts));
}

// Random diagram pairs drawn from the sampled domain, their p-distance
// before and after the induced map, and the worst absolute change. For the
// max norm the change is bounded by 3 eps; `failures` counts violations of
// that bound (checked only when p = inf; finite p records the sup, which the
// divergence family below shows is unbounded).
struct DistortionSweep {
  std::size_t trials = 0;
  std::size_t failures = 0;
  double max_distortion = 0.0;
  double bound = 0.0;  // 3 eps
};

inline DistortionSweep diagram_distortion_sweep(const PairApproximation& apx, const Exponent& p,
                                                std::size_t trials, std::uint64_t seed,
                                                std::size_t max_points = 4, double tol = 1e-9) {
  validate_pair_approximation(apx);
  if (apx.domain.empty()) throw std::invalid_argument("sweep needs a nonempty map sample");
  DistortionSweep out;
  out.bound = 3.0 * apx.eps;
  const auto draw = [&](Rng& rng) {
    std::vector<Point> pts;
    const std::size_t count = rng.uniform_index(max_points + 1);
    for (std::size_t k = 0; k < count; ++k) {
      pts.push_back(apx.domain[rng.uniform_index(apx.domain.size())]);
    }
    Diagram d(apx.source, std::move(pts));
    if (!p.is_inf()) {
      // Stay inside the R-ball of the empty diagram by trimming points.
      while (!d.empty() && persistence_norm(d, p) > apx.R) {
        std::vector<Point> fewer(d.points().begin(), d.points().end() - 1);
        d = Diagram(apx.source, std::move(fewer));
      }
    }
    return d;
  };
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, t));
    const Diagram a = draw(rng);
    const Diagram b = draw(rng);
    const double before = distance(a, b, p);
    const double after = distance(induced_diagram_map(apx, a), induced_diagram_map(apx, b), p);
    const double change = std::abs(before - after);
    ++out.trials;
    out.max_distortion = std::max(out.max_distortion, change);
    if (p.is_inf() && change > out.bound + tol) ++out.failures;
  }
  return out;
}

// A uniform grid on [lo, hi] as a finite pair whose subset is the single
// grid point at `subset_value` (which must land on the grid).
struct IntervalGrid {
  MetricPair pair;
  std::vector<double> values;
  std::size_t subset_index = 0;
};

inline IntervalGrid interval_grid_pair(double lo, double hi, std::size_t count,
                                       double subset_value) {
  if (count < 2 || !(hi > lo)) throw std::invalid_argument("need an increasing grid");
  std::vector<double> values(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) values[k] = lo + static_cast<double>(k) * step;
  std::size_t subset_index = count;
  for (std::size_t k = 0; k < count; ++k) {
    if (std::abs(values[k] - subset_value) <= 1e-12) {
      subset_index = k;
      values[k] = subset_value;
      break;
    }
  }
  if (subset_index == count) {
    throw std::invalid_argument("subset value does not land on the grid");
  }
  std::vector<std::vector<double>> D(count, std::vector<double>(count, 0.0));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) D[i][j] = std::abs(values[i] - values[j]);
  }
  IntervalGrid out{MetricPair::finite(std::move(D), {subset_index}), std::move(values),
                   subset_index};
  return out;
}

// The family that separates the max norm from every finite p: over the grid
// on [-1/denom, 1/denom] with subset {0}, the diagram holding `copies`
// copies of the endpoint 1/denom sits at p-distance copies^(1/p)/denom from
// the empty diagram, while its max distance stays at 1/denom. Collapsing the
// interval to a point (an approximation with eps of order 1/denom) sends
// every such diagram to the empty one, so no finite-p analogue of the
// max-norm stability bound can hold.
struct DivergencePoint {
  std::size_t copies = 0;
  double dist_p = 0.0;
  double dist_inf = 0.0;
};

inline std::vector<DivergencePoint> interval_divergence_family(
    std::size_t denom, const Exponent& p, const std::vector<std::size_t>& copy_counts,
    std::size_t grid_count = 5) {
  if (denom == 0) throw std::invalid_argument("denominator must be positive");
  const double r = 1.0 / static_cast<double>(denom);
  const IntervalGrid grid = interval_grid_pair(-r, r, grid_count, 0.0);
  const std::size_t endpoint = grid.values.size() - 1;
  const Diagram empty(grid.pair);
  std::vector<DivergencePoint> out;
  for (const std::size_t n : copy_counts) {
    std::vector<Point> pts(n, Point::of_index(endpoint));
    const Diagram sigma(grid.pair, std::move(pts));
    out.push_back({n, distance(sigma, empty, p), distance(sigma, empty, Exponent::infinity())});
  }
  return out;
}

// The map the approximation induces between the quotients (subset collapsed
// to a basepoint), verified at 5 eps. Finite pairs only; the sampled map
// must cover the whole source ground set.
struct QuotientApproximation {
  PairApproximation apx;
  ApproxReport report;
};

inline QuotientApproximation quotient_approximation(const PairApproximation& apx,
                                                    double tol = 1e-12) {
  validate_pair_approximation(apx);
  if (apx.source.kind() != MetricPair::Kind::kFinite ||
      apx.target.kind() != MetricPair::Kind::kFinite) {
    throw std::invalid_argument("quotient approximations are built for finite pairs");
  }
  const std::size_t ns = apx.source.ground_size();
  std::vector<std::size_t> table(ns, ns);
  for (std::size_t k = 0; k < apx.domain.size(); ++k) {
    table[apx.domain[k].index] = apx.image[k].index;
  }
  for (std::size_t i = 0; i < ns; ++i) {
    if (table[i] == ns) {
      throw std::invalid_argument("map sample must cover the whole source ground set");
    }
  }

  const QuotientSpace::Materialized qs = QuotientSpace(apx.source).materialize();
  const QuotientSpace::Materialized qt = QuotientSpace(apx.target).materialize();

  PairApproximation q{qs.pair, qt.pair, {}, {}, std::nullopt, 5.0 * apx.eps, apx.R};
  // Representative rows map through the original table; the collapsed
  // basepoint goes to the collapsed basepoint.
  std::vector<std::size_t> old_of_rep(qs.pair.ground_size(), ns);
  for (std::size_t old = 0; old < ns; ++old) {
    if (qs.rep_of_old[old] != qs.basepoint) old_of_rep[qs.rep_of_old[old]] = old;
  }
  for (std::size_t r = 0; r < qs.pair.ground_size(); ++r) {
    q.domain.push_back(Point::of_index(r));
    if (r == qs.basepoint) {
      q.image.push_back(Point::of_index(qt.basepoint));
    } else {
      q.image.push_back(Point::of_index(qt.rep_of_old[table[old_of_rep[r]]]));
    }
  }

  ApproxReport report = verify_pair_approximation(q, tol);
  return QuotientApproximation{std::move(q), report};
}

}  // namespace pdgeom
