// Acceptance harness: one PASS/FAIL line per criterion, exit code = number of
// failing criteria. Every randomized criterion draws trial i from the fixed
// seed's stream i, so reruns are bit-identical on any platform.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "pdgeom/pdgeom.hpp"

using namespace pdgeom;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("%s %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* pattern, ...) {
  va_list args;
  va_start(args, pattern);
  char buffer[512];
  std::vsnprintf(buffer, sizeof(buffer), pattern, args);
  va_end(args);
  return buffer;
}

// 1. The assignment matcher agrees with exhaustive enumeration.
void criterion_oracle() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<MetricPair> pairs = {MetricPair::euclidean_delta(1),
                                         MetricPair::ray_origin()};
  const std::vector<Exponent> exponents = {Exponent(1.0), Exponent(2.0), Exponent(3.0),
                                           Exponent::infinity()};
  double max_dev = 0.0;
  std::size_t checked = 0;
  for (std::size_t t = 0; t < 500; ++t) {
    Rng rng(Rng::derive(900101, t));
    const MetricPair& pair = pairs[t % pairs.size()];
    const Diagram a = random_diagram(pair, rng, 4);
    const Diagram b = random_diagram(pair, rng, 4);
    for (const Exponent& p : exponents) {
      const double fast = distance(a, b, p);
      const double slow = brute_force_distance(a, b, p);
      max_dev = std::max(max_dev, std::abs(fast - slow) / (1.0 + slow));
      ++checked;
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = max_dev <= 1e-9 && elapsed < 10.0;
  report(1, ok,
         fmt("matcher vs brute force: %zu distances, max relative deviation %.3e, %.2fs",
             checked, max_dev, elapsed));
}

// 2. Sorted closed form on the ray pair.
void criterion_sorted_formula() {
  const auto start = std::chrono::steady_clock::now();
  const MetricPair ray = MetricPair::ray_origin();
  double max_dev = 0.0;
  for (std::size_t t = 0; t < 200; ++t) {
    Rng rng(Rng::derive(900102, t));
    const Diagram a = random_diagram(ray, rng, 8);
    const Diagram b = random_diagram(ray, rng, 8);
    max_dev = std::max(max_dev,
                       std::abs(sorted_ray_distance(a, b) - distance(a, b, Exponent(2.0))));
  }
  const double elapsed = seconds_since(start);
  const bool ok = max_dev <= 1e-9 && elapsed < 5.0;
  report(2, ok, fmt("sorted ray formula: 200 pairs, max deviation %.3e, %.2fs", max_dev, elapsed));
}

// 3. Endpoint-copies family: finite-p distances diverge, max distance stays.
void criterion_divergence() {
  const std::vector<DivergencePoint> family =
      interval_divergence_family(10, Exponent(2.0), {1, 100, 10000});
  bool ok = family.size() == 3;
  double max_rel = 0.0;
  for (const DivergencePoint& pt : family) {
    const double expected = std::sqrt(static_cast<double>(pt.copies)) / 10.0;
    max_rel = std::max(max_rel, std::abs(pt.dist_p - expected) / expected);
    if (pt.dist_inf != 0.1) ok = false;
  }
  ok = ok && max_rel <= 1e-12;
  report(3, ok,
         fmt("divergence family: d_2 = sqrt(n)/10 (max relative error %.3e), d_inf = 1/10 for "
             "n in {1, 100, 10000}",
             max_rel));
}

// 4. Quadrilateral comparison inequality on random triples.
void criterion_quadrilateral() {
  const auto start = std::chrono::steady_clock::now();
  const QuadrilateralSweep sweep =
      quadrilateral_sweep(MetricPair::euclidean_delta(1), 1000, 900104, 4);
  const double elapsed = seconds_since(start);
  const bool ok =
      sweep.trials == 1000 && sweep.failures == 0 && sweep.min_slack >= -1e-9 && elapsed < 60.0;
  report(4, ok,
         fmt("quadrilateral slack: 1000 triples, min slack %.3e, %zu failures, %.2fs",
             sweep.min_slack, sweep.failures, elapsed));
}

// 5. Geodesic midpoints halve the distance.
void criterion_midpoint() {
  const MetricPair pair = MetricPair::euclidean_delta(1);
  double max_dev = 0.0;
  for (std::size_t t = 0; t < 200; ++t) {
    Rng rng(Rng::derive(900105, t));
    const Diagram a = random_diagram(pair, rng, 4);
    const Diagram b = random_diagram(pair, rng, 4);
    max_dev = std::max(max_dev, midpoint_check(a, b).max_half_deviation);
  }
  const bool ok = max_dev <= 1e-9;
  report(5, ok, fmt("midpoints: 200 pairs, max half deviation %.3e", max_dev));
}

// 6. Comparison angles at the empty diagram stay within a right angle.
void criterion_angles() {
  const AngleSweep sweep = angle_sweep(MetricPair::euclidean_delta(1), 500, 900106, 4);
  const double right = std::acos(0.0);
  const Diagram wa(MetricPair::euclidean_delta(1), {Point::of_coords({0.0, 2.0})});
  const Diagram wb(MetricPair::euclidean_delta(1), {Point::of_coords({2.0, 4.0})});
  const double witness = comparison_angle_at_empty(wa, wb);
  const bool ok = sweep.trials == 500 && sweep.failures == 0 &&
                  sweep.max_angle <= right + 1e-9 && std::abs(witness - right) <= 1e-9;
  report(6, ok,
         fmt("angles: 500 pairs, max %.12f <= pi/2, witness angle %.12f", sweep.max_angle,
             witness));
}

// 7. Verified approximations push forward: 3 eps for the max norm, 5 eps for
// the quotient map.
void criterion_gh() {
  bool ok = true;
  double worst_margin = 0.0;  // max over instances of (sweep max / bound)
  for (std::size_t inst = 0; inst < 5; ++inst) {
    Rng rng(Rng::derive(900107, inst));
    const std::size_t n = 6 + inst;  // 6..10 <= 12-point ground sets
    std::vector<std::vector<double>> pts(n, std::vector<double>(3));
    for (auto& p : pts) {
      for (double& v : p) v = rng.uniform(-3.0, 3.0);
    }
    std::vector<std::vector<double>> moved = pts;
    for (auto& p : moved) {
      for (double& v : p) v += rng.uniform(-0.05, 0.05);
    }
    const auto matrix_of = [](const std::vector<std::vector<double>>& q) {
      std::vector<std::vector<double>> D(q.size(), std::vector<double>(q.size(), 0.0));
      for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = 0; j < q.size(); ++j) {
          double s = 0.0;
          for (std::size_t k = 0; k < 3; ++k) s += (q[i][k] - q[j][k]) * (q[i][k] - q[j][k]);
          D[i][j] = std::sqrt(s);
        }
      }
      return D;
    };
    PairApproximation apx{MetricPair::finite(matrix_of(pts), {0, 1}),
                          MetricPair::finite(matrix_of(moved), {0, 1}),
                          {},
                          {},
                          std::nullopt,
                          0.0,
                          50.0};
    for (std::size_t i = 0; i < n; ++i) {
      apx.domain.push_back(Point::of_index(i));
      apx.image.push_back(Point::of_index(i));
    }
    PairApproximation probe = apx;
    probe.eps = 1e9;
    const ApproxReport wide = verify_pair_approximation(probe);
    apx.eps = std::max({wide.max_distortion, wide.hausdorff_gap, wide.coverage_slack});
    if (!verify_pair_approximation(apx).pass()) ok = false;

    const DistortionSweep sweep =
        diagram_distortion_sweep(apx, Exponent::infinity(), 100, Rng::derive(900108, inst));
    if (sweep.failures != 0) ok = false;
    if (sweep.bound > 0.0) {
      worst_margin = std::max(worst_margin, sweep.max_distortion / sweep.bound);
    }

    const QuotientApproximation quot = quotient_approximation(apx);
    if (!quot.report.pass()) ok = false;
  }
  report(7, ok,
         fmt("approximations: 5 verified instances, max-norm distortion <= 3 eps (worst ratio "
             "%.3f), quotients verify at 5 eps",
             worst_margin));
}

// 8. Fréchet mean descent at desk scale.
void criterion_frechet() {
  bool ok = true;
  std::size_t worst_iters = 0;
  for (std::size_t t = 0; t < 50; ++t) {
    Rng rng(Rng::derive(900109, t));
    const MetricPair pair = MetricPair::euclidean_delta(1);
    std::vector<WeightedDiagram> atoms;
    const std::size_t count = 2 + rng.uniform_index(3);
    for (std::size_t i = 0; i < count; ++i) {
      atoms.push_back({random_nonempty_diagram(pair, rng, 3), 0.0});
    }
    double total = 0.0;
    for (WeightedDiagram& a : atoms) {
      a.weight = rng.uniform(0.5, 1.5);
      total += a.weight;
    }
    for (WeightedDiagram& a : atoms) a.weight /= total;
    const EmpiricalMeasure mu(std::move(atoms));
    const MeanResult res = frechet_mean(mu, mu.atoms()[best_atom(mu)].diagram);
    if (!res.converged || res.iterations > 200) ok = false;
    for (std::size_t i = 1; i < res.trace.size(); ++i) {
      if (res.trace[i] > res.trace[i - 1]) ok = false;
    }
    for (const WeightedDiagram& a : mu.atoms()) {
      if (res.functional > frechet_functional(mu, a.diagram) + 1e-12) ok = false;
    }
    worst_iters = std::max(worst_iters, res.iterations);
  }

  const MetricPair plane = MetricPair::euclidean_delta(1);
  const EmpiricalMeasure two({{Diagram(plane, {Point::of_coords({0.0, 2.0})}), 0.5},
                              {Diagram(plane, {Point::of_coords({0.0, 4.0})}), 0.5}});
  const MeanResult res = frechet_mean(two, two.atoms()[best_atom(two)].diagram);
  const bool two_ok = res.candidate.size() == 1 &&
                      std::abs(res.candidate.points()[0].coords[0] - 0.0) <= 1e-9 &&
                      std::abs(res.candidate.points()[0].coords[1] - 3.0) <= 1e-9 &&
                      std::abs(res.functional - 1.0) <= 1e-9;
  ok = ok && two_ok;
  report(8, ok,
         fmt("means: 50 measures, monotone traces, worst convergence %zu iterations, "
             "two-singleton mean {(0,3)} with F = %.12f",
             worst_iters, res.functional));
}

// 9. Ray embedding distorts diagram distances within [1/sqrt(2), sqrt(2)].
void criterion_embedding() {
  const DimensionProbe probe = probe_dimension(5, 300, 900110, 2);
  const bool ok = probe.ratios_within_bounds(1e-9) && probe.sorted_formula_max_error <= 1e-9;
  report(9, ok,
         fmt("ray embedding: 300 pairs, ratio range [%.6f, %.6f] within [0.707107, 1.414214]",
             probe.ratio_min, probe.ratio_max));
}

// 10. The max-metric branching data: equal side lengths, two distinct
// midpoints, both on length-realizing paths.
void criterion_branching() {
  const MetricPair pair = MetricPair::linf_plane_delta();
  const Point x1 = Point::of_coords({0.0, 5.0});
  const Point x2 = Point::of_coords({0.0, 7.0});
  const Point x3 = Point::of_coords({2.0, 6.0});
  bool ok = pair.distance(x1, x2) == 2.0 && pair.distance(x1, x3) == 2.0 &&
            pair.distance(x2, x3) == 2.0;

  const Exponent inf = Exponent::infinity();
  const Diagram d1(pair, {x1}), d3(pair, {x3});
  const double total = distance(d1, d3, inf);
  const Diagram straight(pair, {Point::of_coords({1.0, 5.5})});
  const Diagram branch(pair, {Point::of_coords({1.0, 6.0})});
  ok = ok && !(straight == branch);
  for (const Diagram* mid : {&straight, &branch}) {
    const double first = distance(d1, *mid, inf);
    const double second = distance(*mid, d3, inf);
    if (std::abs(first + second - total) > 1e-12) ok = false;
    if (std::abs(first - second) > 1e-12) ok = false;
  }
  report(10, ok,
         fmt("branching: pairwise max-metric distances 2, two distinct midpoints both split "
             "d = %.1f evenly",
             total));
}

}  // namespace

int main() {
  criterion_oracle();
  criterion_sorted_formula();
  criterion_divergence();
  criterion_quadrilateral();
  criterion_midpoint();
  criterion_angles();
  criterion_gh();
  criterion_frechet();
  criterion_embedding();
  criterion_branching();
  return failures;
}
