#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diagram.hpp"
#include "matching.hpp"
#include "metric_pair.hpp"

namespace pdgeom {

struct WeightedDiagram {
  Diagram diagram;
  double weight = 0.0;
};

// A finitely supported probability measure on diagrams over one pair.
class EmpiricalMeasure {
 public:
  explicit EmpiricalMeasure(std::vector<WeightedDiagram> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("a measure needs at least one atom");
    double total = 0.0;
    for (const WeightedDiagram& a : atoms_) {
      if (!(a.weight > 0.0)) throw std::invalid_argument("atom weights must be positive");
      if (a.diagram.pair() != atoms_.front().diagram.pair()) {
        throw std::invalid_argument("atoms live over different pairs");
      }
      total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw std::invalid_argument("atom weights must sum to 1");
    }
  }

  const std::vector<WeightedDiagram>& atoms() const { return atoms_; }
  const MetricPair& pair() const { return atoms_.front().diagram.pair(); }

  // Index of the atom with the most points (lowest index on ties); a cheap
  // mass-based initialization for the mean iteration. See best_atom() below
  // for the choice that guarantees the final value beats every atom.
  std::size_t largest_atom() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < atoms_.size(); ++i) {
      if (atoms_[i].diagram.size() > atoms_[best].diagram.size()) best = i;
    }
    return best;
  }

 private:
  std::vector<WeightedDiagram> atoms_;
};

// Weighted sum of squared p-distances from the candidate to the atoms.
inline double frechet_functional(const EmpiricalMeasure& mu, const Diagram& candidate,
                                 const Exponent& p = Exponent(2.0)) {
  double total = 0.0;
  for (const WeightedDiagram& a : mu.atoms()) {
    const double d = distance(candidate, a.diagram, p);
    total += a.weight * d * d;
  }
  return total;
}

// Index of the atom minimizing the functional (lowest index on ties).
// Starting the descent here makes its monotone trace begin at the min over
// atoms, so the final value is at most every atom's functional value.
// Descent from other inits (e.g. the largest atom) carries no such
// guarantee: it can converge to a local optimum above another atom.
inline std::size_t best_atom(const EmpiricalMeasure& mu, const Exponent& p = Exponent(2.0)) {
  std::size_t best = 0;
  double best_value = kInfiniteDistance;
  for (std::size_t i = 0; i < mu.atoms().size(); ++i) {
    const double value = frechet_functional(mu, mu.atoms()[i].diagram, p);
    if (value < best_value) {
      best = i;
      best_value = value;
    }
  }
  return best;
}

struct MeanResult {
  Diagram candidate;
  double functional = 0.0;
  std::vector<double> trace;
  bool converged = false;
  std::size_t iterations = 0;
};

// Alternating descent for the 2-norm Fréchet functional: re-match the
// candidate to every atom optimally, then replace each candidate point by
// the weighted ambient mean of its matched targets, where an atom matching
// the point to the subset contributes the point's current subset projection.
// Both half-steps are non-increasing (the projection target majorizes the
// subset distance), so the reported trace never increases; points whose
// update lands on the subset are deleted. Local search only - no global
// optimality claim.
inline MeanResult frechet_mean(const EmpiricalMeasure& mu, const Diagram& init,
                               std::size_t max_iters = 200, double tol = 1e-9) {
  const MetricPair& pair = mu.pair();
  if (!pair.supports_barycenters()) {
    throw std::invalid_argument("the mean iteration needs ambient barycenters (" +
                                pair.kind_name() + " has none)");
  }
  if (init.pair() != pair) throw std::invalid_argument("init diagram over a different pair");
  const Exponent p(2.0);

  MeanResult res{init, 0.0, {}, false, 0};
  res.trace.push_back(frechet_functional(mu, res.candidate, p));
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    // Optimal matchings candidate -> atom.
    std::vector<Matching> match;
    match.reserve(mu.atoms().size());
    for (const WeightedDiagram& a : mu.atoms()) {
      match.push_back(optimal_matching(res.candidate, a.diagram, p));
    }

    // Barycentric update per candidate point.
    std::vector<std::vector<std::pair<Point, double>>> targets(res.candidate.size());
    for (std::size_t ai = 0; ai < mu.atoms().size(); ++ai) {
      const double w = mu.atoms()[ai].weight;
      const Diagram& atom = mu.atoms()[ai].diagram;
      for (const auto& [k, j] : match[ai].pairs) targets[k].emplace_back(atom.points()[j], w);
      for (const std::size_t k : match[ai].sigma_to_A) {
        targets[k].emplace_back(pair.subset_nearest(res.candidate.points()[k]), w);
      }
    }
    std::vector<Point> updated;
    updated.reserve(res.candidate.size());
    for (std::size_t k = 0; k < res.candidate.size(); ++k) {
      updated.push_back(pair.barycenter(targets[k]));
    }

    Diagram next(pair, std::move(updated));  // on-subset updates vanish here
    const double value = frechet_functional(mu, next, p);
    if (value > res.trace.back()) {
      // Numerical floor: the exact iteration cannot increase the functional,
      // so treat a float-level uptick as convergence and keep the better state.
      res.converged = true;
      break;
    }
    res.candidate = std::move(next);
    res.trace.push_back(value);
    res.iterations = iter + 1;
    if (res.trace[res.trace.size() - 2] - value < tol) {
      res.converged = true;
      break;
    }
  }
  res.functional = res.trace.back();
  return res;
}

// Best functional value seen across the atoms and the descent candidate
// started from the best atom. An upper bound for the variance (the
// infimum of the functional), reported as a bound, not as the infimum.
inline double variance_upper_bound(const EmpiricalMeasure& mu, std::size_t max_iters = 200,
                                   double tol = 1e-9) {
  double best = kInfiniteDistance;
  for (const WeightedDiagram& a : mu.atoms()) {
    best = std::min(best, frechet_functional(mu, a.diagram));
  }
  if (mu.pair().supports_barycenters()) {
    const MeanResult res = frechet_mean(mu, mu.atoms()[best_atom(mu)].diagram, max_iters, tol);
    best = std::min(best, res.functional);
  }
  return best;
}

}  // namespace pdgeom
