#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exponent.hpp"
#include "metric_pair.hpp"
#include "point.hpp"
#include "rng.hpp"

namespace pdgeom {

// A persistence diagram: a finite multiset of off-subset points of a metric
// pair. Points lying on the reference subset are identified with it and
// normalized away on construction; the count of dropped points is kept so
// callers can surface the normalization.
class Diagram {
 public:
  explicit Diagram(MetricPair pair) : pair_(std::move(pair)) {}

  Diagram(MetricPair pair, std::vector<Point> points) : pair_(std::move(pair)) {
    points_.reserve(points.size());
    for (Point& p : points) {
      pair_.validate_point(p);
      if (pair_.subset_distance(p) <= 0.0) {
        ++dropped_;
        continue;
      }
      points_.push_back(std::move(p));
    }
  }

  const MetricPair& pair() const { return pair_; }
  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  std::size_t dropped_on_construction() const { return dropped_; }

  double persistence(std::size_t i) const { return pair_.subset_distance(points_[i]); }

  // Multiset sum.
  friend Diagram operator+(const Diagram& a, const Diagram& b) {
    if (a.pair_ != b.pair_) throw std::invalid_argument("diagram sum across different pairs");
    std::vector<Point> pts = a.points_;
    pts.insert(pts.end(), b.points_.begin(), b.points_.end());
    return Diagram(a.pair_, std::move(pts));
  }

  // Points sorted by the canonical order; used for serialization and
  // order-insensitive comparison.
  std::vector<Point> sorted_points() const {
    std::vector<Point> pts = points_;
    std::sort(pts.begin(), pts.end());
    return pts;
  }

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.pair_ == b.pair_ && a.sorted_points() == b.sorted_points();
  }

 private:
  MetricPair pair_;
  std::vector<Point> points_;
  std::size_t dropped_ = 0;
};

// (sum of persistences^p)^(1/p); the max persistence when p = inf; 0 for the
// empty diagram. Equals the distance to the empty diagram.
inline double persistence_norm(const Diagram& d, const Exponent& p) {
  if (d.empty()) return 0.0;
  if (p.is_inf()) {
    double m = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) m = std::max(m, d.persistence(i));
    return m;
  }
  std::vector<double> terms(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) terms[i] = p.power(d.persistence(i));
  std::sort(terms.begin(), terms.end(), std::greater<double>());
  double s = 0.0;
  for (const double t : terms) s += t;
  return p.root(s);
}

// Points with persistence >= alpha.
inline Diagram upper_part(const Diagram& d, double alpha) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.persistence(i) >= alpha) pts.push_back(d.points()[i]);
  }
  return Diagram(d.pair(), std::move(pts));
}

// Points with persistence < alpha.
inline Diagram lower_part(const Diagram& d, double alpha) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.persistence(i) < alpha) pts.push_back(d.points()[i]);
  }
  return Diagram(d.pair(), std::move(pts));
}

inline std::size_t multiplicity(const Diagram& d, const Point& x) {
  std::size_t count = 0;
  for (const Point& p : d.points()) {
    if (p == x) ++count;
  }
  return count;
}

// Boundedness/uniformity diagnostics of a finite family of diagrams over one
// pair. `offdiag_profile` maps a persistence threshold eps to the ambient
// diameter of the points at persistence >= eps across the family (0 when
// fewer than two such points); `uniformity_profile` maps delta to the largest
// p-norm of any member's sub-delta part.
struct FamilyDiagnostics {
  double bound = 0.0;
  std::vector<std::pair<double, double>> offdiag_profile;
  std::vector<std::pair<double, double>> uniformity_profile;
};

inline FamilyDiagnostics family_diagnostics(const std::vector<Diagram>& family, const Exponent& p,
                                            const std::vector<double>& eps_grid,
                                            const std::vector<double>& delta_grid) {
  if (family.empty()) throw std::invalid_argument("diagnostics of an empty family");
  const MetricPair& pair = family.front().pair();
  for (const Diagram& d : family) {
    if (d.pair() != pair) throw std::invalid_argument("family members use different pairs");
  }

  FamilyDiagnostics out;
  for (const Diagram& d : family) out.bound = std::max(out.bound, persistence_norm(d, p));

  for (const double eps : eps_grid) {
    std::vector<const Point*> pts;
    for (const Diagram& d : family) {
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (d.persistence(i) >= eps) pts.push_back(&d.points()[i]);
      }
    }
    double diam = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        diam = std::max(diam, pair.distance(*pts[i], *pts[j]));
      }
    }
    out.offdiag_profile.emplace_back(eps, diam);
  }

  for (const double delta : delta_grid) {
    double worst = 0.0;
    for (const Diagram& d : family) {
      worst = std::max(worst, persistence_norm(lower_part(d, delta), p));
    }
    out.uniformity_profile.emplace_back(delta, worst);
  }
  return out;
}

// A map of pairs f : (X, A) -> (Y, B), f(A) inside B. Continuous kinds use
// an affine map on coordinates (image = W x + b); finite kinds use an index
// table. The descriptor is enough for every map the toolkit needs (constant
// maps, coordinate embeddings, index bijections).
class RelativeMap {
 public:
  static RelativeMap affine(MetricPair source, MetricPair target,
                            std::vector<std::vector<double>> linear, std::vector<double> offset) {
    RelativeMap f(std::move(source), std::move(target));
    const std::size_t rows = f.target_.ambient_dim();
    const std::size_t cols = f.source_.ambient_dim();
    if (linear.size() != rows || offset.size() != rows) {
      throw std::invalid_argument("affine map rows must match the target dimension");
    }
    for (const auto& row : linear) {
      if (row.size() != cols) {
        throw std::invalid_argument("affine map columns must match the source dimension");
      }
    }
    f.linear_ = std::move(linear);
    f.offset_ = std::move(offset);
    f.affine_ = true;
    return f;
  }

  static RelativeMap index_table(MetricPair source, MetricPair target,
                                 std::vector<std::size_t> table) {
    RelativeMap f(std::move(source), std::move(target));
    if (f.source_.kind() != MetricPair::Kind::kFinite ||
        f.target_.kind() != MetricPair::Kind::kFinite) {
      throw std::invalid_argument("index tables map finite pairs to finite pairs");
    }
    if (table.size() != f.source_.ground_size()) {
      throw std::invalid_argument("index table must cover the source ground set");
    }
    for (const std::size_t t : table) {
      if (t >= f.target_.ground_size()) throw std::invalid_argument("table image out of range");
    }
    f.table_ = std::move(table);
    return f;
  }

  const MetricPair& source() const { return source_; }
  const MetricPair& target() const { return target_; }
  bool is_affine() const { return affine_; }
  const std::vector<std::vector<double>>& linear() const { return linear_; }
  const std::vector<double>& offset() const { return offset_; }
  const std::vector<std::size_t>& table() const { return table_; }

  Point apply(const Point& x) const {
    source_.validate_point(x);
    if (!affine_) return Point::of_index(table_[x.index]);
    std::vector<double> y(offset_);
    for (std::size_t r = 0; r < y.size(); ++r) {
      for (std::size_t c = 0; c < x.coords.size(); ++c) y[r] += linear_[r][c] * x.coords[c];
    }
    Point out = Point::of_coords(std::move(y));
    target_.validate_point(out);
    return out;
  }

  // Checks f(A) inside B on sampled subset points; throws on violation.
  void validate_subset_map(std::size_t samples, Rng& rng, double tol = 1e-9) const {
    for (const Point& a : source_.subset_sample(samples, rng)) {
      const double gap = target_.subset_distance(apply(a));
      if (gap > tol) {
        throw std::invalid_argument("map sends a subset point " + std::to_string(gap) +
                                    " away from the target subset");
      }
    }
  }

  // An upper bound for the metric Lipschitz constant. Affine maps between
  // Euclidean-metric kinds use the spectral norm (power iteration); a max
  // metric on either end contributes the standard norm-equivalence factor.
  // Index tables are bounded exhaustively.
  double lipschitz_upper_bound() const {
    if (!affine_) {
      const auto& DS = source_.matrix();
      const auto& DT = target_.matrix();
      double worst = 0.0;
      for (std::size_t i = 0; i < table_.size(); ++i) {
        for (std::size_t j = i + 1; j < table_.size(); ++j) {
          if (DS[i][j] == 0.0) {
            if (DT[table_[i]][table_[j]] > 0.0) return kInfiniteDistance;
            continue;
          }
          worst = std::max(worst, DT[table_[i]][table_[j]] / DS[i][j]);
        }
      }
      return worst;
    }
    const std::size_t rows = linear_.size();
    const std::size_t cols = rows == 0 ? 0 : linear_[0].size();
    std::vector<double> v(cols, 1.0 / std::sqrt(static_cast<double>(cols)));
    double norm = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      std::vector<double> wv(rows, 0.0);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) wv[r] += linear_[r][c] * v[c];
      }
      std::vector<double> wtwv(cols, 0.0);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) wtwv[c] += linear_[r][c] * wv[r];
      }
      double len = 0.0;
      for (const double x : wtwv) len += x * x;
      len = std::sqrt(len);
      if (len == 0.0) return 0.0;
      for (std::size_t c = 0; c < cols; ++c) v[c] = wtwv[c] / len;
      double num = 0.0;
      for (std::size_t r = 0; r < rows; ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < cols; ++c) row += linear_[r][c] * v[c];
        num += row * row;
      }
      norm = std::sqrt(num);
    }
    double factor = 1.0;
    if (source_.kind() == MetricPair::Kind::kLinfPlaneDelta) {
      factor *= std::sqrt(static_cast<double>(source_.ambient_dim()));
    }
    if (target_.kind() == MetricPair::Kind::kLinfPlaneDelta) {
      factor *= 1.0;  // |y|_inf <= |y|_2
    }
    return norm * factor;
  }

 private:
  RelativeMap(MetricPair s, MetricPair t) : source_(std::move(s)), target_(std::move(t)) {}

  MetricPair source_, target_;
  std::vector<std::vector<double>> linear_;
  std::vector<double> offset_;
  std::vector<std::size_t> table_;
  bool affine_ = false;
};

// Image multiset of a diagram under a map of pairs; points landing on the
// target subset disappear (the diagram constructor normalizes them away).
inline Diagram pushforward(const RelativeMap& f, const Diagram& d) {
  if (d.pair() != f.source()) throw std::invalid_argument("diagram is not over the map's source");
  std::vector<Point> pts;
  pts.reserve(d.size());
  for (const Point& x : d.points()) pts.push_back(f.apply(x));
  return Diagram(f.target(), std::move(pts));
}

// The isometric embedding of the ray pair into the n-fold diagonal pair,
// t -> (0,...,0, t,...,t)/sqrt(n). It fixes the subsets, halves no distances
// (it is an ambient isometry), and scales subset distances by 1/sqrt(2).
inline RelativeMap ray_to_delta_embedding(int n) {
  MetricPair source = MetricPair::ray_origin();
  MetricPair target = MetricPair::euclidean_delta(n);
  const std::size_t dim = target.ambient_dim();
  std::vector<std::vector<double>> W(dim, std::vector<double>(1, 0.0));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) W[static_cast<std::size_t>(n + i)][0] = scale;
  return RelativeMap::affine(std::move(source), std::move(target), std::move(W),
                             std::vector<double>(dim, 0.0));
}

}  // namespace pdgeom
