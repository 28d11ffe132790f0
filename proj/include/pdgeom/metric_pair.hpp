#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exponent.hpp"
#include "point.hpp"
#include "rng.hpp"

namespace pdgeom {

// A metric pair (X, A): an ambient metric space together with a distinguished
// nonempty reference subset. Diagrams are multisets of points of X \ A, and
// every distance computation below reduces to the three primitives
// distance / subset_distance / subset_nearest.
//
// Supported kinds:
//   euclidean-delta           R^{2n} with the n-plane {(v,v)} as subset
//   euclidean-halfplane-delta the region x_i <= y_i inside R^{2n}, same subset
//   euclidean-quadrant-delta  the region 0 <= x_i <= y_i, same subset
//   ray-origin                [0, inf) with subset {0}
//   linf-plane-delta          R^2 under the max metric, subset {(v,v)}
//   finite                    explicit distance matrix with index subset
//   disjoint-union            two pairs glued at infinite mutual distance
class MetricPair {
 public:
  enum class Kind {
    kEuclideanDelta,
    kEuclideanHalfplaneDelta,
    kEuclideanQuadrantDelta,
    kRayOrigin,
    kLinfPlaneDelta,
    kFinite,
    kDisjointUnion,
  };

  static MetricPair euclidean_delta(int n) { return euclidean(Kind::kEuclideanDelta, n); }
  static MetricPair euclidean_halfplane_delta(int n) {
    return euclidean(Kind::kEuclideanHalfplaneDelta, n);
  }
  static MetricPair euclidean_quadrant_delta(int n) {
    return euclidean(Kind::kEuclideanQuadrantDelta, n);
  }

  static MetricPair ray_origin() {
    MetricPair p;
    p.kind_ = Kind::kRayOrigin;
    return p;
  }

  static MetricPair linf_plane_delta() {
    MetricPair p;
    p.kind_ = Kind::kLinfPlaneDelta;
    return p;
  }

  static MetricPair finite(std::vector<std::vector<double>> D, std::vector<std::size_t> A) {
    MetricPair p;
    p.kind_ = Kind::kFinite;
    p.D_ = std::move(D);
    p.A_ = std::move(A);
    p.validate_finite();
    return p;
  }

  static MetricPair disjoint_union(MetricPair left, MetricPair right, Exponent p) {
    MetricPair u;
    u.kind_ = Kind::kDisjointUnion;
    u.left_ = std::make_shared<MetricPair>(std::move(left));
    u.right_ = std::make_shared<MetricPair>(std::move(right));
    u.union_p_ = p;
    return u;
  }

  Kind kind() const { return kind_; }

  std::string kind_name() const {
    switch (kind_) {
      case Kind::kEuclideanDelta: return "euclidean-delta";
      case Kind::kEuclideanHalfplaneDelta: return "euclidean-halfplane-delta";
      case Kind::kEuclideanQuadrantDelta: return "euclidean-quadrant-delta";
      case Kind::kRayOrigin: return "ray-origin";
      case Kind::kLinfPlaneDelta: return "linf-plane-delta";
      case Kind::kFinite: return "finite";
      case Kind::kDisjointUnion: return "disjoint-union";
    }
    return "?";
  }

  // Half-dimension n of the euclidean-* kinds.
  int half_dim() const { return n_; }

  // Expected coords length for continuous kinds.
  std::size_t ambient_dim() const {
    switch (kind_) {
      case Kind::kEuclideanDelta:
      case Kind::kEuclideanHalfplaneDelta:
      case Kind::kEuclideanQuadrantDelta: return static_cast<std::size_t>(2 * n_);
      case Kind::kRayOrigin: return 1;
      case Kind::kLinfPlaneDelta: return 2;
      default: throw std::invalid_argument(kind_name() + " has no ambient coordinates");
    }
  }

  std::size_t ground_size() const {
    require_kind(Kind::kFinite, "ground_size");
    return D_.size();
  }
  const std::vector<std::vector<double>>& matrix() const {
    require_kind(Kind::kFinite, "matrix");
    return D_;
  }
  const std::vector<std::size_t>& subset_indices() const {
    require_kind(Kind::kFinite, "subset_indices");
    return A_;
  }

  const MetricPair& left() const {
    require_kind(Kind::kDisjointUnion, "left");
    return *left_;
  }
  const MetricPair& right() const {
    require_kind(Kind::kDisjointUnion, "right");
    return *right_;
  }
  const Exponent& union_exponent() const {
    require_kind(Kind::kDisjointUnion, "union_exponent");
    return union_p_;
  }

  bool is_euclidean_family() const {
    return kind_ == Kind::kEuclideanDelta || kind_ == Kind::kEuclideanHalfplaneDelta ||
           kind_ == Kind::kEuclideanQuadrantDelta;
  }

  // Throws std::invalid_argument when the point does not belong to X.
  void validate_point(const Point& x) const {
    if (kind_ == Kind::kDisjointUnion) {
      if (x.sides.empty() || (x.sides.front() != 0 && x.sides.front() != 1)) {
        throw std::invalid_argument("disjoint-union point needs a component tag 0 or 1");
      }
      (x.sides.front() == 0 ? *left_ : *right_).validate_point(x.peeled());
      return;
    }
    if (!x.sides.empty()) {
      throw std::invalid_argument("component tag on a point of a non-union pair");
    }
    if (kind_ == Kind::kFinite) {
      if (!x.uses_index) throw std::invalid_argument("finite pairs use index points");
      if (x.index >= D_.size()) throw std::invalid_argument("point index out of range");
      return;
    }
    if (x.uses_index) throw std::invalid_argument(kind_name() + " uses coordinate points");
    if (x.coords.size() != ambient_dim()) {
      throw std::invalid_argument("point has " + std::to_string(x.coords.size()) +
                                  " coordinates, expected " + std::to_string(ambient_dim()));
    }
    const double slack = 1e-12;
    switch (kind_) {
      case Kind::kEuclideanQuadrantDelta:
        for (int i = 0; i < n_; ++i) {
          if (x.coords[static_cast<std::size_t>(i)] < -slack) {
            throw std::invalid_argument("quadrant point has a negative birth coordinate");
          }
        }
        [[fallthrough]];
      case Kind::kEuclideanHalfplaneDelta:
        for (int i = 0; i < n_; ++i) {
          const double b = x.coords[static_cast<std::size_t>(i)];
          const double d = x.coords[static_cast<std::size_t>(n_ + i)];
          if (b > d + slack * (1.0 + std::abs(d))) {
            throw std::invalid_argument("point violates birth <= death");
          }
        }
        break;
      case Kind::kRayOrigin:
        if (x.coords[0] < -slack) throw std::invalid_argument("ray point must be >= 0");
        break;
      default: break;
    }
  }

  double distance(const Point& x, const Point& y) const {
    switch (kind_) {
      case Kind::kEuclideanDelta:
      case Kind::kEuclideanHalfplaneDelta:
      case Kind::kEuclideanQuadrantDelta: {
        double s = 0.0;
        for (std::size_t i = 0; i < x.coords.size(); ++i) {
          const double d = x.coords[i] - y.coords[i];
          s += d * d;
        }
        return std::sqrt(s);
      }
      case Kind::kRayOrigin: return std::abs(x.coords[0] - y.coords[0]);
      case Kind::kLinfPlaneDelta:
        return std::max(std::abs(x.coords[0] - y.coords[0]), std::abs(x.coords[1] - y.coords[1]));
      case Kind::kFinite: return D_[x.index][y.index];
      case Kind::kDisjointUnion:
        if (x.sides.front() != y.sides.front()) return kInfiniteDistance;
        return (x.sides.front() == 0 ? *left_ : *right_).distance(x.peeled(), y.peeled());
    }
    return 0.0;
  }

  // Distance from x to the reference subset (the persistence of x).
  double subset_distance(const Point& x) const {
    switch (kind_) {
      case Kind::kEuclideanDelta:
      case Kind::kEuclideanHalfplaneDelta:
      case Kind::kEuclideanQuadrantDelta: {
        double s = 0.0;
        for (int i = 0; i < n_; ++i) {
          const double d = x.coords[static_cast<std::size_t>(i)] -
                           x.coords[static_cast<std::size_t>(n_ + i)];
          s += d * d;
        }
        return std::sqrt(s / 2.0);
      }
      case Kind::kRayOrigin: return std::abs(x.coords[0]);
      case Kind::kLinfPlaneDelta: return std::abs(x.coords[1] - x.coords[0]) / 2.0;
      case Kind::kFinite: {
        double best = kInfiniteDistance;
        for (const std::size_t a : A_) best = std::min(best, D_[x.index][a]);
        return best;
      }
      case Kind::kDisjointUnion:
        return (x.sides.front() == 0 ? *left_ : *right_).subset_distance(x.peeled());
    }
    return 0.0;
  }

  // A nearest subset point. Continuous kinds project onto the diagonal
  // (midpoint rule, also the canonical choice for the max metric); finite
  // kinds take the lowest-index minimizer.
  Point subset_nearest(const Point& x) const {
    switch (kind_) {
      case Kind::kEuclideanDelta:
      case Kind::kEuclideanHalfplaneDelta:
      case Kind::kEuclideanQuadrantDelta: {
        std::vector<double> c(x.coords.size());
        for (int i = 0; i < n_; ++i) {
          const double m = 0.5 * (x.coords[static_cast<std::size_t>(i)] +
                                  x.coords[static_cast<std::size_t>(n_ + i)]);
          c[static_cast<std::size_t>(i)] = m;
          c[static_cast<std::size_t>(n_ + i)] = m;
        }
        return Point::of_coords(std::move(c));
      }
      case Kind::kRayOrigin: return Point::of_coords({0.0});
      case Kind::kLinfPlaneDelta: {
        const double m = 0.5 * (x.coords[0] + x.coords[1]);
        return Point::of_coords({m, m});
      }
      case Kind::kFinite: {
        std::size_t arg = A_.front();
        double best = D_[x.index][arg];
        for (const std::size_t a : A_) {
          if (D_[x.index][a] < best) {
            best = D_[x.index][a];
            arg = a;
          }
        }
        return Point::of_index(arg);
      }
      case Kind::kDisjointUnion: {
        const int side = x.sides.front();
        return (side == 0 ? *left_ : *right_).subset_nearest(x.peeled()).in_component(side);
      }
    }
    return x;
  }

  // Continuous kinds are geodesic via straight segments (for the max metric
  // the straight segment is one geodesic among many and is the canonical
  // choice here). Finite pairs expose no geodesic structure.
  bool supports_geodesics() const {
    switch (kind_) {
      case Kind::kFinite: return false;
      case Kind::kDisjointUnion: return left_->supports_geodesics() && right_->supports_geodesics();
      default: return true;
    }
  }

  Point geodesic_point(const Point& x, const Point& y, double t) const {
    if (kind_ == Kind::kDisjointUnion) {
      if (x.sides.front() != y.sides.front()) {
        throw std::invalid_argument("no geodesic between distinct components");
      }
      const int side = x.sides.front();
      return (side == 0 ? *left_ : *right_)
          .geodesic_point(x.peeled(), y.peeled(), t)
          .in_component(side);
    }
    if (!supports_geodesics()) {
      throw std::invalid_argument(kind_name() + " has no geodesic structure");
    }
    std::vector<double> c(x.coords.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] = (1.0 - t) * x.coords[i] + t * y.coords[i];
    }
    return Point::of_coords(std::move(c));
  }

  // Weighted coordinate means exist exactly when the ambient metric is the
  // Euclidean one on a convex region.
  bool supports_barycenters() const {
    return is_euclidean_family() || kind_ == Kind::kRayOrigin;
  }

  Point barycenter(const std::vector<std::pair<Point, double>>& weighted) const {
    if (!supports_barycenters()) {
      throw std::invalid_argument(kind_name() + " has no barycenter oracle");
    }
    if (weighted.empty()) throw std::invalid_argument("barycenter of an empty family");
    double total = 0.0;
    std::vector<double> c(ambient_dim(), 0.0);
    for (const auto& [pt, w] : weighted) {
      if (w < 0.0) throw std::invalid_argument("negative barycenter weight");
      total += w;
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += w * pt.coords[i];
    }
    if (total <= 0.0) throw std::invalid_argument("barycenter weights sum to zero");
    for (double& v : c) v /= total;
    return Point::of_coords(std::move(c));
  }

  // Sample points of the reference subset (used to check that maps of pairs
  // respect the subsets). Finite kinds return the whole subset.
  std::vector<Point> subset_sample(std::size_t count, Rng& rng) const {
    std::vector<Point> out;
    switch (kind_) {
      case Kind::kEuclideanDelta:
      case Kind::kEuclideanHalfplaneDelta:
      case Kind::kEuclideanQuadrantDelta: {
        for (std::size_t k = 0; k < count; ++k) {
          std::vector<double> c(ambient_dim());
          for (int i = 0; i < n_; ++i) {
            const double v = kind_ == Kind::kEuclideanDelta ? rng.uniform(-10.0, 10.0)
                                                            : rng.uniform(0.0, 10.0);
            c[static_cast<std::size_t>(i)] = v;
            c[static_cast<std::size_t>(n_ + i)] = v;
          }
          out.push_back(Point::of_coords(std::move(c)));
        }
        return out;
      }
      case Kind::kRayOrigin: out.push_back(Point::of_coords({0.0})); return out;
      case Kind::kLinfPlaneDelta: {
        for (std::size_t k = 0; k < count; ++k) {
          const double v = rng.uniform(-10.0, 10.0);
          out.push_back(Point::of_coords({v, v}));
        }
        return out;
      }
      case Kind::kFinite: {
        for (const std::size_t a : A_) out.push_back(Point::of_index(a));
        return out;
      }
      case Kind::kDisjointUnion: {
        const std::size_t half = count / 2 + 1;
        for (const Point& p : left_->subset_sample(half, rng)) out.push_back(p.in_component(0));
        for (const Point& p : right_->subset_sample(half, rng)) out.push_back(p.in_component(1));
        return out;
      }
    }
    return out;
  }

  friend bool operator==(const MetricPair& a, const MetricPair& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
      case Kind::kFinite: return a.D_ == b.D_ && a.A_ == b.A_;
      case Kind::kDisjointUnion:
        return a.union_p_ == b.union_p_ && *a.left_ == *b.left_ && *a.right_ == *b.right_;
      default: return a.n_ == b.n_;
    }
  }
  friend bool operator!=(const MetricPair& a, const MetricPair& b) { return !(a == b); }

 private:
  MetricPair() : union_p_(2.0) {}

  static MetricPair euclidean(Kind kind, int n) {
    if (n < 1) throw std::invalid_argument("half-dimension must be >= 1");
    MetricPair p;
    p.kind_ = kind;
    p.n_ = n;
    return p;
  }

  void require_kind(Kind k, const char* what) const {
    if (kind_ != k) {
      throw std::invalid_argument(std::string(what) + " is not defined for " + kind_name());
    }
  }

  void validate_finite() const {
    const std::size_t n = D_.size();
    if (n == 0) throw std::invalid_argument("finite pair needs at least one point");
    for (const auto& row : D_) {
      if (row.size() != n) throw std::invalid_argument("distance matrix must be square");
    }
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (D_[i][i] != 0.0) throw std::invalid_argument("distance matrix diagonal must be zero");
      for (std::size_t j = 0; j < n; ++j) {
        if (!(D_[i][j] >= 0.0)) throw std::invalid_argument("distances must be non-negative");
        if (D_[i][j] != D_[j][i]) throw std::invalid_argument("distance matrix must be symmetric");
        scale = std::max(scale, D_[i][j]);
      }
    }
    const double slack = 1e-9 * (1.0 + scale);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          if (D_[i][k] > D_[i][j] + D_[j][k] + slack) {
            throw std::invalid_argument("distance matrix violates the triangle inequality");
          }
        }
      }
    }
    if (A_.empty()) throw std::invalid_argument("reference subset must be nonempty");
    for (const std::size_t a : A_) {
      if (a >= n) throw std::invalid_argument("subset index out of range");
    }
    for (std::size_t i = 1; i < A_.size(); ++i) {
      if (A_[i] <= A_[i - 1]) {
        throw std::invalid_argument("subset indices must be strictly increasing");
      }
    }
  }

  Kind kind_ = Kind::kEuclideanDelta;
  int n_ = 1;
  std::vector<std::vector<double>> D_;
  std::vector<std::size_t> A_;
  std::shared_ptr<const MetricPair> left_, right_;
  Exponent union_p_;
};

// The quotient X/A with the subset collapsed to a basepoint. Distances pass
// either directly or through the collapsed subset, whichever is shorter.
class QuotientSpace {
 public:
  explicit QuotientSpace(MetricPair base) : base_(std::move(base)) {}

  const MetricPair& base() const { return base_; }

  double distance(const Point& x, const Point& y) const {
    return std::min(base_.distance(x, y),
                    base_.subset_distance(x) + base_.subset_distance(y));
  }

  double distance_to_basepoint(const Point& x) const { return base_.subset_distance(x); }

  struct Materialized {
    MetricPair pair;                      // finite pair on class representatives
    std::vector<std::size_t> rep_of_old;  // old ground index -> representative row
    std::size_t basepoint = 0;            // row of the collapsed subset
  };

  // Finite bases only: the quotient as an explicit finite pair whose last
  // row is the collapsed basepoint.
  Materialized materialize() const {
    if (base_.kind() != MetricPair::Kind::kFinite) {
      throw std::invalid_argument("materialize() needs a finite base pair");
    }
    const std::size_t n = base_.ground_size();
    std::vector<bool> in_subset(n, false);
    for (const std::size_t a : base_.subset_indices()) in_subset[a] = true;

    std::vector<std::size_t> reps;
    std::vector<std::size_t> rep_of_old(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_subset[i]) {
        rep_of_old[i] = reps.size();
        reps.push_back(i);
      }
    }
    const std::size_t basepoint = reps.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (in_subset[i]) rep_of_old[i] = basepoint;
    }

    const std::size_t m = reps.size() + 1;
    std::vector<std::vector<double>> Q(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < reps.size(); ++i) {
      for (std::size_t j = 0; j < reps.size(); ++j) {
        if (i != j) Q[i][j] = distance(Point::of_index(reps[i]), Point::of_index(reps[j]));
      }
      Q[i][basepoint] = Q[basepoint][i] = distance_to_basepoint(Point::of_index(reps[i]));
    }
    return Materialized{MetricPair::finite(std::move(Q), {basepoint}), std::move(rep_of_old),
                        basepoint};
  }

 private:
  MetricPair base_;
};

}  // namespace pdgeom
