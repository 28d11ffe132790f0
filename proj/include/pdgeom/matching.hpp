#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diagram.hpp"
#include "exponent.hpp"
#include "metric_pair.hpp"

namespace pdgeom {

// An augmented matching between two diagrams: explicit point pairs plus the
// points of either side matched to the reference subset. Every index of each
// diagram appears exactly once across `pairs` and its to-subset list.
struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> sigma_to_A;
  std::vector<std::size_t> tau_to_A;
  Exponent p = Exponent(2.0);
  double cost = 0.0;
};

namespace detail {

// Dense shortest-augmenting-path assignment solver, O(n^3). Row i receives
// the column returned in slot i. Infinite entries are clamped to a finite
// sentinel above any all-finite assignment total, so they are never chosen
// when a finite-cost perfect assignment exists.
inline std::vector<std::size_t> solve_assignment(std::vector<std::vector<double>> cost) {
  const std::size_t n = cost.size();
  if (n == 0) return {};
  double max_finite = 0.0;
  bool any_infinite = false;
  for (const auto& row : cost) {
    for (const double c : row) {
      if (std::isinf(c)) {
        any_infinite = true;
      } else {
        max_finite = std::max(max_finite, c);
      }
    }
  }
  if (any_infinite) {
    const double big = (max_finite + 1.0) * static_cast<double>(n + 1);
    for (auto& row : cost) {
      for (double& c : row) {
        if (std::isinf(c)) c = big;
      }
    }
  }

  // Potentials u, v with column 0 as the scratch root; `owner[j]` is the row
  // currently assigned to column j (1-based, 0 = free).
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> owner(n + 1, 0), prev(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    owner[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInfiniteDistance);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = owner[j0];
      double delta = kInfiniteDistance;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double reduced = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (reduced < minv[j]) {
          minv[j] = reduced;
          prev[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = prev[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> row_to_col(n, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    if (owner[j] != 0) row_to_col[owner[j] - 1] = j - 1;
  }
  return row_to_col;
}

// Hopcroft-Karp maximum bipartite matching.
class BipartiteMatcher {
 public:
  BipartiteMatcher(std::size_t left, std::size_t right)
      : adj_(left), match_left_(left, -1), match_right_(right, -1) {}

  void add_edge(std::size_t l, std::size_t r) { adj_[l].push_back(static_cast<int>(r)); }

  std::size_t max_matching() {
    std::size_t total = 0;
    while (bfs()) {
      for (std::size_t l = 0; l < adj_.size(); ++l) {
        if (match_left_[l] == -1 && dfs(static_cast<int>(l))) ++total;
      }
    }
    return total;
  }

  const std::vector<int>& left_match() const { return match_left_; }

 private:
  bool bfs() {
    std::queue<int> q;
    layer_.assign(adj_.size(), -1);
    for (std::size_t l = 0; l < adj_.size(); ++l) {
      if (match_left_[l] == -1) {
        layer_[l] = 0;
        q.push(static_cast<int>(l));
      }
    }
    bool reachable = false;
    while (!q.empty()) {
      const int l = q.front();
      q.pop();
      for (const int r : adj_[static_cast<std::size_t>(l)]) {
        const int next = match_right_[static_cast<std::size_t>(r)];
        if (next == -1) {
          reachable = true;
        } else if (layer_[static_cast<std::size_t>(next)] == -1) {
          layer_[static_cast<std::size_t>(next)] = layer_[static_cast<std::size_t>(l)] + 1;
          q.push(next);
        }
      }
    }
    return reachable;
  }

  bool dfs(int l) {
    for (const int r : adj_[static_cast<std::size_t>(l)]) {
      const int next = match_right_[static_cast<std::size_t>(r)];
      if (next == -1 ||
          (layer_[static_cast<std::size_t>(next)] == layer_[static_cast<std::size_t>(l)] + 1 &&
           dfs(next))) {
        match_left_[static_cast<std::size_t>(l)] = r;
        match_right_[static_cast<std::size_t>(r)] = l;
        return true;
      }
    }
    layer_[static_cast<std::size_t>(l)] = -1;
    return false;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> match_left_, match_right_;
  std::vector<int> layer_;
};

struct BlockCosts {
  std::vector<std::vector<double>> cross;  // d(x_i, y_j)
  std::vector<double> sigma_drop;          // d(x_i, A)
  std::vector<double> tau_drop;            // d(y_j, A)
};

inline BlockCosts block_distances(const Diagram& a, const Diagram& b) {
  BlockCosts bc;
  const std::size_t m = a.size(), n = b.size();
  bc.cross.assign(m, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bc.cross[i][j] = a.pair().distance(a.points()[i], b.points()[j]);
    }
  }
  bc.sigma_drop.resize(m);
  for (std::size_t i = 0; i < m; ++i) bc.sigma_drop[i] = a.persistence(i);
  bc.tau_drop.resize(n);
  for (std::size_t j = 0; j < n; ++j) bc.tau_drop[j] = b.persistence(j);
  return bc;
}

}  // namespace detail

// Recomputes a matching's cost directly from its parts, validating that the
// matching uses every point of both diagrams exactly once. Terms are summed
// in sorted order so equal multisets of terms give bit-identical totals.
inline double matching_cost(const Diagram& a, const Diagram& b, const Matching& m) {
  std::vector<char> used_a(a.size(), 0), used_b(b.size(), 0);
  const auto claim = [](std::vector<char>& used, std::size_t i, const char* side) {
    if (i >= used.size()) throw std::invalid_argument(std::string("matching index out of range on ") + side);
    if (used[i]) throw std::invalid_argument(std::string("matching reuses a point on ") + side);
    used[i] = 1;
  };
  std::vector<double> terms;
  terms.reserve(m.pairs.size() + m.sigma_to_A.size() + m.tau_to_A.size());
  for (const auto& [i, j] : m.pairs) {
    claim(used_a, i, "sigma");
    claim(used_b, j, "tau");
    terms.push_back(a.pair().distance(a.points()[i], b.points()[j]));
  }
  for (const std::size_t i : m.sigma_to_A) {
    claim(used_a, i, "sigma");
    terms.push_back(a.persistence(i));
  }
  for (const std::size_t j : m.tau_to_A) {
    claim(used_b, j, "tau");
    terms.push_back(b.persistence(j));
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!used_a[i]) throw std::invalid_argument("matching misses a sigma point");
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!used_b[j]) throw std::invalid_argument("matching misses a tau point");
  }

  if (m.p.is_inf()) {
    double worst = 0.0;
    for (const double t : terms) worst = std::max(worst, t);
    return worst;
  }
  for (double& t : terms) t = m.p.power(t);
  std::sort(terms.begin(), terms.end(), std::greater<double>());
  double s = 0.0;
  for (const double t : terms) s += t;
  return m.p.root(s);
}

// Optimal augmented matching between diagrams over one pair. Finite p runs
// the shortest-augmenting-path solver on the square block matrix of p-th
// power costs (cross block, to-subset blocks, zero subset-subset block);
// p = inf binary-searches the sorted candidate costs for the smallest
// feasible bottleneck, testing feasibility with Hopcroft-Karp.
inline Matching optimal_matching(const Diagram& a, const Diagram& b, const Exponent& p) {
  if (a.pair() != b.pair()) {
    throw std::invalid_argument("matching requires diagrams over the same pair");
  }
  const std::size_t m = a.size(), n = b.size();
  Matching out;
  out.p = p;

  // One side empty: everything goes to the subset.
  if (m == 0 || n == 0) {
    for (std::size_t i = 0; i < m; ++i) out.sigma_to_A.push_back(i);
    for (std::size_t j = 0; j < n; ++j) out.tau_to_A.push_back(j);
    out.cost = matching_cost(a, b, out);
    return out;
  }

  const detail::BlockCosts bc = detail::block_distances(a, b);
  const std::size_t N = m + n;

  if (!p.is_inf()) {
    std::vector<std::vector<double>> cost(N, std::vector<double>(N, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) cost[i][j] = p.power(bc.cross[i][j]);
      const double drop = p.power(bc.sigma_drop[i]);
      for (std::size_t k = n; k < N; ++k) cost[i][k] = drop;
    }
    for (std::size_t l = m; l < N; ++l) {
      for (std::size_t j = 0; j < n; ++j) cost[l][j] = p.power(bc.tau_drop[j]);
    }
    const std::vector<std::size_t> row_to_col = detail::solve_assignment(std::move(cost));
    std::vector<char> tau_matched(n, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (row_to_col[i] < n) {
        out.pairs.emplace_back(i, row_to_col[i]);
        tau_matched[row_to_col[i]] = 1;
      } else {
        out.sigma_to_A.push_back(i);
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!tau_matched[j]) out.tau_to_A.push_back(j);
    }
    out.cost = matching_cost(a, b, out);
    return out;
  }

  // Bottleneck: candidate thresholds are the distinct block costs.
  std::vector<double> candidates{0.0};
  for (const auto& row : bc.cross) {
    for (const double c : row) candidates.push_back(c);
  }
  candidates.insert(candidates.end(), bc.sigma_drop.begin(), bc.sigma_drop.end());
  candidates.insert(candidates.end(), bc.tau_drop.begin(), bc.tau_drop.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const auto matcher_at = [&](double threshold) {
    detail::BipartiteMatcher bm(N, N);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (bc.cross[i][j] <= threshold) bm.add_edge(i, j);
      }
      if (bc.sigma_drop[i] <= threshold) {
        for (std::size_t k = n; k < N; ++k) bm.add_edge(i, k);
      }
    }
    for (std::size_t l = m; l < N; ++l) {
      for (std::size_t j = 0; j < n; ++j) {
        if (bc.tau_drop[j] <= threshold) bm.add_edge(l, j);
      }
      for (std::size_t k = n; k < N; ++k) bm.add_edge(l, k);
    }
    return bm;
  };

  std::size_t lo = 0, hi = candidates.size() - 1;
  {
    detail::BipartiteMatcher bm = matcher_at(candidates[hi]);
    if (bm.max_matching() != N) {
      // Infinite cross distances (disjoint unions) can make every finite
      // threshold infeasible only if drops are infinite too, which diagram
      // validation rules out; guard anyway.
      throw std::invalid_argument("no feasible bottleneck matching at any finite threshold");
    }
  }
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    detail::BipartiteMatcher bm = matcher_at(candidates[mid]);
    if (bm.max_matching() == N) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }

  detail::BipartiteMatcher bm = matcher_at(candidates[lo]);
  bm.max_matching();
  const std::vector<int>& ml = bm.left_match();
  std::vector<char> tau_matched(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto j = static_cast<std::size_t>(ml[i]);
    if (j < n) {
      out.pairs.emplace_back(i, j);
      tau_matched[j] = 1;
    } else {
      out.sigma_to_A.push_back(i);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!tau_matched[j]) out.tau_to_A.push_back(j);
  }
  out.cost = matching_cost(a, b, out);
  return out;
}

inline double distance(const Diagram& a, const Diagram& b, const Exponent& p) {
  return optimal_matching(a, b, p).cost;
}

inline constexpr std::size_t kBruteForceCap = 10;

// Independent oracle: enumerates every augmented bijection (all equal-size
// subsets of the two diagrams, all bijections between them, remaining points
// to the subset). Exponential; refuses inputs with more than kBruteForceCap
// points total. Shares nothing with the assignment reduction above.
inline double brute_force_distance(const Diagram& a, const Diagram& b, const Exponent& p) {
  if (a.pair() != b.pair()) {
    throw std::invalid_argument("matching requires diagrams over the same pair");
  }
  const std::size_t m = a.size(), n = b.size();
  if (m + n > kBruteForceCap) {
    throw std::invalid_argument("brute-force enumeration is capped at " +
                                std::to_string(kBruteForceCap) + " points");
  }
  const detail::BlockCosts bc = detail::block_distances(a, b);

  const auto augmented_cost = [&](const std::vector<std::size_t>& left,
                                  const std::vector<std::size_t>& right,
                                  const std::vector<char>& in_left,
                                  const std::vector<char>& in_right) {
    if (p.is_inf()) {
      double worst = 0.0;
      for (std::size_t k = 0; k < left.size(); ++k) {
        worst = std::max(worst, bc.cross[left[k]][right[k]]);
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (!in_left[i]) worst = std::max(worst, bc.sigma_drop[i]);
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (!in_right[j]) worst = std::max(worst, bc.tau_drop[j]);
      }
      return worst;
    }
    double s = 0.0;
    for (std::size_t k = 0; k < left.size(); ++k) s += p.power(bc.cross[left[k]][right[k]]);
    for (std::size_t i = 0; i < m; ++i) {
      if (!in_left[i]) s += p.power(bc.sigma_drop[i]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!in_right[j]) s += p.power(bc.tau_drop[j]);
    }
    return s;
  };

  double best = kInfiniteDistance;
  for (std::size_t amask = 0; amask < (std::size_t{1} << m); ++amask) {
    std::vector<std::size_t> left;
    std::vector<char> in_left(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (amask & (std::size_t{1} << i)) {
        left.push_back(i);
        in_left[i] = 1;
      }
    }
    for (std::size_t bmask = 0; bmask < (std::size_t{1} << n); ++bmask) {
      std::vector<std::size_t> right;
      std::vector<char> in_right(n, 0);
      for (std::size_t j = 0; j < n; ++j) {
        if (bmask & (std::size_t{1} << j)) {
          right.push_back(j);
          in_right[j] = 1;
        }
      }
      if (right.size() != left.size()) continue;
      std::sort(right.begin(), right.end());
      do {
        best = std::min(best, augmented_cost(left, right, in_left, in_right));
      } while (std::next_permutation(right.begin(), right.end()));
    }
  }
  return p.is_inf() ? best : p.root(best);
}

// Every optimal matching (within `tol` of the optimum) under the brute-force
// cap; surfaces non-uniqueness of optimal matchings.
inline std::vector<Matching> enumerate_optimal_matchings(const Diagram& a, const Diagram& b,
                                                         const Exponent& p, double tol = 1e-12) {
  const std::size_t m = a.size(), n = b.size();
  if (m + n > kBruteForceCap) {
    throw std::invalid_argument("enumeration is capped at " + std::to_string(kBruteForceCap) +
                                " points");
  }
  const double best = brute_force_distance(a, b, p);
  std::vector<Matching> found;
  for (std::size_t amask = 0; amask < (std::size_t{1} << m); ++amask) {
    std::vector<std::size_t> left;
    for (std::size_t i = 0; i < m; ++i) {
      if (amask & (std::size_t{1} << i)) left.push_back(i);
    }
    for (std::size_t bmask = 0; bmask < (std::size_t{1} << n); ++bmask) {
      std::vector<std::size_t> right;
      for (std::size_t j = 0; j < n; ++j) {
        if (bmask & (std::size_t{1} << j)) right.push_back(j);
      }
      if (right.size() != left.size()) continue;
      std::sort(right.begin(), right.end());
      do {
        Matching cand;
        cand.p = p;
        for (std::size_t k = 0; k < left.size(); ++k) cand.pairs.emplace_back(left[k], right[k]);
        for (std::size_t i = 0; i < m; ++i) {
          if (!(amask & (std::size_t{1} << i))) cand.sigma_to_A.push_back(i);
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (std::find(right.begin(), right.end(), j) == right.end()) cand.tau_to_A.push_back(j);
        }
        cand.cost = matching_cost(a, b, cand);
        if (cand.cost <= best + tol) found.push_back(std::move(cand));
      } while (std::next_permutation(right.begin(), right.end()));
    }
  }
  return found;
}

// Closed form for the 2-norm distance of diagrams over the ray pair: pad the
// persistence lists with zeros to equal length, sort both descending, and
// take the l2 difference of the sorted lists (the monotone matching is
// optimal by the exchange argument).
inline double sorted_ray_distance(const Diagram& a, const Diagram& b) {
  if (a.pair().kind() != MetricPair::Kind::kRayOrigin ||
      b.pair().kind() != MetricPair::Kind::kRayOrigin) {
    throw std::invalid_argument("the sorted closed form applies to the ray pair only");
  }
  std::vector<double> xs, ys;
  for (const Point& pt : a.points()) xs.push_back(pt.coords[0]);
  for (const Point& pt : b.points()) ys.push_back(pt.coords[0]);
  const std::size_t N = std::max(xs.size(), ys.size());
  xs.resize(N, 0.0);
  ys.resize(N, 0.0);
  std::sort(xs.begin(), xs.end(), std::greater<double>());
  std::sort(ys.begin(), ys.end(), std::greater<double>());
  double s = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    const double d = xs[k] - ys[k];
    s += d * d;
  }
  return std::sqrt(s);
}

// Distance over a disjoint-union pair computed two ways: componentwise with
// the p-sum combination, and directly through the general matcher with the
// infinite cross-component sentinel. The two agree exactly in exact
// arithmetic because no optimal matching crosses components.
struct ProductCheck {
  double left = 0.0;
  double right = 0.0;
  double combined = 0.0;
  double direct = 0.0;
};

inline ProductCheck product_distance_check(const Diagram& a, const Diagram& b, const Exponent& p) {
  if (a.pair().kind() != MetricPair::Kind::kDisjointUnion || a.pair() != b.pair()) {
    throw std::invalid_argument("product check needs diagrams over one disjoint-union pair");
  }
  const auto split = [](const Diagram& d) {
    std::vector<Point> l, r;
    for (const Point& pt : d.points()) {
      (pt.sides.front() == 0 ? l : r).push_back(pt.peeled());
    }
    return std::make_pair(Diagram(d.pair().left(), std::move(l)),
                          Diagram(d.pair().right(), std::move(r)));
  };
  const auto [al, ar] = split(a);
  const auto [bl, br] = split(b);

  ProductCheck out;
  out.left = distance(al, bl, p);
  out.right = distance(ar, br, p);
  out.combined = p.is_inf() ? std::max(out.left, out.right)
                            : p.root(p.power(out.left) + p.power(out.right));
  out.direct = distance(a, b, p);
  return out;
}

}  // namespace pdgeom
