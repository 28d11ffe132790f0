#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "pdgeom/pdgeom.hpp"

using namespace pdgeom;
using testutil::plane_diagram;
using testutil::ray_diagram;

namespace {

const std::vector<Exponent> kSweepExponents = {Exponent(1.0), Exponent(2.0), Exponent(3.0),
                                               Exponent::infinity()};

}  // namespace

TEST_CASE("two-against-two ray instance hits the known optima", "[matching]") {
  const Diagram s = ray_diagram({3.0, 1.0});
  const Diagram t = ray_diagram({2.0, 2.0});
  // Direct pairing (3->2, 1->2) beats every augmented alternative.
  CHECK(distance(s, t, Exponent(2.0)) == Catch::Approx(1.4142135623730951).margin(1e-12));
  CHECK(distance(s, t, Exponent(1.0)) == Catch::Approx(2.0).margin(1e-12));
  CHECK(distance(s, t, Exponent(3.0)) == Catch::Approx(1.2599210498948732).margin(1e-12));
  CHECK(distance(s, t, Exponent::infinity()) == Catch::Approx(1.0).margin(1e-12));
  for (const Exponent& p : kSweepExponents) {
    CHECK(distance(s, t, p) == Catch::Approx(brute_force_distance(s, t, p)).margin(1e-12));
  }
}

TEST_CASE("distance to the empty diagram is the persistence norm", "[matching]") {
  const Diagram empty(MetricPair::euclidean_delta(1));
  const Diagram s = plane_diagram({{0.0, 2.0}});
  for (const Exponent& p : kSweepExponents) {
    CHECK(distance(s, empty, p) == Catch::Approx(std::sqrt(2.0)).margin(1e-15));
    CHECK(distance(empty, s, p) == Catch::Approx(std::sqrt(2.0)).margin(1e-15));
  }
  const Diagram several = plane_diagram({{0.0, 2.0}, {1.0, 5.0}, {-3.0, -1.0}});
  for (const Exponent& p : kSweepExponents) {
    CHECK(distance(several, empty, p) ==
          Catch::Approx(persistence_norm(several, p)).margin(1e-12));
  }
  CHECK(distance(empty, empty, Exponent(2.0)) == 0.0);
}

TEST_CASE("matcher agrees with exhaustive enumeration on random instances", "[matching]") {
  const std::vector<MetricPair> pairs = {MetricPair::euclidean_delta(1),
                                         MetricPair::ray_origin(),
                                         MetricPair::linf_plane_delta()};
  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    for (std::size_t trial = 0; trial < 60; ++trial) {
      Rng rng(Rng::derive(2026, pi * 1000 + trial));
      const Diagram a = random_diagram(pairs[pi], rng, 4);
      const Diagram b = random_diagram(pairs[pi], rng, 4);
      for (const Exponent& p : kSweepExponents) {
        const double fast = distance(a, b, p);
        const double slow = brute_force_distance(a, b, p);
        REQUIRE(fast == Catch::Approx(slow).margin(1e-9 * (1.0 + slow)));
      }
    }
  }
}

TEST_CASE("matching cost recomputes from its parts", "[matching]") {
  Rng rng(7);
  const MetricPair pair = MetricPair::euclidean_delta(1);
  for (int trial = 0; trial < 25; ++trial) {
    const Diagram a = random_diagram(pair, rng, 5);
    const Diagram b = random_diagram(pair, rng, 5);
    for (const Exponent& p : kSweepExponents) {
      const Matching m = optimal_matching(a, b, p);
      CHECK(m.cost == matching_cost(a, b, m));
      CHECK(m.pairs.size() + m.sigma_to_A.size() == a.size());
      CHECK(m.pairs.size() + m.tau_to_A.size() == b.size());
    }
  }
}

TEST_CASE("metric axioms hold on random triples", "[matching]") {
  const std::vector<Exponent> ps = {Exponent(1.0), Exponent(2.0), Exponent(2.5), Exponent(3.0)};
  const MetricPair pair = MetricPair::euclidean_delta(1);
  for (int trial = 0; trial < 40; ++trial) {
    Rng rng(Rng::derive(11, static_cast<std::uint64_t>(trial)));
    const Diagram a = random_diagram(pair, rng, 4);
    const Diagram b = random_diagram(pair, rng, 4);
    const Diagram c = random_diagram(pair, rng, 4);
    for (const Exponent& p : ps) {
      const double ab = distance(a, b, p);
      const double ba = distance(b, a, p);
      CHECK(ab == ba);  // exact: same term multiset, canonical summation
      const double ac = distance(a, c, p);
      const double cb = distance(c, b, p);
      CHECK(ab <= ac + cb + 1e-9);
      CHECK(distance(a, a, p) == Catch::Approx(0.0).margin(1e-12));
    }
  }
}

TEST_CASE("adding a common diagram never increases the distance", "[matching]") {
  // Matching the common points to themselves shows d(a+c, b+c) <= d(a, b);
  // equality can fail (mass may reroute through a shared near-diagonal point),
  // so only the inequality is asserted. Concatenating optimal matchings also
  // gives the disjoint-union subadditivity bound.
  const MetricPair pair = MetricPair::euclidean_delta(1);
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(Rng::derive(23, static_cast<std::uint64_t>(trial)));
    const Diagram a = random_diagram(pair, rng, 3);
    const Diagram b = random_diagram(pair, rng, 3);
    const Diagram common = random_diagram(pair, rng, 3);
    for (const Exponent& p : {Exponent(1.0), Exponent(2.0)}) {
      const double plain = distance(a, b, p);
      const double shifted = distance(common + a, common + b, p);
      CHECK(shifted <= plain + 1e-9);
      const double self = distance(common, common, p);
      const double glued = distance(a + common, b + common, p);
      const double pp = p.value();
      const double minkowski =
          std::pow(std::pow(plain, pp) + std::pow(self, pp), 1.0 / pp);
      CHECK(glued <= minkowski + 1e-9);
    }
  }
}

TEST_CASE("bottleneck distance matches enumeration and known values", "[matching]") {
  const Diagram empty(MetricPair::euclidean_delta(1));
  CHECK(distance(plane_diagram({{0.0, 2.0}}), empty, Exponent::infinity()) ==
        Catch::Approx(std::sqrt(2.0)).margin(1e-15));
  // Bottleneck costs are always realized by one of the candidate block costs.
  Rng rng(99);
  const MetricPair pair = MetricPair::euclidean_delta(1);
  for (int trial = 0; trial < 40; ++trial) {
    const Diagram a = random_diagram(pair, rng, 4);
    const Diagram b = random_diagram(pair, rng, 4);
    const Matching m = optimal_matching(a, b, Exponent::infinity());
    CHECK(m.cost == brute_force_distance(a, b, Exponent::infinity()));
  }
}

TEST_CASE("sorted closed form on the ray pair", "[matching]") {
  const Diagram s = ray_diagram({3.0, 1.0});
  const Diagram t = ray_diagram({2.0, 2.0});
  CHECK(sorted_ray_distance(s, t) == Catch::Approx(std::sqrt(2.0)).margin(1e-15));

  for (int trial = 0; trial < 200; ++trial) {
    Rng rng(Rng::derive(31, static_cast<std::uint64_t>(trial)));
    const Diagram a = random_diagram(MetricPair::ray_origin(), rng, 8);
    const Diagram b = random_diagram(MetricPair::ray_origin(), rng, 8);
    const double formula = sorted_ray_distance(a, b);
    const double matched = distance(a, b, Exponent(2.0));
    REQUIRE(formula == Catch::Approx(matched).margin(1e-9));
  }
  CHECK_THROWS_AS(sorted_ray_distance(plane_diagram({{0.0, 1.0}}), plane_diagram({})),
                  std::invalid_argument);
}

TEST_CASE("monotone matching of sorted lists admits no improving transposition", "[matching]") {
  // Exchange argument data: for sorted a, b and i < j,
  // (a_i - b_j)^2 + (a_j - b_i)^2 >= (a_i - b_i)^2 + (a_j - b_j)^2.
  for (int trial = 0; trial < 60; ++trial) {
    Rng rng(Rng::derive(41, static_cast<std::uint64_t>(trial)));
    std::vector<double> a(6), b(6);
    for (double& v : a) v = rng.uniform(0.0, 5.0);
    for (double& v : b) v = rng.uniform(0.0, 5.0);
    std::sort(a.begin(), a.end(), std::greater<double>());
    std::sort(b.begin(), b.end(), std::greater<double>());
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = i + 1; j < a.size(); ++j) {
        const double straight = (a[i] - b[i]) * (a[i] - b[i]) + (a[j] - b[j]) * (a[j] - b[j]);
        const double crossed = (a[i] - b[j]) * (a[i] - b[j]) + (a[j] - b[i]) * (a[j] - b[i]);
        REQUIRE(crossed >= straight - 1e-12);
      }
    }
  }
}

TEST_CASE("distances over a disjoint union decompose componentwise", "[matching]") {
  const MetricPair uni =
      MetricPair::disjoint_union(MetricPair::euclidean_delta(1), MetricPair::ray_origin(),
                                 Exponent(2.0));
  for (int trial = 0; trial < 30; ++trial) {
    Rng rng(Rng::derive(53, static_cast<std::uint64_t>(trial)));
    const Diagram a = random_diagram(uni, rng, 4);
    const Diagram b = random_diagram(uni, rng, 4);
    for (const Exponent& p : kSweepExponents) {
      const ProductCheck pc = product_distance_check(a, b, p);
      REQUIRE(std::abs(pc.combined - pc.direct) <= 1e-12 * (1.0 + pc.combined));
      if (a.size() + b.size() <= kBruteForceCap) {
        REQUIRE(pc.direct ==
                Catch::Approx(brute_force_distance(a, b, p)).margin(1e-9 * (1.0 + pc.direct)));
      }
    }
  }
}

TEST_CASE("brute force enumeration refuses oversized inputs", "[matching]") {
  const Diagram big = ray_diagram({1, 2, 3, 4, 5, 6});
  const Diagram other = ray_diagram({1, 2, 3, 4, 5});
  CHECK_THROWS_AS(brute_force_distance(big, other, Exponent(2.0)), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_optimal_matchings(big, other, Exponent(2.0)), std::invalid_argument);
}

TEST_CASE("diagrams over different pairs do not match", "[matching]") {
  CHECK_THROWS_AS(distance(ray_diagram({1.0}), plane_diagram({{0.0, 1.0}}), Exponent(2.0)),
                  std::invalid_argument);
}

TEST_CASE("optimal matchings can be non-unique", "[matching]") {
  // Two copies of one point against a single copy: either copy may pair off.
  const Diagram s = plane_diagram({{0.0, 2.0}, {0.0, 2.0}});
  const Diagram t = plane_diagram({{0.0, 2.0}});
  const auto all = enumerate_optimal_matchings(s, t, Exponent(2.0), 1e-12);
  CHECK(all.size() == 2);
  for (const Matching& m : all) {
    CHECK(m.cost == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
    CHECK(m.pairs.size() == 1);
  }
}

TEST_CASE("exponents parse from text", "[matching]") {
  CHECK(Exponent::parse("inf")->is_inf());
  CHECK(Exponent::parse("2")->value() == 2.0);
  CHECK(Exponent::parse("3/2")->value() == 1.5);
  CHECK(Exponent::parse("2.5")->value() == 2.5);
  CHECK(!Exponent::parse("0.5").has_value());  // below 1
  CHECK(!Exponent::parse("nope").has_value());
  CHECK(!Exponent::parse("2x").has_value());
}
