#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "helpers.hpp"
#include "pdgeom/pdgeom.hpp"

using namespace pdgeom;

namespace {

void check_pair_round_trip(const MetricPair& pair) {
  const json j = pair_to_json(pair);
  const MetricPair back = pair_from_json(j);
  REQUIRE(back == pair);
  REQUIRE(pair_to_json(back) == j);
}

}  // namespace

TEST_CASE("pair descriptors round-trip for every kind", "[json_io]") {
  check_pair_round_trip(MetricPair::euclidean_delta(1));
  check_pair_round_trip(MetricPair::euclidean_delta(3));
  check_pair_round_trip(MetricPair::euclidean_halfplane_delta(1));
  check_pair_round_trip(MetricPair::euclidean_quadrant_delta(2));
  check_pair_round_trip(MetricPair::ray_origin());
  check_pair_round_trip(MetricPair::linf_plane_delta());
  check_pair_round_trip(MetricPair::finite({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, {0, 2}));
  check_pair_round_trip(MetricPair::disjoint_union(MetricPair::euclidean_delta(1),
                                                   MetricPair::ray_origin(), Exponent(2.0)));
  // Nested unions round-trip too.
  check_pair_round_trip(MetricPair::disjoint_union(
      MetricPair::disjoint_union(MetricPair::ray_origin(), MetricPair::linf_plane_delta(),
                                 Exponent::infinity()),
      MetricPair::euclidean_delta(2), Exponent(1.5)));
}

TEST_CASE("pair parsing accepts documented shapes and rejects junk", "[json_io]") {
  CHECK(pair_from_json(json::parse(R"({"kind": "euclidean-delta", "n": 1})")) ==
        MetricPair::euclidean_delta(1));
  CHECK(pair_from_json(json::parse(R"({"kind": "ray-origin"})")) == MetricPair::ray_origin());
  CHECK(pair_from_json(json::parse(R"({"kind": "finite", "D": [[0, 1], [1, 0]], "A": [0]})")) ==
        MetricPair::finite({{0, 1}, {1, 0}}, {0}));

  CHECK_THROWS_AS(pair_from_json(json::parse(R"({"kind": "torus"})")), std::invalid_argument);
  CHECK_THROWS_AS(pair_from_json(json::parse(R"({"n": 1})")), std::invalid_argument);
  CHECK_THROWS_AS(pair_from_json(json::parse(R"({"kind": "finite", "D": [[0]]})")),
                  std::invalid_argument);
  CHECK_THROWS(pair_from_json(json::parse(R"({"kind": "finite", "D": "x", "A": [0]})")));
}

TEST_CASE("diagrams round-trip with every point encoding", "[json_io]") {
  const Diagram plane = testutil::plane_diagram({{0.0, 2.0}, {1.0, 4.5}});
  CHECK(diagram_from_json(diagram_to_json(plane)) == plane);

  const Diagram ray = testutil::ray_diagram({0.25, 3.0});
  CHECK(diagram_from_json(diagram_to_json(ray)) == ray);

  const MetricPair fin = MetricPair::finite({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, {0});
  const Diagram find(fin, {Point::of_index(1), Point::of_index(2), Point::of_index(2)});
  CHECK(diagram_from_json(diagram_to_json(find)) == find);

  const MetricPair uni = MetricPair::disjoint_union(MetricPair::euclidean_delta(1),
                                                    MetricPair::ray_origin(), Exponent(2.0));
  const Diagram und(uni, {Point::of_coords({0.0, 2.0}).in_component(0),
                          Point::of_coords({1.5}).in_component(1)});
  CHECK(diagram_from_json(diagram_to_json(und)) == und);

  // Byte-stable: serializing the reparsed diagram reproduces the text.
  const std::string text = diagram_to_json(und).dump();
  CHECK(diagram_to_json(diagram_from_json(json::parse(text))).dump() == text);

  CHECK_THROWS_AS(diagram_from_json(json::parse(R"({"points": []})")), std::invalid_argument);
  CHECK_THROWS_AS(
      diagram_from_json(json::parse(R"({"pair": {"kind": "ray-origin"}, "points": [[1], "x"]})")),
      std::invalid_argument);
}

TEST_CASE("exponents serialize as numbers or inf", "[json_io]") {
  CHECK(exponent_to_json(Exponent(2.0)) == json(2.0));
  CHECK(exponent_to_json(Exponent::infinity()) == json("inf"));
  CHECK(exponent_from_json(json("inf")).is_inf());
  CHECK(exponent_from_json(json(3.0)) == Exponent(3.0));
  CHECK(exponent_from_json(json("3/2")) == Exponent(1.5));
  CHECK_THROWS_AS(exponent_from_json(json("half")), std::invalid_argument);
  CHECK_THROWS_AS(exponent_from_json(json(0.5)), std::invalid_argument);
  CHECK_THROWS_AS(exponent_from_json(json::parse("null")), std::invalid_argument);
}

TEST_CASE("matchings round-trip", "[json_io]") {
  const Diagram a = testutil::ray_diagram({3.0, 1.0});
  const Diagram b = testutil::ray_diagram({2.0, 2.0});
  const Matching m = optimal_matching(a, b, Exponent(2.0));
  const json j = matching_to_json(m);
  const Matching back = matching_from_json(j);
  CHECK(back.cost == m.cost);
  CHECK(back.pairs == m.pairs);
  CHECK(back.sigma_to_A == m.sigma_to_A);
  CHECK(back.tau_to_A == m.tau_to_A);
  CHECK(back.p == m.p);
  // The reloaded matching re-scores to the same cost.
  CHECK(matching_cost(a, b, back) == m.cost);
}

TEST_CASE("measures round-trip", "[json_io]") {
  const EmpiricalMeasure mu({{testutil::plane_diagram({{0.0, 2.0}}), 0.25},
                             {testutil::plane_diagram({{0.0, 4.0}, {1.0, 2.0}}), 0.75}});
  const EmpiricalMeasure back = measure_from_json(measure_to_json(mu));
  REQUIRE(back.atoms().size() == 2);
  CHECK(back.atoms()[0].diagram == mu.atoms()[0].diagram);
  CHECK(back.atoms()[1].diagram == mu.atoms()[1].diagram);
  CHECK(back.atoms()[0].weight == 0.25);
  CHECK_THROWS_AS(measure_from_json(json::parse(R"({"atoms": []})")), std::invalid_argument);
  CHECK_THROWS_AS(measure_from_json(json::parse("{}")), std::invalid_argument);
}

TEST_CASE("approximations round-trip with closed forms", "[json_io]") {
  // Sampled finite map.
  const IntervalGrid grid = interval_grid_pair(-0.1, 0.1, 5, 0.0);
  const MetricPair point = MetricPair::finite({{0.0}}, {0});
  PairApproximation apx{grid.pair, point, {}, {}, std::nullopt, 0.2, 1.0};
  for (std::size_t i = 0; i < 5; ++i) {
    apx.domain.push_back(Point::of_index(i));
    apx.image.push_back(Point::of_index(0));
  }
  const PairApproximation back = approximation_from_json(approximation_to_json(apx));
  CHECK(back.source == apx.source);
  CHECK(back.target == apx.target);
  CHECK(back.domain.size() == apx.domain.size());
  CHECK(back.eps == apx.eps);
  CHECK(back.R == apx.R);
  CHECK(verify_pair_approximation(back).pass());

  // Affine closed form.
  const MetricPair plane = MetricPair::euclidean_delta(1);
  PairApproximation affine{plane,
                           plane,
                           {Point::of_coords({0.0, 0.0})},
                           {Point::of_coords({0.0, 0.0})},
                           RelativeMap::affine(plane, plane, {{1.0, 0.0}, {0.0, 1.0}},
                                               {0.0, 0.0}),
                           0.0,
                           5.0};
  const PairApproximation affine_back = approximation_from_json(approximation_to_json(affine));
  REQUIRE(affine_back.closed_form.has_value());
  const Point probe = Point::of_coords({1.0, 3.0});
  CHECK(affine_back.closed_form->apply(probe) == affine.closed_form->apply(probe));

  // Index-table closed form.
  PairApproximation table{grid.pair, point, {Point::of_index(2)}, {Point::of_index(0)},
                          RelativeMap::index_table(grid.pair, point, {0, 0, 0, 0, 0}),
                          0.2, 1.0};
  const PairApproximation table_back = approximation_from_json(approximation_to_json(table));
  REQUIRE(table_back.closed_form.has_value());
  CHECK(table_back.closed_form->apply(Point::of_index(4)) == Point::of_index(0));

  CHECK_THROWS_AS(approximation_from_json(json::parse(R"({"eps": 1})")), std::invalid_argument);
}

TEST_CASE("infinite reals serialize as the inf string", "[json_io]") {
  CHECK(real_to_json(kInfiniteDistance) == json("inf"));
  CHECK(real_from_json(json("inf"), "x") == kInfiniteDistance);
  CHECK(real_from_json(json(1.25), "x") == 1.25);
  CHECK_THROWS_AS(real_from_json(json("wide"), "x"), std::invalid_argument);

  // Union-pair matchings avoid the infinite cross-component block by sending
  // everything to the subsets; the finite cost still round-trips.
  const MetricPair uni = MetricPair::disjoint_union(MetricPair::euclidean_delta(1),
                                                    MetricPair::ray_origin(), Exponent(2.0));
  const Diagram left(uni, {Point::of_coords({0.0, 2.0}).in_component(0)});
  const Diagram right(uni, {Point::of_coords({3.0}).in_component(1),
                            Point::of_coords({1.0}).in_component(1)});
  const Matching m = optimal_matching(left, right, Exponent::infinity());
  const json j = matching_to_json(m);
  CHECK(matching_from_json(j).cost == m.cost);
}
