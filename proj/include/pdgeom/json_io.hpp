#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "curvature.hpp"
#include "diagram.hpp"
#include "exponent.hpp"
#include "frechet.hpp"
#include "gh.hpp"
#include "matching.hpp"
#include "metric_pair.hpp"
#include "point.hpp"
#include "probe.hpp"

namespace pdgeom {

using nlohmann::json;

// Reals round-trip through the serializer's shortest-representation doubles;
// the infinite sentinel is spelled "inf" (JSON has no infinity literal).
inline json real_to_json(double v) {
  if (std::isnan(v)) throw std::invalid_argument("cannot serialize NaN");
  if (std::isinf(v)) return "inf";
  return v;
}

inline double real_from_json(const json& j, const char* what) {
  if (j.is_string() && j.get<std::string>() == "inf") return kInfiniteDistance;
  if (!j.is_number()) throw std::invalid_argument(std::string(what) + " must be a number");
  return j.get<double>();
}

inline json exponent_to_json(const Exponent& p) {
  if (p.is_inf()) return "inf";
  return p.value();
}

inline Exponent exponent_from_json(const json& j) {
  if (j.is_string()) {
    const std::optional<Exponent> p = Exponent::parse(j.get<std::string>());
    if (!p) throw std::invalid_argument("unreadable exponent \"" + j.get<std::string>() + "\"");
    return *p;
  }
  if (j.is_number()) return Exponent(j.get<double>());
  throw std::invalid_argument("exponent must be a number or \"inf\"");
}

inline json pair_to_json(const MetricPair& pair) {
  json j;
  j["kind"] = pair.kind_name();
  switch (pair.kind()) {
    case MetricPair::Kind::kEuclideanDelta:
    case MetricPair::Kind::kEuclideanHalfplaneDelta:
    case MetricPair::Kind::kEuclideanQuadrantDelta:
      j["n"] = pair.half_dim();
      break;
    case MetricPair::Kind::kRayOrigin:
    case MetricPair::Kind::kLinfPlaneDelta:
      break;
    case MetricPair::Kind::kFinite:
      j["D"] = pair.matrix();
      j["A"] = pair.subset_indices();
      break;
    case MetricPair::Kind::kDisjointUnion:
      j["left"] = pair_to_json(pair.left());
      j["right"] = pair_to_json(pair.right());
      j["p"] = exponent_to_json(pair.union_exponent());
      break;
  }
  return j;
}

inline MetricPair pair_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw std::invalid_argument("pair descriptor needs a \"kind\" string");
  }
  const std::string kind = j.at("kind").get<std::string>();
  const auto half_dim = [&]() {
    if (!j.contains("n")) return 1;
    if (!j.at("n").is_number_integer()) throw std::invalid_argument("\"n\" must be an integer");
    return j.at("n").get<int>();
  };
  if (kind == "euclidean-delta") return MetricPair::euclidean_delta(half_dim());
  if (kind == "euclidean-halfplane-delta") return MetricPair::euclidean_halfplane_delta(half_dim());
  if (kind == "euclidean-quadrant-delta") return MetricPair::euclidean_quadrant_delta(half_dim());
  if (kind == "ray-origin") return MetricPair::ray_origin();
  if (kind == "linf-plane-delta") return MetricPair::linf_plane_delta();
  if (kind == "finite") {
    if (!j.contains("D") || !j.contains("A")) {
      throw std::invalid_argument("finite pair needs \"D\" and \"A\"");
    }
    return MetricPair::finite(j.at("D").get<std::vector<std::vector<double>>>(),
                              j.at("A").get<std::vector<std::size_t>>());
  }
  if (kind == "disjoint-union") {
    if (!j.contains("left") || !j.contains("right") || !j.contains("p")) {
      throw std::invalid_argument("disjoint union needs \"left\", \"right\", and \"p\"");
    }
    return MetricPair::disjoint_union(pair_from_json(j.at("left")), pair_from_json(j.at("right")),
                                      exponent_from_json(j.at("p")));
  }
  throw std::invalid_argument("unknown pair kind \"" + kind + "\"");
}

// Points are encoded by pair shape: coordinate arrays for continuous kinds,
// bare indices for finite kinds, [side, inner] for disjoint unions.
inline json point_to_json(const MetricPair& pair, const Point& x) {
  switch (pair.kind()) {
    case MetricPair::Kind::kFinite:
      return x.index;
    case MetricPair::Kind::kDisjointUnion: {
      if (x.sides.empty()) throw std::invalid_argument("union point lacks a component tag");
      const int side = x.sides.front();
      const MetricPair& inner = side == 0 ? pair.left() : pair.right();
      return json::array({side, point_to_json(inner, x.peeled())});
    }
    default:
      return x.coords;
  }
}

inline Point point_from_json(const MetricPair& pair, const json& j) {
  switch (pair.kind()) {
    case MetricPair::Kind::kFinite:
      if (!j.is_number_unsigned()) throw std::invalid_argument("finite points are indices");
      return Point::of_index(j.get<std::size_t>());
    case MetricPair::Kind::kDisjointUnion: {
      if (!j.is_array() || j.size() != 2 || !j.at(0).is_number_integer()) {
        throw std::invalid_argument("union points are [side, inner] arrays");
      }
      const int side = j.at(0).get<int>();
      if (side != 0 && side != 1) throw std::invalid_argument("union side must be 0 or 1");
      const MetricPair& inner = side == 0 ? pair.left() : pair.right();
      return point_from_json(inner, j.at(1)).in_component(side);
    }
    default: {
      if (!j.is_array()) throw std::invalid_argument("points are coordinate arrays");
      std::vector<double> coords;
      coords.reserve(j.size());
      for (const json& c : j) coords.push_back(real_from_json(c, "coordinate"));
      return Point::of_coords(std::move(coords));
    }
  }
}

// Diagram output is canonically ordered, so equal diagrams serialize equally.
inline json diagram_to_json(const Diagram& d) {
  json pts = json::array();
  for (const Point& x : d.sorted_points()) pts.push_back(point_to_json(d.pair(), x));
  return json{{"pair", pair_to_json(d.pair())}, {"points", std::move(pts)}};
}

inline Diagram diagram_from_json(const json& j) {
  if (!j.is_object() || !j.contains("pair") || !j.contains("points")) {
    throw std::invalid_argument("diagram needs \"pair\" and \"points\"");
  }
  MetricPair pair = pair_from_json(j.at("pair"));
  if (!j.at("points").is_array()) throw std::invalid_argument("\"points\" must be an array");
  std::vector<Point> pts;
  pts.reserve(j.at("points").size());
  for (const json& p : j.at("points")) pts.push_back(point_from_json(pair, p));
  return Diagram(std::move(pair), std::move(pts));
}

inline json matching_to_json(const Matching& m) {
  json pairs = json::array();
  for (const auto& [i, k] : m.pairs) pairs.push_back(json::array({i, k}));
  return json{{"p", exponent_to_json(m.p)},
              {"cost", real_to_json(m.cost)},
              {"pairs", std::move(pairs)},
              {"sigma_to_A", m.sigma_to_A},
              {"tau_to_A", m.tau_to_A}};
}

inline Matching matching_from_json(const json& j) {
  Matching m;
  m.p = exponent_from_json(j.at("p"));
  m.cost = real_from_json(j.at("cost"), "cost");
  for (const json& pr : j.at("pairs")) {
    if (!pr.is_array() || pr.size() != 2) throw std::invalid_argument("matching pairs are [i, j]");
    m.pairs.emplace_back(pr.at(0).get<std::size_t>(), pr.at(1).get<std::size_t>());
  }
  m.sigma_to_A = j.at("sigma_to_A").get<std::vector<std::size_t>>();
  m.tau_to_A = j.at("tau_to_A").get<std::vector<std::size_t>>();
  return m;
}

inline json measure_to_json(const EmpiricalMeasure& mu) {
  json atoms = json::array();
  for (const WeightedDiagram& a : mu.atoms()) {
    atoms.push_back(json{{"diagram", diagram_to_json(a.diagram)}, {"weight", a.weight}});
  }
  return json{{"atoms", std::move(atoms)}};
}

inline EmpiricalMeasure measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j.at("atoms").is_array()) {
    throw std::invalid_argument("measure needs an \"atoms\" array");
  }
  std::vector<WeightedDiagram> atoms;
  for (const json& a : j.at("atoms")) {
    if (!a.is_object() || !a.contains("diagram") || !a.contains("weight")) {
      throw std::invalid_argument("each atom needs \"diagram\" and \"weight\"");
    }
    atoms.push_back({diagram_from_json(a.at("diagram")),
                     real_from_json(a.at("weight"), "weight")});
  }
  return EmpiricalMeasure(std::move(atoms));
}

inline json approximation_to_json(const PairApproximation& apx) {
  json map = json::array();
  for (std::size_t k = 0; k < apx.domain.size(); ++k) {
    map.push_back(json::array({point_to_json(apx.source, apx.domain[k]),
                               point_to_json(apx.target, apx.image[k])}));
  }
  json j{{"source", pair_to_json(apx.source)},
         {"target", pair_to_json(apx.target)},
         {"map", std::move(map)},
         {"eps", apx.eps},
         {"R", apx.R}};
  if (apx.closed_form) {
    if (apx.closed_form->is_affine()) {
      j["affine"] = json{{"linear", apx.closed_form->linear()},
                         {"offset", apx.closed_form->offset()}};
    } else {
      j["table"] = apx.closed_form->table();
    }
  }
  return j;
}

inline PairApproximation approximation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("map") ||
      !j.contains("eps") || !j.contains("R")) {
    throw std::invalid_argument(
        "approximation needs \"source\", \"target\", \"map\", \"eps\", and \"R\"");
  }
  PairApproximation apx{pair_from_json(j.at("source")),
                        pair_from_json(j.at("target")),
                        {},
                        {},
                        std::nullopt,
                        real_from_json(j.at("eps"), "eps"),
                        real_from_json(j.at("R"), "R")};
  if (!j.at("map").is_array()) throw std::invalid_argument("\"map\" must be an array");
  for (const json& row : j.at("map")) {
    if (!row.is_array() || row.size() != 2) {
      throw std::invalid_argument("map rows are [source_point, target_point]");
    }
    apx.domain.push_back(point_from_json(apx.source, row.at(0)));
    apx.image.push_back(point_from_json(apx.target, row.at(1)));
  }
  if (j.contains("affine")) {
    const json& a = j.at("affine");
    apx.closed_form = RelativeMap::affine(
        apx.source, apx.target, a.at("linear").get<std::vector<std::vector<double>>>(),
        a.at("offset").get<std::vector<double>>());
  } else if (j.contains("table")) {
    apx.closed_form = RelativeMap::index_table(apx.source, apx.target,
                                               j.at("table").get<std::vector<std::size_t>>());
  }
  validate_pair_approximation(apx);
  return apx;
}

inline json mean_result_to_json(const MeanResult& res) {
  return json{{"candidate", diagram_to_json(res.candidate)},
              {"functional", res.functional},
              {"trace", res.trace},
              {"converged", res.converged},
              {"iterations", res.iterations}};
}

inline json diagnostics_to_json(const FamilyDiagnostics& diag) {
  json off = json::array(), uni = json::array();
  for (const auto& [eps, v] : diag.offdiag_profile) off.push_back(json::array({eps, v}));
  for (const auto& [delta, v] : diag.uniformity_profile) uni.push_back(json::array({delta, v}));
  return json{{"bound", diag.bound},
              {"offdiag_profile", std::move(off)},
              {"uniformity_profile", std::move(uni)}};
}

inline json approx_report_to_json(const ApproxReport& rep) {
  return json{{"eps", rep.eps},
              {"max_distortion", real_to_json(rep.max_distortion)},
              {"hausdorff_gap", rep.hausdorff_gap},
              {"coverage_slack", real_to_json(rep.coverage_slack)},
              {"pass_distortion", rep.pass_distortion},
              {"pass_hausdorff", rep.pass_hausdorff},
              {"pass_coverage", rep.pass_coverage},
              {"pass", rep.pass()}};
}

inline json distortion_sweep_to_json(const DistortionSweep& sweep) {
  return json{{"trials", sweep.trials},
              {"failures", sweep.failures},
              {"max_distortion", real_to_json(sweep.max_distortion)},
              {"bound", sweep.bound}};
}

inline json quadrilateral_sweep_to_json(const QuadrilateralSweep& sweep) {
  return json{
      {"trials", sweep.trials}, {"min_slack", sweep.min_slack}, {"failures", sweep.failures}};
}

inline json angle_sweep_to_json(const AngleSweep& sweep) {
  return json{
      {"trials", sweep.trials}, {"max_angle", sweep.max_angle}, {"failures", sweep.failures}};
}

inline json probe_to_json(const DimensionProbe& probe) {
  json j{{"trials", probe.trials},
         {"degenerate_skipped", probe.degenerate_skipped},
         {"sorted_formula_max_error", probe.sorted_formula_max_error},
         {"within_bounds", probe.ratios_within_bounds()}};
  // No ratio is measured when every pair was degenerate.
  if (probe.ratio_max == 0.0 && probe.ratio_min == kInfiniteDistance) {
    j["ratio_min"] = nullptr;
    j["ratio_max"] = nullptr;
  } else {
    j["ratio_min"] = probe.ratio_min;
    j["ratio_max"] = probe.ratio_max;
  }
  return j;
}

}  // namespace pdgeom
