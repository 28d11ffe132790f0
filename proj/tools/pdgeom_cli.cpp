// Command-line front end: every subcommand reads JSON inputs, writes one JSON
// report (stdout by default), and follows a fixed exit-code contract:
//   0 success, 1 property-check failure, 2 validation or input error.
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdgeom/pdgeom.hpp"

namespace {

using pdgeom::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read \"" + path + "\"");
  return json::parse(in);  // parse errors carry line/column positions
}

pdgeom::Diagram load_diagram(const std::string& path) {
  const pdgeom::Diagram d = pdgeom::diagram_from_json(load_json(path));
  if (d.dropped_on_construction() > 0) {
    std::cerr << "note: " << path << ": dropped " << d.dropped_on_construction()
              << " on-subset point(s)\n";
  }
  return d;
}

pdgeom::Exponent parse_exponent(const std::string& text) {
  const std::optional<pdgeom::Exponent> p = pdgeom::Exponent::parse(text);
  if (!p) throw std::invalid_argument("unreadable exponent \"" + text + "\"");
  return *p;
}

std::vector<double> parse_real_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": unreadable entry \"" + item + "\"");
    }
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + " must be non-empty");
  return out;
}

// Reports are assembled in memory and written in one shot at completion.
void write_report(const std::string& output, const json& report) {
  const std::string text = report.dump(2) + "\n";
  if (output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output);
  if (!out) throw std::invalid_argument("cannot write \"" + output + "\"");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact distances, geodesics, curvature checks, Fréchet means, and\n"
               "approximation verification for persistence diagrams over metric pairs.\n"
               "Inputs and reports are JSON; randomized commands are seed-reproducible."};
  app.require_subcommand(1);
  app.fallthrough();  // global options (--output) may follow subcommand arguments

  std::string output = "-";
  app.add_option("--output", output, "Report destination path, or - for stdout")
      ->capture_default_str();

  // dist
  auto* dist = app.add_subcommand("dist", "Optimal matching distance between two diagrams");
  std::string dist_a, dist_b, dist_p;
  dist->add_option("a", dist_a, "First diagram (JSON file)")->required();
  dist->add_option("b", dist_b, "Second diagram (JSON file)")->required();
  dist->add_option("--p", dist_p, "Exponent: number >= 1, rational like 3/2, or inf")->required();

  // geodesic
  auto* geo = app.add_subcommand("geodesic", "Constant-speed path between two diagrams");
  std::string geo_a, geo_b, geo_p, geo_times = "0,0.5,1";
  geo->add_option("a", geo_a, "Source diagram (JSON file)")->required();
  geo->add_option("b", geo_b, "Target diagram (JSON file)")->required();
  geo->add_option("--p", geo_p, "Finite exponent >= 1")->required();
  geo->add_option("--t", geo_times, "Comma-separated times in [0,1]")->capture_default_str();

  // mean
  auto* mean = app.add_subcommand("mean", "Fréchet mean descent for a weighted diagram family");
  std::string mean_input, mean_init = "best";
  double mean_tol = 1e-9;
  std::size_t mean_iters = 200;
  mean->add_option("--input", mean_input, "Measure (JSON file with atoms)")->required();
  mean->add_option("--init", mean_init,
                   "Initial candidate: best (lowest-functional atom, guarantees the result "
                   "beats every atom), largest, or an atom index")
      ->capture_default_str();
  mean->add_option("--tol", mean_tol, "Convergence threshold on the functional decrease")
      ->capture_default_str();
  mean->add_option("--max-iters", mean_iters, "Iteration cap")->capture_default_str();

  // parts
  auto* parts = app.add_subcommand("parts", "Split a diagram at a persistence threshold");
  std::string parts_sigma;
  double parts_alpha = 0.0;
  parts->add_option("sigma", parts_sigma, "Diagram (JSON file)")->required();
  parts->add_option("--alpha", parts_alpha, "Persistence threshold")->required();

  // check-curvature
  auto* curv = app.add_subcommand("check-curvature",
                                  "Random quadrilateral comparison sweep (slack >= 0)");
  std::string curv_pair;
  std::size_t curv_trials = 0, curv_max_points = 4;
  std::uint64_t curv_seed = 0;
  unsigned curv_workers = 1;
  double curv_tol = 1e-9;
  curv->add_option("--trials", curv_trials, "Number of random triples")->required();
  curv->add_option("--seed", curv_seed, "Base seed (trial i uses stream i)")->required();
  curv->add_option("--pair", curv_pair, "Pair descriptor JSON file (default euclidean-delta n=1)");
  curv->add_option("--max-points", curv_max_points, "Points per random diagram")
      ->capture_default_str();
  curv->add_option("--workers", curv_workers, "Worker threads")->capture_default_str();
  curv->add_option("--tol", curv_tol, "Slack tolerance")->capture_default_str();

  // check-gh
  auto* gh = app.add_subcommand("check-gh",
                                "Verify an approximation of pairs and its induced diagram map");
  std::string gh_apx, gh_p = "inf";
  std::size_t gh_trials = 0, gh_max_points = 4;
  std::uint64_t gh_seed = 0;
  double gh_tol = 1e-9;
  gh->add_option("--apx", gh_apx, "Approximation (JSON file)")->required();
  gh->add_option("--p", gh_p, "Exponent for the diagram sweep")->capture_default_str();
  gh->add_option("--trials", gh_trials, "Random diagram pairs to draw")->required();
  gh->add_option("--seed", gh_seed, "Base seed (trial i uses stream i)")->required();
  gh->add_option("--max-points", gh_max_points, "Points per random diagram")
      ->capture_default_str();
  gh->add_option("--tol", gh_tol, "Bound tolerance for the max-norm sweep")
      ->capture_default_str();

  // probe-dimension
  auto* probe = app.add_subcommand("probe-dimension",
                                   "Sorted ray formula vs matcher, and embedding distortion");
  std::size_t probe_nmax = 0, probe_trials = 0;
  std::uint64_t probe_seed = 0;
  int probe_embed = 2;
  double probe_tol = 1e-9;
  probe->add_option("--n-max", probe_nmax, "Max points per ray diagram (<= 12)")->required();
  probe->add_option("--trials", probe_trials, "Random pairs to draw")->required();
  probe->add_option("--seed", probe_seed, "Base seed (trial i uses stream i)")->required();
  probe->add_option("--embed-n", probe_embed, "Half-dimension of the embedding target")
      ->capture_default_str();
  probe->add_option("--tol", probe_tol, "Tolerance for formula agreement and ratio bounds")
      ->capture_default_str();

  // diagnostics
  auto* diag = app.add_subcommand("diagnostics",
                                  "Boundedness/uniformity profiles of a diagram family");
  std::string diag_family, diag_p = "2";
  std::string diag_eps = "0.1,0.25,0.5,1,2", diag_delta = "0.1,0.25,0.5,1,2";
  diag->add_option("family", diag_family, "Family (JSON: {\"diagrams\": [...]} or an array)")
      ->required();
  diag->add_option("--p", diag_p, "Norm exponent")->capture_default_str();
  diag->add_option("--eps-grid", diag_eps, "Persistence thresholds (comma-separated)")
      ->capture_default_str();
  diag->add_option("--delta-grid", diag_delta, "Tail thresholds (comma-separated)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad arguments are validation errors
  }

  try {
    if (*dist) {
      const pdgeom::Diagram a = load_diagram(dist_a);
      const pdgeom::Diagram b = load_diagram(dist_b);
      const pdgeom::Matching m = pdgeom::optimal_matching(a, b, parse_exponent(dist_p));
      write_report(output, json{{"p", pdgeom::exponent_to_json(m.p)},
                                {"distance", pdgeom::real_to_json(m.cost)},
                                {"matching", pdgeom::matching_to_json(m)}});
      return 0;
    }
    if (*geo) {
      const pdgeom::Diagram a = load_diagram(geo_a);
      const pdgeom::Diagram b = load_diagram(geo_b);
      const pdgeom::GeodesicPath path = pdgeom::geodesic(a, b, parse_exponent(geo_p));
      json times = json::array(), diagrams = json::array();
      for (const double t : parse_real_list(geo_times, "--t")) {
        times.push_back(t);
        diagrams.push_back(pdgeom::diagram_to_json(path.at(t)));
      }
      write_report(output, json{{"p", pdgeom::exponent_to_json(path.matching().p)},
                                {"distance", path.length()},
                                {"times", std::move(times)},
                                {"diagrams", std::move(diagrams)}});
      return 0;
    }
    if (*mean) {
      const pdgeom::EmpiricalMeasure mu = pdgeom::measure_from_json(load_json(mean_input));
      std::size_t init_index = 0;
      if (mean_init == "best") {
        init_index = pdgeom::best_atom(mu);
      } else if (mean_init == "largest") {
        init_index = mu.largest_atom();
      } else {
        try {
          init_index = std::stoul(mean_init);
        } catch (const std::exception&) {
          throw std::invalid_argument("--init must be \"best\", \"largest\", or an atom index");
        }
        if (init_index >= mu.atoms().size()) throw std::invalid_argument("--init out of range");
      }
      const pdgeom::MeanResult res =
          pdgeom::frechet_mean(mu, mu.atoms()[init_index].diagram, mean_iters, mean_tol);
      write_report(output, pdgeom::mean_result_to_json(res));
      return 0;
    }
    if (*parts) {
      const pdgeom::Diagram sigma = load_diagram(parts_sigma);
      write_report(output,
                   json{{"alpha", parts_alpha},
                        {"upper", pdgeom::diagram_to_json(pdgeom::upper_part(sigma, parts_alpha))},
                        {"lower", pdgeom::diagram_to_json(pdgeom::lower_part(sigma, parts_alpha))}});
      return 0;
    }
    if (*curv) {
      const pdgeom::MetricPair pair = curv_pair.empty()
                                          ? pdgeom::MetricPair::euclidean_delta(1)
                                          : pdgeom::pair_from_json(load_json(curv_pair));
      const pdgeom::QuadrilateralSweep sweep = pdgeom::quadrilateral_sweep(
          pair, curv_trials, curv_seed, curv_workers, curv_max_points, curv_tol);
      write_report(output, pdgeom::quadrilateral_sweep_to_json(sweep));
      return sweep.failures == 0 ? 0 : 1;
    }
    if (*gh) {
      const pdgeom::PairApproximation apx = pdgeom::approximation_from_json(load_json(gh_apx));
      const pdgeom::ApproxReport report = pdgeom::verify_pair_approximation(apx);
      const pdgeom::DistortionSweep sweep = pdgeom::diagram_distortion_sweep(
          apx, parse_exponent(gh_p), gh_trials, gh_seed, gh_max_points, gh_tol);
      write_report(output, json{{"verify", pdgeom::approx_report_to_json(report)},
                                {"sweep", pdgeom::distortion_sweep_to_json(sweep)}});
      return report.pass() && sweep.failures == 0 ? 0 : 1;
    }
    if (*probe) {
      const pdgeom::DimensionProbe result =
          pdgeom::probe_dimension(probe_nmax, probe_trials, probe_seed, probe_embed);
      write_report(output, pdgeom::probe_to_json(result));
      const bool ok =
          result.ratios_within_bounds(probe_tol) && result.sorted_formula_max_error <= probe_tol;
      return ok ? 0 : 1;
    }
    if (*diag) {
      const json input = load_json(diag_family);
      const json& list = input.is_array() ? input : input.at("diagrams");
      if (!list.is_array() || list.empty()) {
        throw std::invalid_argument("family must be a non-empty array of diagrams");
      }
      std::vector<pdgeom::Diagram> family;
      for (const json& d : list) family.push_back(pdgeom::diagram_from_json(d));
      const pdgeom::FamilyDiagnostics result =
          pdgeom::family_diagnostics(family, parse_exponent(diag_p),
                                     parse_real_list(diag_eps, "--eps-grid"),
                                     parse_real_list(diag_delta, "--delta-grid"));
      write_report(output, pdgeom::diagnostics_to_json(result));
      return 0;
    }
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // no subcommand matched (unreachable with require_subcommand)
}
