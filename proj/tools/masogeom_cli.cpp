// Copyright 2026 The masogeom Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 ok, 1 usage, 2 validation, 3 capacity.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "masogeom/analysis.hpp"
#include "masogeom/boundary.hpp"
#include "masogeom/errors.hpp"
#include "masogeom/io.hpp"
#include "masogeom/power_diagram.hpp"

namespace {

using namespace masogeom;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_reals(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
      throw UsageError(flag + ": '" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

std::vector<int> parse_ints(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  for (double v : parse_reals(text, flag)) {
    if (v != static_cast<int>(v)) throw UsageError(flag + ": expected integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

VectorXd parse_point(const std::string& text) {
  const auto values = parse_reals(text, "--point");
  return Eigen::Map<const VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

ConvexPolygon parse_domain(const std::string& text) {
  const auto v = parse_reals(text, "--domain");
  if (v.size() != 4 || !(v[0] < v[2]) || !(v[1] < v[3]))
    throw UsageError("--domain: expected xmin,ymin,xmax,ymax with min < max");
  return ConvexPolygon::rectangle(v[0], v[1], v[2], v[3]);
}

Network load_network(const std::string& path) { return parse_network(read_file(path)); }

std::vector<VectorXd> load_dataset(const std::string& path) {
  return parse_dataset_csv(read_file(path));
}

void check_layer_flag(const Network& net, int l, const char* flag) {
  if (l < 1 || l > net.depth())
    throw UsageError(std::string(flag) + " must be in 1.." + std::to_string(net.depth()));
}

Json codes_json(const LayerCodes& codes) {
  Json j = Json::array();
  for (const auto& layer : codes.codes) j.push_back(layer);
  return j;
}

Json vec_json(const VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

// Writes to `out` when given, otherwise to stdout.
void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    write_file(out, text);
  }
}

void emit(const Json& j, const std::string& out) { emit(j.dump(2), out); }

// Closed-form cosine for two-layer orthogonal nets; null when not applicable.
Json closed_form(const Network& net, const FacetPair& pair, const Partition& partition) {
  if (pair.flipped.size() != 1 || pair.flipped[0].first != 1) return nullptr;
  if (net.depth() != 2 || !net.has_dense()) return nullptr;
  try {
    const int unit = pair.flipped[0].second;
    const auto kind = net.dense(1).act.kind;
    ClosedFormCos cf;
    if (kind == Activation::Kind::kRelu)
      cf = relu_orthogonal_cos(net, partition.cells[pair.cell_a].codes.codes[0], unit);
    else if (kind == Activation::Kind::kAbs)
      cf = abs_orthogonal_cos(net, unit);
    else
      return nullptr;
    if (cf.degenerate) return nullptr;
    return cf.value;
  } catch (const Error&) {
    return nullptr;
  }
}

int exit_code(ErrorKind kind) { return kind == ErrorKind::kCapacity ? 3 : 2; }

void report_error(const std::string& kind, const std::string& message) {
  Json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact geometry of piecewise-affine networks"};
  app.require_subcommand(1);
  std::function<void()> run;

  std::string net_path, out_path, point, domain, data_path, partition_path, boundary_path,
      csv_path;
  int layer = 1;
  int depth = -1;
  std::size_t cap = kDefaultCellCap;

  // gen
  std::string dims, act = "relu", style = "dense_gaussian";
  double eta = 0.1;
  std::uint64_t seed = 0;
  auto* gen = app.add_subcommand("gen", "Generate a random network");
  gen->add_option("--dims", dims, "Widths D0,D1,...,DL")->required();
  gen->add_option("--act", act, "Hidden activation")
      ->check(CLI::IsMember({"relu", "leaky_relu", "abs", "identity"}));
  gen->add_option("--eta", eta, "Leaky-ReLU slope");
  gen->add_option("--style", style, "First-layer weight style")
      ->check(CLI::IsMember({"dense_gaussian", "axis_aligned", "diagonal_signs", "orthogonal"}));
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_path);
  gen->callback([&] {
    run = [&] {
      GeneratorConfig cfg;
      cfg.dims = parse_ints(dims, "--dims");
      if (cfg.dims.size() < 2) throw UsageError("--dims needs at least two widths");
      const Activation hidden = act == "leaky_relu" ? Activation::leaky_relu(eta)
                                                    : Activation::from_name(act);
      cfg.activations.assign(cfg.dims.size() - 1, hidden);
      cfg.activations.back() = Activation::identity();
      cfg.weight_style = weight_style_from_name(style);
      cfg.seed = seed;
      NetworkMeta meta;
      meta.seed = seed;
      meta.generator = "masogeom gen " + style;
      emit(emit_network(random_network(cfg), meta), out_path);
    };
  });

  // infer
  auto* infer = app.add_subcommand("infer", "Region codes and layer outputs at a point");
  infer->add_option("--net", net_path)->required();
  infer->add_option("--point", point)->required();
  infer->callback([&] {
    run = [&] {
      const Network net = load_network(net_path);
      const VectorXd x = parse_point(point);
      const auto z = forward(net, x);
      Json j;
      j["codes"] = codes_json(region_code(net, x));
      j["outputs"] = Json::array();
      for (const auto& zl : z) j["outputs"].push_back(vec_json(zl));
      emit(j, "");
    };
  });

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate the input-space partition");
  enumerate->add_option("--net", net_path)->required();
  enumerate->add_option("--domain", domain)->required();
  enumerate->add_option("--depth", depth, "Layers to subdivide through (default: all)");
  enumerate->add_option("--out", out_path);
  enumerate->add_option("--csv", csv_path);
  enumerate->add_option("--cap", cap, "Maximum number of cells");
  enumerate->callback([&] {
    run = [&] {
      const Network net = load_network(net_path);
      const ConvexPolygon box = parse_domain(domain);
      const int d = depth < 0 ? net.depth() : depth;
      if (d > net.depth())
        throw UsageError("--depth " + std::to_string(d) + " exceeds network depth " +
                         std::to_string(net.depth()));
      const Partition p = enumerate_partition(net, box, d, cap);
      emit(partition_to_json(p), out_path);
      if (!csv_path.empty()) write_file(csv_path, partition_to_csv(p));
    };
  });

  // boundary
  auto* boundary = app.add_subcommand("boundary", "Extract the decision boundary");
  boundary->add_option("--net", net_path)->required();
  boundary->add_option("--domain", domain)->required();
  boundary->add_option("--out", out_path);
  boundary->add_option("--cap", cap);
  boundary->callback([&] {
    run = [&] {
      const Network net = load_network(net_path);
      const Partition p = enumerate_partition(net, parse_domain(domain), net.depth() - 1, cap);
      emit(boundary_to_json(decision_boundary(net, p)), out_path);
    };
  });

  // svg
  int width_px = 800;
  auto* svg = app.add_subcommand("svg", "Render a partition as SVG");
  svg->add_option("--partition", partition_path)->required();
  svg->add_option("--boundary", boundary_path);
  svg->add_option("--width", width_px)->check(CLI::PositiveNumber);
  svg->add_option("--out", out_path);
  svg->callback([&] {
    run = [&] {
      const Partition p = partition_from_json(Json::parse(read_file(partition_path)));
      SvgStyle s;
      s.width_px = width_px;
      if (boundary_path.empty()) {
        emit(emit_svg(p, nullptr, s), out_path);
      } else {
        const PiecewiseLinearPath path = boundary_from_json(Json::parse(read_file(boundary_path)));
        emit(emit_svg(p, &path, s), out_path);
      }
    };
  });

  // angles
  auto* angles = app.add_subcommand("angles", "Dihedral cosines between adjacent boundary facets");
  angles->add_option("--net", net_path)->required();
  angles->add_option("--domain", domain)->required();
  angles->add_option("--out", out_path);
  angles->callback([&] {
    run = [&] {
      const Network net = load_network(net_path);
      const Partition p = enumerate_partition(net, parse_domain(domain), net.depth() - 1);
      const PiecewiseLinearPath path = decision_boundary(net, p);
      Json rows = Json::array();
      for (const FacetPair& pair : adjacent_facet_pairs(path, p)) {
        Json flipped = Json::array();
        for (const auto& [l, k] : pair.flipped) flipped.push_back({{"layer", l}, {"unit", k}});
        rows.push_back({{"cell_a", pair.cell_a},
                        {"cell_b", pair.cell_b},
                        {"joint", vec_json(pair.joint)},
                        {"flipped", flipped},
                        {"cos", pair.cos},
                        {"closed_form", closed_form(net, pair, p)}});
      }
      emit(Json{{"pairs", rows}}, out_path);
    };
  });

  // centroids
  auto* centroids = app.add_subcommand("centroids", "Power-diagram centroid and radius at a point");
  centroids->add_option("--net", net_path)->required();
  centroids->add_option("--point", point)->required();
  centroids->add_option("--layer", layer)->required();
  centroids->callback([&] {
    run = [&] {
      const Network net = load_network(net_path);
      check_layer_flag(net, layer, "--layer");
      const CentroidRadiusReport r = region_centroid_radius(net, parse_point(point), layer);
      emit(Json{{"layer", layer},
                {"codes", codes_json(r.codes)},
                {"mu", vec_json(r.centroid)},
                {"rad", r.radius},
                {"near_boundary", r.near_boundary}},
           "");
    };
  });

  // margins
  auto* margins = app.add_subcommand("margins", "Log-distance histogram of layer margins");
  margins->add_option("--net", net_path)->required();
  margins->add_option("--data", data_path)->required();
  margins->add_option("--layer", layer)->required();
  margins->add_option("--out", out_path);
  margins->callback([&] {
    run = [&] {
      const Network net = load_network(net_path);
      check_layer_flag(net, layer, "--layer");
      emit(distance_to_json(distance_distribution(net, load_dataset(data_path), layer)), out_path);
    };
  });

  // occupancy
  auto* occupancy = app.add_subcommand("occupancy", "Points per region code");
  occupancy->add_option("--net", net_path)->required();
  occupancy->add_option("--data", data_path)->required();
  occupancy->add_option("--depth", depth)->required();
  occupancy->add_option("--out", out_path);
  occupancy->callback([&] {
    run = [&] {
      const Network net = load_network(net_path);
      if (depth < 0 || depth > net.depth())
        throw UsageError("--depth must be in 0.." + std::to_string(net.depth()));
      emit(occupancy_to_json(code_occupancy(net, load_dataset(data_path), depth)), out_path);
    };
  });

  // stats
  auto* stats = app.add_subcommand("stats", "Subdivision statistics of a partition");
  stats->add_option("--partition", partition_path)->required();
  stats->callback([&] {
    run = [&] {
      const Partition p = partition_from_json(Json::parse(read_file(partition_path)));
      emit(stats_to_json(subdivision_stats(p)), "");
    };
  });

  // bench
  int max_k = 12, trials = 1000, runs = 5;
  std::uint64_t bench_seed = 1;
  auto* bench = app.add_subcommand("bench", "Per-unit versus joint-code inference timing");
  bench->add_option("--max-k", max_k)->check(CLI::Range(1, kBenchMaxUnits));
  bench->add_option("--trials", trials)->check(CLI::PositiveNumber);
  bench->add_option("--runs", runs)->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed);
  bench->add_option("--out", out_path);
  bench->callback([&] {
    run = [&] {
      std::vector<int> widths;
      for (int k = 1; k <= max_k; ++k) widths.push_back(k);
      emit(bench_to_json(bench_inference(widths, trials, bench_seed, runs)), out_path);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return 1;
  }

  try {
    run();
  } catch (const UsageError& e) {
    report_error("usage", e.what());
    return 1;
  } catch (const Error& e) {
    report_error(error_kind_name(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    report_error("parse", e.what());
    return 2;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return 2;
  }
  return 0;
}
