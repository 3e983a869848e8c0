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

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "masogeom/errors.hpp"
#include "masogeom/io.hpp"
#include "masogeom/power_diagram.hpp"

namespace masogeom {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

template <typename Fn>
double mean_ns(const std::vector<VectorXd>& inputs, Fn&& infer) {
  volatile long sink = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& x : inputs) sink = sink + infer(x);
  const auto stop = std::chrono::steady_clock::now();
  const double total = std::chrono::duration<double, std::nano>(stop - start).count();
  return total / static_cast<double>(inputs.size());
}

}  // namespace

BenchReport bench_inference(const std::vector<int>& widths, int trials, std::uint64_t seed,
                            int runs, int input_dim) {
  if (trials <= 0 || runs <= 0 || input_dim <= 0)
    fail(ErrorKind::kStructural, "bench needs positive trials, runs and input dimension");
  for (int k : widths) {
    if (k < 1 || k > kBenchMaxUnits) {
      std::ostringstream os;
      os << "bench width " << k << " outside 1.." << kBenchMaxUnits
         << " (exhaustive search is 2^K)";
      fail(ErrorKind::kCapacity, os.str());
    }
  }
  BenchReport report;
  report.input_dim = input_dim;
  report.trials = trials;
  report.runs = runs;
  for (int k : widths) {
    GeneratorConfig cfg;
    cfg.dims = {input_dim, k};
    cfg.activations = {Activation::relu()};
    cfg.seed = seed + static_cast<std::uint64_t>(k);
    const Network net = random_network(cfg);
    const MasoLayer& layer = net.layer(1);
    const PowerDiagram pd = layer_pd(layer);

    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(k)));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<VectorXd> inputs(trials, VectorXd(input_dim));
    for (auto& x : inputs)
      for (int i = 0; i < input_dim; ++i) x(i) = normal(rng);

    BenchRow row;
    row.units = k;
    row.pieces = layer.pieces();
    row.codes_equal = true;
    for (const auto& x : inputs)
      if (unit_argmax_codes(layer, x) != naive_joint_infer(pd, x)) row.codes_equal = false;

    std::vector<double> structured, naive;
    for (int r = 0; r < runs; ++r) {
      structured.push_back(
          mean_ns(inputs, [&](const VectorXd& x) { return unit_argmax_codes(layer, x)[0]; }));
      naive.push_back(
          mean_ns(inputs, [&](const VectorXd& x) { return naive_joint_infer(pd, x)[0]; }));
    }
    row.structured_ns = median(structured);
    row.naive_ns = median(naive);
    report.rows.push_back(row);
  }
  return report;
}

Json bench_to_json(const BenchReport& report) {
  Json j;
  j["input_dim"] = report.input_dim;
  j["trials"] = report.trials;
  j["runs"] = report.runs;
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"K", r.units},
                    {"R", r.pieces},
                    {"structured_ns", r.structured_ns},
                    {"naive_ns", r.naive_ns},
                    {"ratio", r.ratio()},
                    {"codes_equal", r.codes_equal}});
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace masogeom
