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

// File formats: network specs, partitions, boundaries, datasets and reports.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "masogeom/analysis.hpp"
#include "masogeom/arrangement.hpp"
#include "masogeom/boundary.hpp"
#include "masogeom/network.hpp"

namespace masogeom {

using Json = nlohmann::ordered_json;

struct NetworkMeta {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> generator;
};

/// Parses a network description. Errors are kParse and name the offending field,
/// e.g. "layers[0].b: expected 3 entries, got 2".
Network parse_network(const std::string& text, NetworkMeta* meta = nullptr);
Json network_to_json(const Network& net, const NetworkMeta& meta = {});
std::string emit_network(const Network& net, const NetworkMeta& meta = {});

Json partition_to_json(const Partition& partition);
Partition partition_from_json(const Json& j);
std::string partition_to_csv(const Partition& partition);

Json stats_to_json(const SubdivisionStats& stats);

Json boundary_to_json(const PiecewiseLinearPath& path);
PiecewiseLinearPath boundary_from_json(const Json& j);

Json occupancy_to_json(const OccupancyReport& report);
Json distance_to_json(const DistanceDistribution& dist);

/// One point per row, comma separated; a non-numeric first row is a header.
std::vector<VectorXd> parse_dataset_csv(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

struct SvgStyle {
  int width_px = 800;
  double edge_width_px = 1.0;
  double boundary_width_px = 2.5;
};

/// 12-colour palette indexed by a hash of the cell codes.
std::string cell_color(const LayerCodes& codes);

std::string emit_svg(const Partition& partition, const PiecewiseLinearPath* boundary = nullptr,
                     const SvgStyle& style = {});

struct BenchRow {
  int units = 0;
  int pieces = 2;
  double structured_ns = 0.0;  // median over runs of mean time per input
  double naive_ns = 0.0;
  bool codes_equal = false;
  double ratio() const { return structured_ns > 0 ? naive_ns / structured_ns : 0.0; }
};

struct BenchReport {
  std::vector<BenchRow> rows;
  int input_dim = 0;
  int trials = 0;
  int runs = 0;
};

inline constexpr int kBenchMaxUnits = 16;

/// Times factorized (per-unit argmax) against exhaustive joint-code search on
/// random ReLU layers. Throws kCapacity for widths above kBenchMaxUnits.
BenchReport bench_inference(const std::vector<int>& widths, int trials, std::uint64_t seed,
                            int runs = 5, int input_dim = 8);
Json bench_to_json(const BenchReport& report);

}  // namespace masogeom
