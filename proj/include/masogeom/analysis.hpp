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

// Backprop-style centroid recovery, margins and dataset statistics.
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "masogeom/arrangement.hpp"
#include "masogeom/network.hpp"

namespace masogeom {

/// Finite-difference step and boundary clearance for Jacobian checks.
inline constexpr double kFdEps = 1e-6;

struct JacobianResult {
  MatrixXd jacobian;      // d z^(l) / d x
  double input_margin;    // distance to the nearest switching hyperplane met so far
  bool near_boundary;     // input_margin <= kFdEps: conditioning warning
};

/// Jacobian of z^(l) at x, read off the region's composed map.
JacobianResult input_jacobian(const Network& net, const VectorXd& x, int l);

/// Central finite differences of z^(l), step h.
MatrixXd finite_difference_jacobian(const Network& net, const VectorXd& x, int l,
                                    double h = kFdEps);

/// Lower bound on the input-space distance from x to the boundary of its
/// depth-l region: the nearest pulled-back switching hyperplane of layers 1..l.
double input_region_margin(const Network& net, const VectorXd& x, int l);

struct CentroidRadiusReport {
  VectorXd centroid;
  double radius = 0.0;
  LayerCodes codes;
  bool near_boundary = false;
};

/// Power-diagram centroid and radius of x's layer-l region, from Jacobians.
CentroidRadiusReport region_centroid_radius(const Network& net, const VectorXd& x, int l);

struct MarginReport {
  double min_distance = 0.0;
  int arg_unit = -1;
  std::vector<double> distances;  // +inf for degenerate units
  std::vector<bool> degenerate;
};

/// Distances from z^(l-1)(x) to every unit's switching hyperplane of layer l.
MarginReport layer_margin(const Network& net, const VectorXd& x, int l);

/// Distance from x to the nearest internal cell edge; +inf when there is none.
/// Throws kOutOfDomain outside the domain.
double exact_margin_2d(const Partition& partition, const Point2& x);

struct OccupancyReport {
  std::size_t dataset_size = 0;
  std::size_t distinct_codes = 0;
  std::size_t max_per_code = 0;
  /// occupancy -> number of codes holding exactly that many points
  std::map<std::size_t, std::size_t> histogram;
};

OccupancyReport code_occupancy(const Network& net, const std::vector<VectorXd>& dataset,
                               int depth);

inline constexpr int kDistanceBins = 50;

struct DistanceDistribution {
  std::size_t count = 0;
  std::size_t zero_count = 0;       // margins of exactly 0 (log10 = -inf bin)
  std::size_t unbounded_count = 0;  // no non-degenerate unit (margin = +inf)
  std::vector<double> log10_margins;  // finite entries only, sorted
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
  std::vector<double> bin_edges;       // kDistanceBins + 1 entries
  std::vector<std::size_t> bin_counts; // kDistanceBins entries
};

DistanceDistribution distance_distribution(const Network& net,
                                           const std::vector<VectorXd>& dataset, int l);

}  // namespace masogeom
