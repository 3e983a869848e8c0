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

#include "masogeom/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "masogeom/errors.hpp"

namespace masogeom {

namespace {

void check_layer(const Network& net, int l) {
  if (l < 1 || l > net.depth()) {
    std::ostringstream os;
    os << "layer " << l << " out of range 1.." << net.depth();
    fail(ErrorKind::kStructural, os.str());
  }
}

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double input_region_margin(const Network& net, const VectorXd& x, int l) {
  check_layer(net, l);
  const LayerCodes codes = region_code(net, x, l);
  double best = std::numeric_limits<double>::infinity();
  AffineMap map = AffineMap::identity(net.input_dim());
  for (int j = 1; j <= l; ++j) {
    const MasoLayer& layer = net.layer(j);
    if (layer.pieces() == 2) {
      for (int k = 0; k < layer.units(); ++k) {
        const VectorXd diff = (layer.slope(k, 0) - layer.slope(k, 1)).transpose();
        const VectorXd alpha = map.A.transpose() * diff;
        const double norm = alpha.norm();
        if (norm < 1e-12) continue;
        const double beta = diff.dot(map.b) + layer.offset(k, 0) - layer.offset(k, 1);
        best = std::min(best, std::abs(alpha.dot(x) + beta) / norm);
      }
    }
    map = compose_layer(layer, codes.codes[j - 1], map);
  }
  return best;
}

JacobianResult input_jacobian(const Network& net, const VectorXd& x, int l) {
  check_layer(net, l);
  const LayerCodes codes = region_code(net, x, l);
  JacobianResult out;
  out.jacobian = region_affine(net, codes, l).A;
  out.input_margin = input_region_margin(net, x, l);
  out.near_boundary = out.input_margin <= kFdEps;
  return out;
}

MatrixXd finite_difference_jacobian(const Network& net, const VectorXd& x, int l, double h) {
  check_layer(net, l);
  const int n = net.input_dim();
  MatrixXd jac(net.width(l), n);
  for (int i = 0; i < n; ++i) {
    VectorXd xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    jac.col(i) = (forward(net, xp)[l - 1] - forward(net, xm)[l - 1]) / (2.0 * h);
  }
  return jac;
}

CentroidRadiusReport region_centroid_radius(const Network& net, const VectorXd& x, int l) {
  check_layer(net, l);
  const auto z = forward(net, x);
  CentroidRadiusReport out;
  out.codes = region_code(net, x, l);
  const JacobianResult here = input_jacobian(net, x, l);
  out.near_boundary = here.near_boundary;
  // Centroid: summed rows of the depth-l Jacobian (all unit saliency maps).
  out.centroid = here.jacobian.colwise().sum().transpose();

  const VectorXd& z_prev = l == 1 ? x : z[l - 2];
  const MatrixXd jac_prev = l == 1 ? MatrixXd::Identity(net.input_dim(), net.input_dim())
                                   : input_jacobian(net, x, l - 1).jacobian;
  const VectorXd offset_prev = z_prev - jac_prev * x;
  const VectorXd mu_layer =
      net.layer(l).selected_slopes(out.codes.codes[l - 1]).colwise().sum().transpose();
  const double offset_sum = z[l - 1].sum() - mu_layer.dot(z_prev);
  out.radius = 2.0 * (mu_layer.dot(offset_prev) + offset_sum) + out.centroid.squaredNorm();
  return out;
}

MarginReport layer_margin(const Network& net, const VectorXd& x, int l) {
  check_layer(net, l);
  const MasoLayer& layer = net.layer(l);
  if (layer.pieces() != 2)
    fail(ErrorKind::kUnsupported, "layer margins need R = 2 pieces");
  const VectorXd z = l == 1 ? x : forward(net, x)[l - 2];
  if (l == 1 && (x.size() != net.input_dim() || !x.allFinite()))
    fail(ErrorKind::kInput, "bad input point");
  MarginReport report;
  report.min_distance = std::numeric_limits<double>::infinity();
  for (int k = 0; k < layer.units(); ++k) {
    const VectorXd diff = (layer.slope(k, 0) - layer.slope(k, 1)).transpose();
    const double norm = diff.norm();
    if (norm < 1e-12) {
      report.distances.push_back(std::numeric_limits<double>::infinity());
      report.degenerate.push_back(true);
      continue;
    }
    const double value = diff.dot(z) + layer.offset(k, 0) - layer.offset(k, 1);
    const double d = std::abs(value) / norm;
    report.distances.push_back(d);
    report.degenerate.push_back(false);
    if (d < report.min_distance) {
      report.min_distance = d;
      report.arg_unit = k;
    }
  }
  return report;
}

double exact_margin_2d(const Partition& partition, const Point2& x) {
  if (!x.allFinite() || partition.domain.inner_distance(x) < 0.0)
    fail(ErrorKind::kOutOfDomain, "point lies outside the partition domain");
  double best = std::numeric_limits<double>::infinity();
  for (const Cell& cell : partition.cells) {
    const ConvexPolygon& poly = cell.polygon;
    for (std::size_t e = 0; e < poly.size(); ++e) {
      if (poly.tags[e].is_domain()) continue;
      const auto [a, b] = poly.edge(e);
      best = std::min(best, point_segment_distance(x, a, b));
    }
  }
  return best;
}

OccupancyReport code_occupancy(const Network& net, const std::vector<VectorXd>& dataset,
                               int depth) {
  if (dataset.empty()) fail(ErrorKind::kInput, "dataset is empty");
  if (depth < 0 || depth > net.depth()) fail(ErrorKind::kStructural, "depth out of range");
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& x : dataset) ++counts[region_code(net, x, depth).key()];
  OccupancyReport report;
  report.dataset_size = dataset.size();
  report.distinct_codes = counts.size();
  for (const auto& [key, n] : counts) {
    report.max_per_code = std::max(report.max_per_code, n);
    ++report.histogram[n];
  }
  return report;
}

DistanceDistribution distance_distribution(const Network& net,
                                           const std::vector<VectorXd>& dataset, int l) {
  if (dataset.empty()) fail(ErrorKind::kInput, "dataset is empty");
  DistanceDistribution out;
  out.count = dataset.size();
  for (const auto& x : dataset) {
    const double m = layer_margin(net, x, l).min_distance;
    if (m == 0.0) {
      ++out.zero_count;
    } else if (std::isfinite(m)) {
      out.log10_margins.push_back(std::log10(m));
    } else {
      ++out.unbounded_count;
    }
  }
  std::sort(out.log10_margins.begin(), out.log10_margins.end());
  out.bin_counts.assign(kDistanceBins, 0);
  const auto& v = out.log10_margins;
  if (v.empty()) return out;
  out.min = v.front();
  out.max = v.back();
  out.q1 = quantile(v, 0.25);
  out.median = quantile(v, 0.5);
  out.q3 = quantile(v, 0.75);
  double lo = out.min, hi = out.max;
  if (hi <= lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / kDistanceBins;
  for (int i = 0; i <= kDistanceBins; ++i) out.bin_edges.push_back(lo + i * width);
  for (double value : v) {
    auto bin = static_cast<int>((value - lo) / width);
    bin = std::clamp(bin, 0, kDistanceBins - 1);
    ++out.bin_counts[bin];
  }
  return out;
}

}  // namespace masogeom
