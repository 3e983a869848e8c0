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

#include "masogeom/power_diagram.hpp"

#include <sstream>

#include "masogeom/errors.hpp"

namespace masogeom {

PowerDiagram unit_pd(const MasoLayer& layer, int k) {
  if (k < 0 || k >= layer.units()) fail(ErrorKind::kStructural, "unit index out of range");
  PowerDiagram pd;
  pd.space_dim = layer.input_dim();
  for (int r = 0; r < layer.pieces(); ++r) {
    VectorXd mu = layer.slope(k, r).transpose();
    pd.radii.push_back(2.0 * layer.offset(k, r) + mu.squaredNorm());
    pd.centroids.push_back(std::move(mu));
    pd.code_labels.push_back({r + 1});
  }
  return pd;
}

std::size_t joint_code_count(const MasoLayer& layer, std::size_t cap) {
  std::size_t count = 1;
  for (int k = 0; k < layer.units(); ++k) {
    count *= static_cast<std::size_t>(layer.pieces());
    if (count > cap) return cap + 1;
  }
  return count;
}

namespace {

void check_cap(const MasoLayer& layer, std::size_t cap) {
  if (joint_code_count(layer, cap) > cap) {
    std::ostringstream os;
    os << "layer has R^K = " << layer.pieces() << "^" << layer.units()
       << " joint codes, cap is " << cap;
    fail(ErrorKind::kCapacity, os.str());
  }
}

// Calls fn(code) for every joint code in lexicographic order.
template <typename Fn>
void for_each_code(const MasoLayer& layer, Fn&& fn) {
  std::vector<int> code(layer.units(), 1);
  while (true) {
    fn(code);
    int k = layer.units() - 1;
    while (k >= 0 && code[k] == layer.pieces()) code[k--] = 1;
    if (k < 0) break;
    ++code[k];
  }
}

}  // namespace

CentroidRadius subdivided_entry(const MasoLayer& layer, const std::vector<int>& code,
                                const AffineMap& prefix_map) {
  const VectorXd mu_layer = layer.selected_slopes(code).colwise().sum().transpose();
  const double offset_sum = layer.selected_offsets(code).sum();
  CentroidRadius out;
  out.centroid = prefix_map.A.transpose() * mu_layer;
  out.radius = 2.0 * (mu_layer.dot(prefix_map.b) + offset_sum) +
               out.centroid.squaredNorm();
  return out;
}

PowerDiagram layer_pd(const MasoLayer& layer, std::size_t cap) {
  check_cap(layer, cap);
  return subdivided_pd(Network(layer.input_dim(), std::vector<MasoLayer>{layer}),
                       LayerCodes{}, 1, cap);
}

PowerDiagram subdivided_pd(const Network& net, const LayerCodes& prefix, int l,
                           std::size_t cap) {
  if (l < 1 || l > net.depth()) fail(ErrorKind::kStructural, "layer index out of range");
  if (prefix.depth() != l - 1) {
    std::ostringstream os;
    os << "prefix covers " << prefix.depth() << " layers, layer " << l
       << " needs " << l - 1;
    fail(ErrorKind::kStructural, os.str());
  }
  const MasoLayer& layer = net.layer(l);
  check_cap(layer, cap);
  const AffineMap prefix_map = region_affine(net, prefix, l - 1);
  PowerDiagram pd;
  pd.space_dim = net.input_dim();
  for_each_code(layer, [&](const std::vector<int>& code) {
    CentroidRadius e = subdivided_entry(layer, code, prefix_map);
    pd.centroids.push_back(std::move(e.centroid));
    pd.radii.push_back(e.radius);
    pd.code_labels.push_back(code);
  });
  return pd;
}

std::size_t laguerre_infer(const PowerDiagram& pd, const VectorXd& x) {
  if (pd.size() == 0) fail(ErrorKind::kDegenerate, "power diagram is empty");
  if (x.size() != pd.space_dim) fail(ErrorKind::kInput, "point dimension mismatch");
  std::size_t best = 0;
  double best_value = pd.laguerre_distance(0, x);
  for (std::size_t r = 1; r < pd.size(); ++r) {
    const double v = pd.laguerre_distance(r, x);
    if (v < best_value) {
      best = r;
      best_value = v;
    }
  }
  return best;
}

std::vector<int> unit_argmax_codes(const MasoLayer& layer, const VectorXd& z) {
  std::vector<int> code(layer.units());
  for (int k = 0; k < layer.units(); ++k) code[k] = layer.argmax_piece(k, z) + 1;
  return code;
}

std::vector<int> naive_joint_infer(const MasoLayer& layer, const VectorXd& x,
                                   std::size_t cap) {
  const PowerDiagram pd = layer_pd(layer, cap);
  return naive_joint_infer(pd, x);
}

const std::vector<int>& naive_joint_infer(const PowerDiagram& layer_diagram,
                                          const VectorXd& x) {
  if (layer_diagram.code_labels.size() != layer_diagram.size())
    fail(ErrorKind::kStructural, "diagram has no code labels");
  return layer_diagram.code_labels[laguerre_infer(layer_diagram, x)];
}

}  // namespace masogeom
