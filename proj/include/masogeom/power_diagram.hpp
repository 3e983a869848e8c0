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

// Power diagrams (Laguerre-Voronoi diagrams) induced by max-affine layers.
//
// A point x belongs to entry r minimizing ||x - mu_r||^2 - rad_r. With
// rad_r = 2 * (effective offset) + ||mu_r||^2 this is the same as maximizing
// the affine value <mu_r, x> + (effective offset), which is how every
// constructor below is checked.
#pragma once

#include <cstddef>
#include <vector>

#include "masogeom/network.hpp"

namespace masogeom {

inline constexpr std::size_t kDefaultCodeCap = 65536;

struct PowerDiagram {
  std::vector<VectorXd> centroids;
  std::vector<double> radii;
  std::vector<std::vector<int>> code_labels;  // 1-based joint codes, may be empty
  int space_dim = 0;

  std::size_t size() const { return centroids.size(); }
  double laguerre_distance(std::size_t r, const VectorXd& x) const {
    return (x - centroids[r]).squaredNorm() - radii[r];
  }
};

PowerDiagram unit_pd(const MasoLayer& layer, int k);

/// Number of joint codes R^K, or cap + 1 when it would exceed `cap`.
std::size_t joint_code_count(const MasoLayer& layer, std::size_t cap);

/// One entry per joint code, first unit most significant. Throws kCapacity
/// when R^K > cap.
PowerDiagram layer_pd(const MasoLayer& layer, std::size_t cap = kDefaultCodeCap);

/// Diagram of layer `l` pulled back to input space on the region selected by
/// `prefix` (codes of layers 1..l-1).
PowerDiagram subdivided_pd(const Network& net, const LayerCodes& prefix, int l,
                           std::size_t cap = kDefaultCodeCap);

/// Centroid and radius of a single joint code of layer `l` on the region of
/// `prefix`, without enumerating the whole diagram.
struct CentroidRadius {
  VectorXd centroid;
  double radius = 0.0;
};
CentroidRadius subdivided_entry(const MasoLayer& layer, const std::vector<int>& code,
                                const AffineMap& prefix_map);

/// Laguerre argmin, ties toward the smallest index. Throws kDegenerate on an
/// empty diagram.
std::size_t laguerre_infer(const PowerDiagram& pd, const VectorXd& x);

/// Factorized inference: per-unit argmax of the layer (1-based code).
std::vector<int> unit_argmax_codes(const MasoLayer& layer, const VectorXd& z);

/// Exhaustive search over all R^K joint codes.
std::vector<int> naive_joint_infer(const MasoLayer& layer, const VectorXd& x,
                                   std::size_t cap = kDefaultCodeCap);
/// Same search against a prebuilt layer diagram.
const std::vector<int>& naive_joint_infer(const PowerDiagram& layer_diagram,
                                          const VectorXd& x);

}  // namespace masogeom
