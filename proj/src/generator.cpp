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
#include <cmath>
#include <random>

#include "masogeom/errors.hpp"
#include "masogeom/network.hpp"

namespace masogeom {

namespace {

MatrixXd gaussian(int rows, int cols, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

MatrixXd styled_weights(WeightStyle style, int rows, int cols,
                        std::mt19937_64& rng) {
  switch (style) {
    case WeightStyle::kDenseGaussian:
      return gaussian(rows, cols, rng, 1.0);
    case WeightStyle::kAxisAligned: {
      // One nonzero per row; the unit cuts along a coordinate axis.
      std::uniform_int_distribution<int> column(0, cols - 1);
      std::uniform_real_distribution<double> magnitude(0.5, 1.5);
      std::bernoulli_distribution sign(0.5);
      MatrixXd m = MatrixXd::Zero(rows, cols);
      for (int i = 0; i < rows; ++i) {
        const int j = column(rng);
        const double v = magnitude(rng);
        m(i, j) = sign(rng) ? v : -v;
      }
      return m;
    }
    case WeightStyle::kDiagonalSigns: {
      const double c = 1.0 / std::sqrt(static_cast<double>(cols));
      std::bernoulli_distribution sign(0.5);
      MatrixXd m(rows, cols);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = sign(rng) ? c : -c;
      return m;
    }
    case WeightStyle::kOrthogonal: {
      // Orthonormal rows when possible; tall matrices get orthonormal columns.
      const int n = std::max(rows, cols);
      const MatrixXd g = gaussian(n, n, rng, 1.0);
      Eigen::HouseholderQR<MatrixXd> qr(g);
      const MatrixXd q = qr.householderQ() * MatrixXd::Identity(n, n);
      return q.transpose().topLeftCorner(rows, cols);
    }
  }
  return {};
}

}  // namespace

WeightStyle weight_style_from_name(const std::string& name) {
  if (name == "dense_gaussian") return WeightStyle::kDenseGaussian;
  if (name == "axis_aligned") return WeightStyle::kAxisAligned;
  if (name == "diagonal_signs") return WeightStyle::kDiagonalSigns;
  if (name == "orthogonal") return WeightStyle::kOrthogonal;
  fail(ErrorKind::kStructural, "unknown weight style '" + name + "'");
}

std::string weight_style_name(WeightStyle style) {
  switch (style) {
    case WeightStyle::kDenseGaussian: return "dense_gaussian";
    case WeightStyle::kAxisAligned: return "axis_aligned";
    case WeightStyle::kDiagonalSigns: return "diagonal_signs";
    case WeightStyle::kOrthogonal: return "orthogonal";
  }
  return "dense_gaussian";
}

Network random_network(const GeneratorConfig& cfg) {
  if (cfg.dims.size() < 2)
    fail(ErrorKind::kStructural, "generator needs an input width and at least one layer");
  for (int d : cfg.dims)
    if (d <= 0) fail(ErrorKind::kStructural, "layer widths must be positive");
  const std::size_t num_layers = cfg.dims.size() - 1;
  if (cfg.activations.size() != num_layers)
    fail(ErrorKind::kStructural, "need exactly one activation per layer");

  std::mt19937_64 rng(cfg.seed);
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l < num_layers; ++l) {
    const int rows = cfg.dims[l + 1];
    const int cols = cfg.dims[l];
    DenseLayer layer;
    const WeightStyle style = l == 0 ? cfg.weight_style : WeightStyle::kDenseGaussian;
    layer.W = styled_weights(style, rows, cols, rng);
    layer.b = gaussian(rows, 1, rng, 0.5).col(0);
    layer.act = cfg.activations[l];
    layers.push_back(std::move(layer));
  }
  return Network(cfg.dims.front(), std::move(layers));
}

}  // namespace masogeom
