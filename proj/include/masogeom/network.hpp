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

// Piecewise-affine networks as compositions of max-affine spline operators.
//
// Every layer is stored in lifted form: unit k of a layer outputs
//   z_k = max_r ( <slope(k, r), z_prev> + offset(k, r) ),
// with pieces r = 0..R-1 internally. Region codes are reported 1-based
// (code value 1 is piece 0) to match the usual {1..R} notation.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace masogeom {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Activation {
  enum class Kind { kIdentity, kRelu, kLeakyRelu, kAbs };

  Kind kind = Kind::kIdentity;
  double eta = 0.0;  // leaky_relu only, strictly inside (0, 1)

  static Activation identity() { return {Kind::kIdentity, 0.0}; }
  static Activation relu() { return {Kind::kRelu, 0.0}; }
  static Activation leaky_relu(double eta);
  static Activation abs() { return {Kind::kAbs, 0.0}; }

  /// Number of affine pieces of the lifted unit: 1 for identity, 2 otherwise.
  int pieces() const { return kind == Kind::kIdentity ? 1 : 2; }
  std::string name() const;
  static Activation from_name(const std::string& name, double eta = 0.0);

  bool operator==(const Activation&) const = default;
};

struct DenseLayer {
  MatrixXd W;  // D(l) x D(l-1)
  VectorXd b;  // D(l)
  Activation act;

  /// Throws kStructural on size mismatch or non-finite entries.
  void validate() const;
};

class MasoLayer {
 public:
  /// `slopes[r]` is the K x D matrix whose row k is slope(k, r);
  /// `offsets` is K x R.
  MasoLayer(std::vector<MatrixXd> slopes, MatrixXd offsets);

  int units() const { return static_cast<int>(offsets_.rows()); }
  int pieces() const { return static_cast<int>(slopes_.size()); }
  int input_dim() const { return static_cast<int>(slopes_.front().cols()); }

  auto slope(int k, int r) const { return slopes_[r].row(k); }
  double offset(int k, int r) const { return offsets_(k, r); }
  const MatrixXd& slopes(int r) const { return slopes_[r]; }
  const MatrixXd& offsets() const { return offsets_; }

  /// Affine value of piece r of unit k at z.
  double piece_value(int k, int r, const VectorXd& z) const;
  /// Winning piece (0-based), ties toward the smallest index.
  int argmax_piece(int k, const VectorXd& z) const;
  VectorXd evaluate(const VectorXd& z) const;

  /// Slope matrix / offset vector selected by a 1-based per-unit code.
  MatrixXd selected_slopes(const std::vector<int>& code) const;
  VectorXd selected_offsets(const std::vector<int>& code) const;

 private:
  std::vector<MatrixXd> slopes_;
  MatrixXd offsets_;
};

MasoLayer lift_layer(const DenseLayer& dense);

class Network {
 public:
  Network(int input_dim, std::vector<DenseLayer> layers);
  /// Layers without a dense origin (general max-affine units).
  Network(int input_dim, std::vector<MasoLayer> layers);

  int input_dim() const { return input_dim_; }
  int depth() const { return static_cast<int>(layers_.size()); }
  int output_dim() const { return layers_.back().units(); }

  /// 1-based layer access, matching z^(l) numbering.
  const MasoLayer& layer(int l) const { return layers_.at(l - 1); }
  bool has_dense() const { return !dense_.empty(); }
  const DenseLayer& dense(int l) const;
  int width(int l) const { return layer(l).units(); }

 private:
  void check_chain() const;

  int input_dim_;
  std::vector<MasoLayer> layers_;
  std::vector<DenseLayer> dense_;
};

struct LayerCodes {
  std::vector<std::vector<int>> codes;  // codes[l-1][k] in {1..R}

  int depth() const { return static_cast<int>(codes.size()); }
  LayerCodes prefix(int l) const;
  std::string key() const;
  bool operator==(const LayerCodes&) const = default;
};

struct AffineMap {
  MatrixXd A;
  VectorXd b;

  static AffineMap identity(int dim);
  VectorXd apply(const VectorXd& x) const { return A * x + b; }
};

/// Per-layer outputs z^(1)..z^(L). Throws kInput on bad x.
std::vector<VectorXd> forward(const Network& net, const VectorXd& x);
LayerCodes region_code(const Network& net, const VectorXd& x);
/// Region code through layer `up_to` only.
LayerCodes region_code(const Network& net, const VectorXd& x, int up_to);

/// One layer of composition: (A, b) -> (A_r A, A_r b + B_r).
AffineMap compose_layer(const MasoLayer& layer, const std::vector<int>& code,
                        const AffineMap& prev);
/// Exact map x -> z^(up_to) on the region selected by `codes`.
AffineMap region_affine(const Network& net, const LayerCodes& codes, int up_to);

/// Pre-composes the network with the affine slice x = origin + basis * t.
Network slice_network(const Network& net, const VectorXd& origin,
                      const MatrixXd& basis);

/// Product of spectral norms of all piece slopes; a Lipschitz estimate.
double lipschitz_estimate(const Network& net);

enum class WeightStyle { kDenseGaussian, kAxisAligned, kDiagonalSigns, kOrthogonal };

WeightStyle weight_style_from_name(const std::string& name);
std::string weight_style_name(WeightStyle style);

struct GeneratorConfig {
  std::vector<int> dims;                // D(0), D(1), ..., D(L)
  std::vector<Activation> activations;  // one per layer
  WeightStyle weight_style = WeightStyle::kDenseGaussian;
  std::uint64_t seed = 0;
};

/// Deterministic random network. The weight style shapes the first layer
/// (the one that partitions the input space directly); deeper layers are
/// dense Gaussian.
Network random_network(const GeneratorConfig& cfg);

}  // namespace masogeom
