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

#include "masogeom/network.hpp"

#include <cmath>
#include <sstream>

#include "masogeom/errors.hpp"

namespace masogeom {

namespace {

bool all_finite(const MatrixXd& m) { return m.allFinite(); }

void check_input(const Network& net, const VectorXd& x) {
  if (x.size() != net.input_dim()) {
    std::ostringstream os;
    os << "input has dimension " << x.size() << ", network expects "
       << net.input_dim();
    fail(ErrorKind::kInput, os.str());
  }
  if (!x.allFinite()) fail(ErrorKind::kInput, "input has non-finite entries");
}

}  // namespace

Activation Activation::leaky_relu(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) {
    std::ostringstream os;
    os << "leaky_relu eta must lie in (0, 1), got " << eta;
    fail(ErrorKind::kStructural, os.str());
  }
  return {Kind::kLeakyRelu, eta};
}

std::string Activation::name() const {
  switch (kind) {
    case Kind::kIdentity: return "identity";
    case Kind::kRelu: return "relu";
    case Kind::kLeakyRelu: return "leaky_relu";
    case Kind::kAbs: return "abs";
  }
  return "identity";
}

Activation Activation::from_name(const std::string& name, double eta) {
  if (name == "identity") return identity();
  if (name == "relu") return relu();
  if (name == "leaky_relu") return leaky_relu(eta);
  if (name == "abs") return abs();
  fail(ErrorKind::kStructural, "unknown activation '" + name + "'");
}

void DenseLayer::validate() const {
  if (W.rows() == 0 || W.cols() == 0)
    fail(ErrorKind::kStructural, "weight matrix is empty");
  if (b.size() != W.rows()) {
    std::ostringstream os;
    os << "bias has " << b.size() << " entries, weight matrix has " << W.rows()
       << " rows";
    fail(ErrorKind::kStructural, os.str());
  }
  if (!all_finite(W)) fail(ErrorKind::kStructural, "weights are not finite");
  if (!b.allFinite()) fail(ErrorKind::kStructural, "biases are not finite");
  if (act.kind == Activation::Kind::kLeakyRelu && !(act.eta > 0 && act.eta < 1))
    fail(ErrorKind::kStructural, "leaky_relu eta must lie in (0, 1)");
}

MasoLayer::MasoLayer(std::vector<MatrixXd> slopes, MatrixXd offsets)
    : slopes_(std::move(slopes)), offsets_(std::move(offsets)) {
  if (slopes_.empty()) fail(ErrorKind::kStructural, "layer has no pieces");
  const auto k = slopes_.front().rows();
  const auto d = slopes_.front().cols();
  if (k == 0 || d == 0) fail(ErrorKind::kStructural, "layer is empty");
  for (const auto& s : slopes_) {
    if (s.rows() != k || s.cols() != d)
      fail(ErrorKind::kStructural, "slope tensors of a layer differ in shape");
    if (!all_finite(s)) fail(ErrorKind::kStructural, "slopes are not finite");
  }
  if (offsets_.rows() != k || offsets_.cols() != static_cast<Eigen::Index>(slopes_.size()))
    fail(ErrorKind::kStructural, "offset matrix must be K x R");
  if (!all_finite(offsets_)) fail(ErrorKind::kStructural, "offsets are not finite");
}

double MasoLayer::piece_value(int k, int r, const VectorXd& z) const {
  return slopes_[r].row(k).dot(z) + offsets_(k, r);
}

int MasoLayer::argmax_piece(int k, const VectorXd& z) const {
  int best = 0;
  double best_value = piece_value(k, 0, z);
  for (int r = 1; r < pieces(); ++r) {
    const double v = piece_value(k, r, z);
    if (v > best_value) {
      best = r;
      best_value = v;
    }
  }
  return best;
}

VectorXd MasoLayer::evaluate(const VectorXd& z) const {
  VectorXd out = slopes_[0] * z + offsets_.col(0);
  for (int r = 1; r < pieces(); ++r)
    out = out.cwiseMax(slopes_[r] * z + offsets_.col(r));
  return out;
}

MatrixXd MasoLayer::selected_slopes(const std::vector<int>& code) const {
  if (static_cast<int>(code.size()) != units())
    fail(ErrorKind::kStructural, "code length does not match layer width");
  MatrixXd a(units(), input_dim());
  for (int k = 0; k < units(); ++k) {
    const int r = code[k] - 1;
    if (r < 0 || r >= pieces()) fail(ErrorKind::kStructural, "code entry out of range");
    a.row(k) = slopes_[r].row(k);
  }
  return a;
}

VectorXd MasoLayer::selected_offsets(const std::vector<int>& code) const {
  if (static_cast<int>(code.size()) != units())
    fail(ErrorKind::kStructural, "code length does not match layer width");
  VectorXd b(units());
  for (int k = 0; k < units(); ++k) {
    const int r = code[k] - 1;
    if (r < 0 || r >= pieces()) fail(ErrorKind::kStructural, "code entry out of range");
    b(k) = offsets_(k, r);
  }
  return b;
}

MasoLayer lift_layer(const DenseLayer& dense) {
  dense.validate();
  const auto k = dense.W.rows();
  using Kind = Activation::Kind;
  if (dense.act.kind == Kind::kIdentity) {
    return MasoLayer({dense.W}, MatrixXd(dense.b));
  }
  // Piece 1 is the identity piece (W, b); piece 2 is the scaled copy.
  double scale = 0.0;
  switch (dense.act.kind) {
    case Kind::kRelu: scale = 0.0; break;
    case Kind::kLeakyRelu: scale = dense.act.eta; break;
    case Kind::kAbs: scale = -1.0; break;
    case Kind::kIdentity: break;
  }
  MatrixXd offsets(k, 2);
  offsets.col(0) = dense.b;
  offsets.col(1) = scale * dense.b;
  return MasoLayer({dense.W, scale * dense.W}, std::move(offsets));
}

Network::Network(int input_dim, std::vector<DenseLayer> layers)
    : input_dim_(input_dim), dense_(std::move(layers)) {
  if (dense_.empty()) fail(ErrorKind::kStructural, "network has no layers");
  layers_.reserve(dense_.size());
  for (const auto& d : dense_) layers_.push_back(lift_layer(d));
  check_chain();
}

Network::Network(int input_dim, std::vector<MasoLayer> layers)
    : input_dim_(input_dim), layers_(std::move(layers)) {
  if (layers_.empty()) fail(ErrorKind::kStructural, "network has no layers");
  check_chain();
}

void Network::check_chain() const {
  int prev = input_dim_;
  if (prev <= 0) fail(ErrorKind::kStructural, "input dimension must be positive");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i].input_dim() != prev) {
      std::ostringstream os;
      os << "layer " << i + 1 << " expects input dimension "
         << layers_[i].input_dim() << " but receives " << prev;
      fail(ErrorKind::kStructural, os.str());
    }
    prev = layers_[i].units();
  }
}

const DenseLayer& Network::dense(int l) const {
  if (dense_.empty())
    fail(ErrorKind::kUnsupported, "network was not built from dense layers");
  return dense_.at(l - 1);
}

LayerCodes LayerCodes::prefix(int l) const {
  if (l > depth()) fail(ErrorKind::kStructural, "prefix longer than codes");
  return LayerCodes{{codes.begin(), codes.begin() + l}};
}

std::string LayerCodes::key() const {
  std::string out;
  for (std::size_t l = 0; l < codes.size(); ++l) {
    if (l) out += '|';
    for (int c : codes[l]) out += static_cast<char>('0' + c);
  }
  return out;
}

AffineMap AffineMap::identity(int dim) {
  return {MatrixXd::Identity(dim, dim), VectorXd::Zero(dim)};
}

std::vector<VectorXd> forward(const Network& net, const VectorXd& x) {
  check_input(net, x);
  std::vector<VectorXd> out;
  out.reserve(net.depth());
  VectorXd z = x;
  for (int l = 1; l <= net.depth(); ++l) {
    z = net.layer(l).evaluate(z);
    out.push_back(z);
  }
  return out;
}

LayerCodes region_code(const Network& net, const VectorXd& x, int up_to) {
  check_input(net, x);
  if (up_to < 0 || up_to > net.depth())
    fail(ErrorKind::kStructural, "layer index out of range");
  LayerCodes codes;
  codes.codes.reserve(up_to);
  VectorXd z = x;
  for (int l = 1; l <= up_to; ++l) {
    const auto& layer = net.layer(l);
    std::vector<int> c(layer.units());
    for (int k = 0; k < layer.units(); ++k) c[k] = layer.argmax_piece(k, z) + 1;
    codes.codes.push_back(std::move(c));
    if (l < up_to) z = layer.evaluate(z);
  }
  return codes;
}

LayerCodes region_code(const Network& net, const VectorXd& x) {
  return region_code(net, x, net.depth());
}

AffineMap compose_layer(const MasoLayer& layer, const std::vector<int>& code,
                        const AffineMap& prev) {
  const MatrixXd a = layer.selected_slopes(code);
  return {a * prev.A, a * prev.b + layer.selected_offsets(code)};
}

AffineMap region_affine(const Network& net, const LayerCodes& codes, int up_to) {
  if (up_to < 0 || up_to > net.depth())
    fail(ErrorKind::kStructural, "layer index out of range");
  if (codes.depth() < up_to) {
    std::ostringstream os;
    os << "codes cover " << codes.depth() << " layers, " << up_to << " required";
    fail(ErrorKind::kStructural, os.str());
  }
  AffineMap map = AffineMap::identity(net.input_dim());
  for (int l = 1; l <= up_to; ++l)
    map = compose_layer(net.layer(l), codes.codes[l - 1], map);
  return map;
}

Network slice_network(const Network& net, const VectorXd& origin,
                      const MatrixXd& basis) {
  if (origin.size() != net.input_dim() || basis.rows() != net.input_dim())
    fail(ErrorKind::kStructural, "slice does not match network input dimension");
  const int slice_dim = static_cast<int>(basis.cols());
  if (net.has_dense()) {
    std::vector<DenseLayer> layers;
    for (int l = 1; l <= net.depth(); ++l) layers.push_back(net.dense(l));
    DenseLayer& first = layers.front();
    first.b = first.W * origin + first.b;
    first.W = first.W * basis;
    return Network(slice_dim, std::move(layers));
  }
  std::vector<MasoLayer> layers;
  const auto& first = net.layer(1);
  std::vector<MatrixXd> slopes;
  MatrixXd offsets = first.offsets();
  for (int r = 0; r < first.pieces(); ++r) {
    slopes.push_back(first.slopes(r) * basis);
    offsets.col(r) += first.slopes(r) * origin;
  }
  layers.emplace_back(std::move(slopes), std::move(offsets));
  for (int l = 2; l <= net.depth(); ++l) layers.push_back(net.layer(l));
  return Network(slice_dim, std::move(layers));
}

double lipschitz_estimate(const Network& net) {
  // Any code selects one row per unit, so the Frobenius norm built from the
  // largest row of every unit bounds the spectral norm of every region map.
  double bound = 1.0;
  for (int l = 1; l <= net.depth(); ++l) {
    const auto& layer = net.layer(l);
    double rows = 0.0;
    for (int k = 0; k < layer.units(); ++k) {
      double best = 0.0;
      for (int r = 0; r < layer.pieces(); ++r)
        best = std::max(best, layer.slope(k, r).squaredNorm());
      rows += best;
    }
    bound *= std::sqrt(rows);
  }
  return bound;
}

}  // namespace masogeom
