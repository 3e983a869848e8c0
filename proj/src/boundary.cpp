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

#include "masogeom/boundary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>

#include "masogeom/errors.hpp"

namespace masogeom {

namespace {

// Assigns ids to points, merging any two within `snap` of each other.
class PointSnapper {
 public:
  explicit PointSnapper(double snap) : snap_(snap) {}

  std::size_t id(const Point2& p) {
    const auto cx = bin(p.x());
    const auto cy = bin(p.y());
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = bins_.find({cx + dx, cy + dy});
        if (it == bins_.end()) continue;
        for (std::size_t i : it->second)
          if ((points_[i] - p).norm() <= snap_) return i;
      }
    }
    points_.push_back(p);
    bins_[{cx, cy}].push_back(points_.size() - 1);
    return points_.size() - 1;
  }

 private:
  std::int64_t bin(double v) const { return static_cast<std::int64_t>(std::floor(v / snap_)); }

  double snap_;
  std::vector<Point2> points_;
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>> bins_;
};

BoundarySegment make_segment(const std::pair<Point2, Point2>& chord, const Line2D& line,
                             std::size_t cell) {
  BoundarySegment seg;
  // Direction (-a_y, a_x) puts the positive side on the right.
  const Point2 dir(-line.normal.y(), line.normal.x());
  const bool forward = (chord.second - chord.first).dot(dir) >= 0.0;
  seg.p0 = forward ? chord.first : chord.second;
  seg.p1 = forward ? chord.second : chord.first;
  seg.cell = cell;
  seg.alpha = line.normal;
  seg.beta = line.offset;
  return seg;
}

const DenseLayer& two_layer_first(const Network& net, Activation::Kind kind,
                                  const char* what) {
  if (net.depth() != 2 || net.output_dim() != 1)
    fail(ErrorKind::kPrecondition, std::string(what) + " needs a two-layer scalar network");
  if (!net.has_dense())
    fail(ErrorKind::kPrecondition, std::string(what) + " needs dense layers");
  const DenseLayer& first = net.dense(1);
  if (first.act.kind != kind)
    fail(ErrorKind::kPrecondition, std::string(what) + ": wrong first-layer activation");
  if (net.dense(2).act.kind != Activation::Kind::kIdentity)
    fail(ErrorKind::kPrecondition, std::string(what) + " needs an identity output layer");
  require_orthogonal_first_layer(net);
  return first;
}

}  // namespace

PiecewiseLinearPath unit_edge(const Network& net, int k, int l, const Partition& partition) {
  if (l < 1 || l > net.depth()) fail(ErrorKind::kStructural, "layer index out of range");
  if (partition.depth != l - 1)
    fail(ErrorKind::kStructural, "unit edges of layer l need a partition of depth l-1");
  const MasoLayer& layer = net.layer(l);
  if (k < 0 || k >= layer.units()) fail(ErrorKind::kStructural, "unit index out of range");
  PiecewiseLinearPath path;
  for (std::size_t c = 0; c < partition.cells.size(); ++c) {
    const Cell& cell = partition.cells[c];
    const auto line = unit_level_line(layer, cell.affine, k);
    if (!line) continue;
    const auto chord = clip_line(cell.polygon, *line);
    if (!chord) continue;
    path.segments.push_back(make_segment(*chord, *line, c));
  }
  path.chains = chain_segments(path.segments);
  return path;
}

PiecewiseLinearPath decision_boundary(const Network& net, const Partition& partition) {
  const MasoLayer& last = net.layer(net.depth());
  if (last.units() != 1 || last.pieces() != 1)
    fail(ErrorKind::kStructural,
         "decision boundaries need a scalar identity output layer");
  return unit_edge(net, 0, net.depth(), partition);
}

std::vector<std::vector<std::size_t>> chain_segments(
    const std::vector<BoundarySegment>& segments, double snap) {
  PointSnapper snapper(snap);
  std::vector<std::array<std::size_t, 2>> ends(segments.size());
  std::map<std::size_t, std::vector<std::size_t>> incident;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    ends[s] = {snapper.id(segments[s].p0), snapper.id(segments[s].p1)};
    incident[ends[s][0]].push_back(s);
    incident[ends[s][1]].push_back(s);
  }
  std::vector<bool> used(segments.size(), false);
  std::vector<std::vector<std::size_t>> chains;

  auto walk = [&](std::size_t node) {
    std::vector<std::size_t> chain;
    while (true) {
      std::size_t next = segments.size();
      for (std::size_t s : incident[node]) {
        if (!used[s]) {
          next = s;
          break;
        }
      }
      if (next == segments.size()) break;
      used[next] = true;
      chain.push_back(next);
      node = ends[next][0] == node ? ends[next][1] : ends[next][0];
    }
    return chain;
  };

  for (const auto& [node, segs] : incident) {
    if (segs.size() % 2 == 1) {
      auto chain = walk(node);
      if (!chain.empty()) chains.push_back(std::move(chain));
    }
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    auto chain = walk(ends[s][0]);
    if (!chain.empty()) chains.push_back(std::move(chain));
  }
  return chains;
}

std::pair<VectorXd, double> boundary_hyperplane(const Network& net, const LayerCodes& codes) {
  const int last = net.depth();
  const MasoLayer& out = net.layer(last);
  if (out.units() != 1 || out.pieces() != 1)
    fail(ErrorKind::kStructural, "boundary hyperplanes need a scalar identity output layer");
  if (codes.depth() < last - 1)
    fail(ErrorKind::kStructural, "codes must cover every hidden layer");
  const AffineMap hidden = region_affine(net, codes, last - 1);
  const AffineMap full = compose_layer(out, {1}, hidden);
  return {full.A.row(0).transpose(), full.b(0)};
}

double dihedral_angle(const VectorXd& a1, const VectorXd& a2) {
  const double n1 = a1.norm();
  const double n2 = a2.norm();
  if (n1 == 0.0 || n2 == 0.0 || a1.size() != a2.size())
    fail(ErrorKind::kDegenerate, "dihedral angle of a zero or mismatched normal");
  return std::min(1.0, std::abs(a1.dot(a2)) / (n1 * n2));
}

void require_orthogonal_first_layer(const Network& net, double tol) {
  const MasoLayer& first = net.layer(1);
  const MatrixXd& w = first.slopes(0);
  for (int i = 0; i < w.rows(); ++i) {
    for (int j = i + 1; j < w.rows(); ++j) {
      const double dot = w.row(i).dot(w.row(j));
      if (std::abs(dot) > tol) {
        std::ostringstream os;
        os << "first-layer rows " << i << " and " << j << " are not orthogonal (dot = "
           << dot << ")";
        fail(ErrorKind::kPrecondition, os.str());
      }
    }
  }
}

ClosedFormCos relu_orthogonal_cos(const Network& net, const std::vector<int>& neighbor_code,
                                  int flipped) {
  const DenseLayer& first = two_layer_first(net, Activation::Kind::kRelu, "relu_orthogonal_cos");
  const int width = static_cast<int>(first.W.rows());
  if (static_cast<int>(neighbor_code.size()) != width || flipped < 0 || flipped >= width)
    fail(ErrorKind::kStructural, "neighbor code does not match the first layer");
  const VectorXd out = net.dense(2).W.row(0).transpose();
  auto weight = [&](int d) { return std::abs(out(d)) * first.W.row(d).norm(); };
  const double c = weight(flipped);
  double others = 0.0;
  for (int d = 0; d < width; ++d) {
    if (d == flipped || neighbor_code[d] != 1) continue;
    others += weight(d) * weight(d);
  }
  if (others == 0.0 || c == 0.0) return {0.0, true};
  return {1.0 / std::sqrt(1.0 + c * c / others), false};
}

ClosedFormCos abs_orthogonal_cos(const Network& net, int flipped) {
  const DenseLayer& first = two_layer_first(net, Activation::Kind::kAbs, "abs_orthogonal_cos");
  const int width = static_cast<int>(first.W.rows());
  if (flipped < 0 || flipped >= width) fail(ErrorKind::kStructural, "unit index out of range");
  const VectorXd out = net.dense(2).W.row(0).transpose();
  auto weight2 = [&](int d) {
    const double w = std::abs(out(d)) * first.W.row(d).norm();
    return w * w;
  };
  const double u = weight2(flipped);
  if (u == 0.0) return {0.0, true};
  double v = 0.0;
  for (int d = 0; d < width; ++d)
    if (d != flipped) v += weight2(d);
  return {1.0 - 2.0 / (1.0 + v / u), false};
}

double partition_polynomial(const Network& net, const VectorXd& x, int l) {
  if (l < 1 || l > net.depth()) fail(ErrorKind::kStructural, "layer index out of range");
  const auto z = forward(net, x);
  double product = 1.0;
  for (int i = 0; i < l; ++i) product *= z[i].prod();
  return product;
}

std::vector<FacetPair> adjacent_facet_pairs(const PiecewiseLinearPath& path,
                                            const Partition& partition) {
  std::vector<FacetPair> pairs;
  for (const auto& chain : path.chains) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const BoundarySegment& a = path.segments[chain[i]];
      const BoundarySegment& b = path.segments[chain[i + 1]];
      if (a.cell == b.cell) continue;
      FacetPair pair;
      pair.segment_a = chain[i];
      pair.segment_b = chain[i + 1];
      pair.cell_a = a.cell;
      pair.cell_b = b.cell;
      // Shared endpoint: the closest pair of endpoints.
      const std::array<Point2, 2> pa{a.p0, a.p1};
      const std::array<Point2, 2> pb{b.p0, b.p1};
      double best = std::numeric_limits<double>::infinity();
      for (const auto& p : pa)
        for (const auto& q : pb)
          if ((p - q).norm() < best) {
            best = (p - q).norm();
            pair.joint = 0.5 * (p + q);
          }
      const auto& ca = partition.cells[a.cell].codes.codes;
      const auto& cb = partition.cells[b.cell].codes.codes;
      for (std::size_t l = 0; l < ca.size() && l < cb.size(); ++l)
        for (std::size_t k = 0; k < ca[l].size(); ++k)
          if (ca[l][k] != cb[l][k])
            pair.flipped.emplace_back(static_cast<int>(l) + 1, static_cast<int>(k));
      pair.cos = dihedral_angle(a.alpha, b.alpha);
      pairs.push_back(std::move(pair));
    }
  }
  return pairs;
}

}  // namespace masogeom
