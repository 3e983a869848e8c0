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

#include "masogeom/arrangement.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "masogeom/errors.hpp"
#include "masogeom/power_diagram.hpp"

namespace masogeom {

bool SubdivisionStats::identity_holds() const {
  if (cells_per_depth.size() != crossings.size() + 1) return false;
  for (std::size_t l = 0; l < crossings.size(); ++l) {
    std::size_t added = 0;
    for (auto h : crossings[l]) added += h;
    if (cells_per_depth[l + 1] != cells_per_depth[l] + added) return false;
  }
  return true;
}

bool SubdivisionStats::bounds_hold() const {
  if (upper_bounds.size() != crossings.size()) return false;
  for (std::size_t l = 0; l < upper_bounds.size(); ++l)
    if (static_cast<double>(cells_per_depth[l + 1]) > upper_bounds[l]) return false;
  return true;
}

void SubdivisionStats::compute_bounds() {
  upper_bounds.clear();
  if (crossings.empty()) return;
  upper_bounds.push_back(std::pow(2.0, cutting_units.at(0)));
  const double first = static_cast<double>(cells_per_depth.at(1));
  double product = 1.0;
  for (std::size_t l = 1; l < crossings.size(); ++l) {
    product *= 1.0 + cutting_units.at(l);
    upper_bounds.push_back(first * product);
  }
}

std::optional<Line2D> unit_cut_line(const MasoLayer& layer, const AffineMap& cell_affine,
                                    int k) {
  if (layer.pieces() != 2) {
    std::ostringstream os;
    os << "unit cut lines need R = 2 pieces, layer has R = " << layer.pieces();
    fail(ErrorKind::kUnsupported, os.str());
  }
  if (cell_affine.A.rows() != layer.input_dim() || cell_affine.A.cols() != 2)
    fail(ErrorKind::kStructural, "cell map does not feed this layer from a 2D input");
  const VectorXd diff = (layer.slope(k, 0) - layer.slope(k, 1)).transpose();
  Line2D line;
  line.normal = cell_affine.A.transpose() * diff;
  line.offset = diff.dot(cell_affine.b) + layer.offset(k, 0) - layer.offset(k, 1);
  if (line.normal.norm() < kDegenerateEps) return std::nullopt;
  return line;
}

std::optional<Line2D> unit_cut_line(const Network& net, const Cell& cell, int l, int k) {
  if (cell.codes.depth() != l - 1)
    fail(ErrorKind::kStructural, "cell depth must be one less than the cutting layer");
  return unit_cut_line(net.layer(l), cell.affine, k);
}

std::optional<Line2D> unit_level_line(const MasoLayer& layer, const AffineMap& cell_affine,
                                      int k) {
  if (layer.pieces() == 2) return unit_cut_line(layer, cell_affine, k);
  if (layer.pieces() != 1)
    fail(ErrorKind::kUnsupported, "level lines need R = 1 or R = 2 pieces");
  if (cell_affine.A.cols() != 2)
    fail(ErrorKind::kStructural, "cell map does not start from a 2D input");
  const VectorXd a = layer.slope(k, 0).transpose();
  Line2D line;
  line.normal = cell_affine.A.transpose() * a;
  line.offset = a.dot(cell_affine.b) + layer.offset(k, 0);
  if (line.normal.norm() < kDegenerateEps) return std::nullopt;
  return line;
}

namespace {

struct Piece {
  ConvexPolygon polygon;
  std::vector<int> code;
};

void finish_cell(const MasoLayer& layer, Cell& cell, std::vector<int> code) {
  CentroidRadius entry = subdivided_entry(layer, code, cell.affine);
  cell.affine = compose_layer(layer, code, cell.affine);
  cell.centroid = std::move(entry.centroid);
  cell.radius = entry.radius;
  cell.codes.codes.push_back(std::move(code));
}

void check_cell_cap(std::size_t count, std::size_t cap, int layer) {
  if (count > cap) {
    std::ostringstream os;
    os << "partition exceeds the cell cap of " << cap << " while cutting layer "
       << layer;
    fail(ErrorKind::kCapacity, os.str());
  }
}

}  // namespace

Partition enumerate_partition(const Network& net, const ConvexPolygon& domain, int up_to,
                              std::size_t cell_cap) {
  if (net.input_dim() != 2)
    fail(ErrorKind::kStructural, "exact enumeration needs a 2D input; slice the network first");
  if (up_to < 0 || up_to > net.depth())
    fail(ErrorKind::kStructural, "enumeration depth out of range");
  for (int l = 1; l <= up_to; ++l) {
    if (net.layer(l).pieces() > 2)
      fail(ErrorKind::kUnsupported, "enumeration supports R <= 2 layers only");
  }

  Partition part;
  part.domain = domain;
  part.depth = up_to;
  Cell root;
  root.polygon = domain;
  root.affine = AffineMap::identity(2);
  root.centroid = VectorXd::Zero(2);
  part.cells.push_back(std::move(root));
  part.history.cells_per_depth.push_back(1);

  for (int l = 1; l <= up_to; ++l) {
    const MasoLayer& layer = net.layer(l);
    const int units = layer.units();
    std::vector<std::size_t> crossings(units, 0);
    std::vector<Cell> next;
    next.reserve(part.cells.size());

    if (layer.pieces() == 1) {
      for (auto& cell : part.cells) {
        finish_cell(layer, cell, std::vector<int>(units, 1));
        next.push_back(std::move(cell));
      }
      part.history.cutting_units.push_back(0);
    } else {
      std::size_t running = part.cells.size();
      for (auto& cell : part.cells) {
        std::vector<Piece> pieces{{cell.polygon, {}}};
        for (int k = 0; k < units; ++k) {
          const std::optional<Line2D> line = unit_cut_line(layer, cell.affine, k);
          std::vector<Piece> cut;
          cut.reserve(pieces.size() * 2);
          for (auto& piece : pieces) {
            if (!line) {
              // Constant pre-activation on the cell: one side only.
              const VectorXd diff = (layer.slope(k, 0) - layer.slope(k, 1)).transpose();
              const double value = diff.dot(cell.affine.b) + layer.offset(k, 0) -
                                   layer.offset(k, 1);
              piece.code.push_back(value >= 0.0 ? 1 : 2);
              cut.push_back(std::move(piece));
              continue;
            }
            auto [neg, pos] = split_by_line(piece.polygon, *line, EdgeTag{l, k});
            if (neg && pos) {
              ++crossings[k];
              ++running;
              check_cell_cap(running, cell_cap, l);
            }
            if (pos) {
              std::vector<int> code = piece.code;
              code.push_back(1);
              cut.push_back({std::move(*pos), std::move(code)});
            }
            if (neg) {
              piece.code.push_back(2);
              cut.push_back({std::move(*neg), std::move(piece.code)});
            }
          }
          pieces = std::move(cut);
        }
        for (auto& piece : pieces) {
          Cell child;
          child.polygon = std::move(piece.polygon);
          child.codes = cell.codes;
          child.affine = cell.affine;
          finish_cell(layer, child, std::move(piece.code));
          next.push_back(std::move(child));
        }
      }
      part.history.cutting_units.push_back(units);
    }
    part.cells = std::move(next);
    check_cell_cap(part.cells.size(), cell_cap, l);
    part.history.cells_per_depth.push_back(part.cells.size());
    part.history.crossings.push_back(std::move(crossings));
  }
  part.history.compute_bounds();
  return part;
}

Location locate_cell(const Partition& partition, const Point2& x) {
  if (!x.allFinite() || partition.domain.inner_distance(x) <= 0.0)
    fail(ErrorKind::kOutOfDomain, "point is not strictly inside the partition domain");
  Location loc;
  std::optional<std::size_t> interior;
  for (std::size_t i = 0; i < partition.cells.size(); ++i) {
    const ConvexPolygon& poly = partition.cells[i].polygon;
    const double d = poly.inner_distance(x);
    if (d < -kEdgeEps) continue;
    // Domain edges never make a point ambiguous.
    double internal = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < poly.size(); ++e) {
      if (poly.tags[e].is_domain()) continue;
      const auto [a, b] = poly.edge(e);
      const Point2 dir = b - a;
      const double s = (dir.x() * (x - a).y() - dir.y() * (x - a).x()) / dir.norm();
      internal = std::min(internal, s);
    }
    if (internal < -kEdgeEps) continue;
    loc.candidates.push_back(i);
    if (internal > kEdgeEps) interior = i;
  }
  if (interior && loc.candidates.size() == 1) loc.cell = interior;
  if (loc.candidates.empty()) {
    // Only possible when a sliver below kMinArea was dropped.
    fail(ErrorKind::kOutOfDomain, "point falls in a discarded degenerate sliver");
  }
  return loc;
}

SubdivisionStats subdivision_stats(const Partition& partition) {
  SubdivisionStats stats = partition.history;
  stats.compute_bounds();
  return stats;
}

}  // namespace masogeom
