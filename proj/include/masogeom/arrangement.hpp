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

// Exact partition of a 2D convex domain into the linear regions of a
// network, built layer by layer: every cell of depth l-1 is cut by the
// switching line of each unit of layer l, pulled back through the cell's
// composed affine map.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "masogeom/network.hpp"
#include "masogeom/polygon.hpp"

namespace masogeom {

inline constexpr std::size_t kDefaultCellCap = 1'000'000;

struct Cell {
  ConvexPolygon polygon;
  LayerCodes codes;
  AffineMap affine;   // input -> z^(depth)
  VectorXd centroid;  // subdivided power-diagram entry of the last layer
  double radius = 0.0;
};

struct SubdivisionStats {
  std::vector<std::size_t> cells_per_depth;          // R^(0) = 1, R^(1), ...
  std::vector<std::vector<std::size_t>> crossings;   // H^(l)_k, l = 1..depth
  std::vector<int> cutting_units;                    // K^(l); 0 for identity layers
  std::vector<double> upper_bounds;                  // bound on R^(l), l = 1..depth

  int depth() const { return static_cast<int>(crossings.size()); }
  /// R^(l) == R^(l-1) + sum_k H^(l)_k for every layer.
  bool identity_holds() const;
  bool bounds_hold() const;
  /// Fills upper_bounds from cells_per_depth and cutting_units:
  /// R^(1) <= 2^K(1) and R^(l) <= R^(1) * prod_{j=2..l} (1 + K^(j)).
  void compute_bounds();
};

struct Partition {
  std::vector<Cell> cells;
  ConvexPolygon domain;
  int depth = 0;
  SubdivisionStats history;
};

/// Switching line of unit k (0-based) of `layer` on a region whose input map
/// is `cell_affine`; positive side is piece 1. Nothing when the unit is
/// constant on the region. Throws kUnsupported unless the layer has R = 2.
std::optional<Line2D> unit_cut_line(const MasoLayer& layer, const AffineMap& cell_affine,
                                    int k);
std::optional<Line2D> unit_cut_line(const Network& net, const Cell& cell, int l, int k);

/// Zero set of unit k's pre-activation for R = 1 (identity) layers, or the
/// switching line for R = 2 layers.
std::optional<Line2D> unit_level_line(const MasoLayer& layer, const AffineMap& cell_affine,
                                      int k);

Partition enumerate_partition(const Network& net, const ConvexPolygon& domain, int up_to,
                              std::size_t cell_cap = kDefaultCellCap);

struct Location {
  std::optional<std::size_t> cell;      // set when unambiguous
  std::vector<std::size_t> candidates;  // every cell within kEdgeEps
  bool ambiguous() const { return !cell.has_value(); }
};

/// Throws kOutOfDomain when x is not strictly inside the domain.
Location locate_cell(const Partition& partition, const Point2& x);

SubdivisionStats subdivision_stats(const Partition& partition);

}  // namespace masogeom
