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

// Unit edges, decision boundaries and their curvature.
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "masogeom/arrangement.hpp"

namespace masogeom {

/// Chord of a unit's level line inside one cell. The positive side of
/// <alpha, x> + beta lies to the right of p0 -> p1.
struct BoundarySegment {
  Point2 p0;
  Point2 p1;
  std::size_t cell = 0;  // host cell in the partition the edge was cut from
  VectorXd alpha;        // un-normalized input-space normal
  double beta = 0.0;
};

struct PiecewiseLinearPath {
  std::vector<BoundarySegment> segments;
  /// Connected runs of segment indices; consecutive entries share an endpoint.
  std::vector<std::vector<std::size_t>> chains;
};

/// Endpoint snap radius used when chaining segments.
inline constexpr double kSnapRadius = 1e-9;

/// Level set of unit k (0-based) of layer l over a partition of depth l-1.
PiecewiseLinearPath unit_edge(const Network& net, int k, int l, const Partition& partition);

/// Zero set of the scalar output over a partition of depth L-1.
PiecewiseLinearPath decision_boundary(const Network& net, const Partition& partition);

/// Groups segments into chains by shared endpoints.
std::vector<std::vector<std::size_t>> chain_segments(
    const std::vector<BoundarySegment>& segments, double snap = kSnapRadius);

/// f(x) = <alpha, x> + beta on the region of `codes` (through layer L-1).
std::pair<VectorXd, double> boundary_hyperplane(const Network& net, const LayerCodes& codes);

/// |cos| of the angle between two facet normals, in [0, 1].
double dihedral_angle(const VectorXd& a1, const VectorXd& a2);

struct ClosedFormCos {
  double value = 0.0;
  bool degenerate = false;  // formula undefined for this configuration
};

/// Two-layer network, ReLU first layer with orthogonal rows. `neighbor_code`
/// is the first-layer code of the region where unit `flipped` is inactive
/// (code 2); the other region has it active. Returns cos of the angle
/// between the two facets, (1 + c^2 / S)^(-1/2) with c the flipped unit's
/// weight product and S the squared sum over the other active units.
ClosedFormCos relu_orthogonal_cos(const Network& net, const std::vector<int>& neighbor_code,
                                  int flipped);

/// Two-layer network, abs first layer with orthogonal rows. Signed cosine
/// 1 - 2 (1 + V / U)^(-1) with U the flipped unit's squared weight product
/// and V the sum over the other units; the dihedral value is its magnitude.
ClosedFormCos abs_orthogonal_cos(const Network& net, int flipped);

/// Throws kPrecondition unless the first-layer rows are pairwise orthogonal
/// within `tol`.
void require_orthogonal_first_layer(const Network& net, double tol = 1e-10);

/// Product of every unit output of layers 1..l.
double partition_polynomial(const Network& net, const VectorXd& x, int l);

/// Two decision-boundary facets meeting at a chain joint.
struct FacetPair {
  std::size_t segment_a = 0;
  std::size_t segment_b = 0;
  std::size_t cell_a = 0;
  std::size_t cell_b = 0;
  Point2 joint;
  std::vector<std::pair<int, int>> flipped;  // (layer, unit) whose codes differ
  double cos = 0.0;
};

std::vector<FacetPair> adjacent_facet_pairs(const PiecewiseLinearPath& path,
                                            const Partition& partition);

}  // namespace masogeom
