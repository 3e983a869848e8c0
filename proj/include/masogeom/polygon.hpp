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

#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace masogeom {

using Point2 = Eigen::Vector2d;

/// Cells thinner than this are treated as numerically empty.
inline constexpr double kMinArea = 1e-12;
/// Cut normals shorter than this mean the unit is constant on the cell.
inline constexpr double kDegenerateEps = 1e-12;
/// Points closer than this to a cell edge are reported as ambiguous.
inline constexpr double kEdgeEps = 1e-9;

/// Which cut produced a polygon edge. Layer 0 marks the domain boundary.
struct EdgeTag {
  int layer = 0;
  int unit = -1;

  bool is_domain() const { return layer == 0; }
  bool operator==(const EdgeTag&) const = default;
};

/// {x : <normal, x> + offset = 0}
struct Line2D {
  Point2 normal;
  double offset = 0.0;

  double eval(const Point2& p) const { return normal.dot(p) + offset; }
  double distance(const Point2& p) const { return std::abs(eval(p)) / normal.norm(); }
};

/// Counter-clockwise convex polygon. tags[i] labels the edge from
/// vertices[i] to vertices[i + 1].
struct ConvexPolygon {
  std::vector<Point2> vertices;
  std::vector<EdgeTag> tags;

  static ConvexPolygon rectangle(double xmin, double ymin, double xmax, double ymax);
  /// Builds from CCW points; all edges tagged as domain edges.
  static ConvexPolygon from_points(std::vector<Point2> points);

  std::size_t size() const { return vertices.size(); }
  double area() const;
  Point2 centroid() const;
  bool is_convex(double tol = 1e-12) const;
  /// Smallest signed distance from p to the edge lines (positive inside).
  double inner_distance(const Point2& p) const;
  double boundary_distance(const Point2& p) const;
  Eigen::AlignedBox2d bounds() const;
  std::pair<Point2, Point2> edge(std::size_t i) const {
    return {vertices[i], vertices[(i + 1) % vertices.size()]};
  }
};

/// poly ∩ {x : sign * (<n, x> + b) >= 0}; nothing if the result is thinner
/// than kMinArea. New edges along the line receive `tag`.
std::optional<ConvexPolygon> clip_halfplane(const ConvexPolygon& poly, const Line2D& line,
                                            int sign, EdgeTag tag = {});

/// (negative side, positive side).
std::pair<std::optional<ConvexPolygon>, std::optional<ConvexPolygon>> split_by_line(
    const ConvexPolygon& poly, const Line2D& line, EdgeTag tag = {});

/// The chord line ∩ poly, if it has positive length.
std::optional<std::pair<Point2, Point2>> clip_line(const ConvexPolygon& poly,
                                                   const Line2D& line);

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b);

}  // namespace masogeom
