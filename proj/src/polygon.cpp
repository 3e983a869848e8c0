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

#include "masogeom/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "masogeom/errors.hpp"

namespace masogeom {

namespace {

double cross(const Point2& a, const Point2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool lex_less(const Point2& a, const Point2& b) {
  return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

// Intersection of segment [a, b] with the line, evaluated in a canonical
// endpoint order so that both cells sharing an edge get identical points.
Point2 intersect(const Point2& a, const Point2& b, const Line2D& line) {
  const Point2& p = lex_less(a, b) ? a : b;
  const Point2& q = lex_less(a, b) ? b : a;
  const double fp = line.eval(p);
  const double fq = line.eval(q);
  const double t = fp / (fp - fq);
  return p + t * (q - p);
}

struct Vertex {
  Point2 p;
  EdgeTag tag;
};

ConvexPolygon assemble(std::vector<Vertex> out, double tol) {
  // Drop near-duplicate consecutive vertices; the survivor keeps the tag of
  // the edge that actually leaves it.
  bool changed = true;
  while (changed && out.size() > 1) {
    changed = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const std::size_t j = (i + 1) % out.size();
      if ((out[i].p - out[j].p).lpNorm<Eigen::Infinity>() <= tol) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  ConvexPolygon poly;
  for (auto& v : out) {
    poly.vertices.push_back(v.p);
    poly.tags.push_back(v.tag);
  }
  return poly;
}

double scale_of(const ConvexPolygon& poly) {
  double s = 1.0;
  for (const auto& v : poly.vertices) s = std::max(s, v.lpNorm<Eigen::Infinity>());
  return s;
}

}  // namespace

ConvexPolygon ConvexPolygon::rectangle(double xmin, double ymin, double xmax,
                                       double ymax) {
  if (!(xmax > xmin && ymax > ymin)) fail(ErrorKind::kStructural, "empty rectangle");
  return from_points({{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}});
}

ConvexPolygon ConvexPolygon::from_points(std::vector<Point2> points) {
  ConvexPolygon poly;
  poly.vertices = std::move(points);
  poly.tags.assign(poly.vertices.size(), EdgeTag{});
  if (poly.size() < 3) fail(ErrorKind::kStructural, "polygon needs at least 3 vertices");
  for (const auto& v : poly.vertices)
    if (!v.allFinite()) fail(ErrorKind::kStructural, "polygon vertex is not finite");
  if (poly.area() <= 0.0) fail(ErrorKind::kStructural, "polygon must be counter-clockwise");
  if (!poly.is_convex()) fail(ErrorKind::kStructural, "polygon is not convex");
  return poly;
}

double ConvexPolygon::area() const {
  double a = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const auto [p, q] = edge(i);
    a += cross(p, q);
  }
  return 0.5 * a;
}

Point2 ConvexPolygon::centroid() const {
  // Area-weighted centroid via a fan around the first vertex.
  Point2 c = Point2::Zero();
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < size(); ++i) {
    const double a = 0.5 * cross(vertices[i] - vertices[0], vertices[i + 1] - vertices[0]);
    c += a * (vertices[0] + vertices[i] + vertices[i + 1]) / 3.0;
    total += a;
  }
  if (total <= 0.0) return vertices.front();
  return c / total;
}

bool ConvexPolygon::is_convex(double tol) const {
  for (std::size_t i = 0; i < size(); ++i) {
    const auto [a, b] = edge(i);
    const Point2& c = vertices[(i + 2) % size()];
    if (cross(b - a, c - b) < -tol) return false;
  }
  return true;
}

double ConvexPolygon::inner_distance(const Point2& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) {
    const auto [a, b] = edge(i);
    const Point2 e = b - a;
    best = std::min(best, cross(e, p - a) / e.norm());
  }
  return best;
}

double ConvexPolygon::boundary_distance(const Point2& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) {
    const auto [a, b] = edge(i);
    best = std::min(best, point_segment_distance(p, a, b));
  }
  return best;
}

Eigen::AlignedBox2d ConvexPolygon::bounds() const {
  Eigen::AlignedBox2d box;
  for (const auto& v : vertices) box.extend(v);
  return box;
}

std::optional<ConvexPolygon> clip_halfplane(const ConvexPolygon& poly, const Line2D& line,
                                            int sign, EdgeTag tag) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  std::vector<Vertex> out;
  out.reserve(poly.size() + 1);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto [cur, nxt] = poly.edge(i);
    const double sc = s * line.eval(cur);
    const double sn = s * line.eval(nxt);
    if (sc >= 0.0) {
      if (sn >= 0.0) {
        out.push_back({cur, poly.tags[i]});
      } else if (sc > 0.0) {
        out.push_back({cur, poly.tags[i]});
        out.push_back({intersect(cur, nxt, line), tag});
      } else {
        out.push_back({cur, tag});
      }
    } else if (sn > 0.0) {
      out.push_back({intersect(cur, nxt, line), poly.tags[i]});
    }
  }
  if (out.size() < 3) return std::nullopt;
  ConvexPolygon result = assemble(std::move(out), 1e-14 * scale_of(poly));
  if (result.size() < 3 || result.area() < kMinArea) return std::nullopt;
  return result;
}

std::pair<std::optional<ConvexPolygon>, std::optional<ConvexPolygon>> split_by_line(
    const ConvexPolygon& poly, const Line2D& line, EdgeTag tag) {
  return {clip_halfplane(poly, line, -1, tag), clip_halfplane(poly, line, +1, tag)};
}

std::optional<std::pair<Point2, Point2>> clip_line(const ConvexPolygon& poly,
                                                   const Line2D& line) {
  const EdgeTag chord{-1, -1};
  const auto [neg, pos] = split_by_line(poly, line, chord);
  if (!neg || !pos) return std::nullopt;
  for (std::size_t i = 0; i < pos->size(); ++i) {
    if (pos->tags[i] == chord) return pos->edge(i);
  }
  return std::nullopt;
}

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const Point2 e = b - a;
  const double len2 = e.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(e) / len2, 0.0, 1.0);
  return (p - (a + t * e)).norm();
}

}  // namespace masogeom
