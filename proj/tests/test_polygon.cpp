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

#include <doctest.h>

#include <random>

#include "masogeom/polygon.hpp"

using namespace masogeom;

namespace {

const ConvexPolygon kSquare = ConvexPolygon::rectangle(0, 0, 1, 1);

Line2D line(double nx, double ny, double offset) { return {Point2(nx, ny), offset}; }

}  // namespace

TEST_CASE("clip_halfplane") {
  const auto right = clip_halfplane(kSquare, line(1, 0, -0.5), +1);
  REQUIRE(right);
  CHECK(right->area() == doctest::Approx(0.5));
  CHECK(right->bounds().min().x() == doctest::Approx(0.5));
  CHECK(right->is_convex());

  CHECK_FALSE(clip_halfplane(kSquare, line(1, 0, -2), +1));

  const auto tri = clip_halfplane(kSquare, line(1, -1, 0), +1);
  REQUIRE(tri);
  CHECK(tri->size() == 3);
  CHECK(tri->area() == doctest::Approx(0.5));
}

TEST_CASE("clip tags the new edge") {
  const auto left = clip_halfplane(kSquare, line(1, 0, -0.5), -1, EdgeTag{2, 3});
  REQUIRE(left);
  int tagged = 0;
  for (std::size_t i = 0; i < left->size(); ++i) {
    if (left->tags[i] == EdgeTag{2, 3}) {
      ++tagged;
      const auto [a, b] = left->edge(i);
      CHECK(a.x() == doctest::Approx(0.5));
      CHECK(b.x() == doctest::Approx(0.5));
    } else {
      CHECK(left->tags[i].is_domain());
    }
  }
  CHECK(tagged == 1);
}

TEST_CASE("split_by_line") {
  auto [neg, pos] = split_by_line(kSquare, line(1, 0, -0.5));
  REQUIRE(neg);
  REQUIRE(pos);
  CHECK(neg->area() == doctest::Approx(0.5));
  CHECK(pos->area() == doctest::Approx(0.5));

  auto [none, all] = split_by_line(kSquare, line(1, 0, 5));
  CHECK_FALSE(none);
  REQUIRE(all);
  CHECK(all->area() == doctest::Approx(1.0));

  SUBCASE("area conservation on random triangles") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 500; ++i) {
      std::vector<Point2> pts{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
      const Point2 e1 = pts[1] - pts[0], e2 = pts[2] - pts[0];
      const double cross = e1.x() * e2.y() - e1.y() * e2.x();
      if (std::abs(cross) < 1e-3) continue;
      if (cross < 0) std::swap(pts[1], pts[2]);
      const ConvexPolygon tri = ConvexPolygon::from_points(pts);
      const Line2D cut = line(u(rng), u(rng), 0.5 * u(rng));
      auto [a, b] = split_by_line(tri, cut);
      const double total = (a ? a->area() : 0.0) + (b ? b->area() : 0.0);
      CHECK(std::abs(total - tri.area()) <= 1e-9 * tri.area() + 1e-12);
      if (a) CHECK(a->is_convex());
      if (b) CHECK(b->is_convex());
    }
  }
}

TEST_CASE("clip_line returns the chord") {
  const auto chord = clip_line(kSquare, line(1, 0, -0.3));
  REQUIRE(chord);
  CHECK(chord->first.x() == doctest::Approx(0.3));
  CHECK(chord->second.x() == doctest::Approx(0.3));
  CHECK((chord->first - chord->second).norm() == doctest::Approx(1.0));
  CHECK_FALSE(clip_line(kSquare, line(0, 1, 3)));
}

TEST_CASE("distances") {
  CHECK(kSquare.inner_distance(Point2(0.3, 0.4)) == doctest::Approx(0.3));
  CHECK(kSquare.inner_distance(Point2(-0.5, 0.5)) == doctest::Approx(-0.5));
  CHECK(point_segment_distance(Point2(2, 0), Point2(0, 0), Point2(1, 0)) == doctest::Approx(1));
  CHECK(kSquare.centroid().isApprox(Point2(0.5, 0.5)));
}
