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

#include <algorithm>
#include <random>
#include <set>

#include "masogeom/arrangement.hpp"
#include "masogeom/errors.hpp"
#include "masogeom/power_diagram.hpp"
#include "test_util.hpp"

using namespace masogeom;
using namespace masogeom::testing;

namespace {

const ConvexPolygon kBox = ConvexPolygon::rectangle(-1, -1, 1, 1);

Network quadrant_net() {
  return Network(2, std::vector<DenseLayer>{
                        dense(MatrixXd::Identity(2, 2), VectorXd::Zero(2), Activation::relu())});
}

double total_area(const Partition& p) {
  double a = 0.0;
  for (const auto& c : p.cells) a += c.polygon.area();
  return a;
}

}  // namespace

TEST_CASE("quadrant partition") {
  const Partition p = enumerate_partition(quadrant_net(), kBox, 1);
  REQUIRE(p.cells.size() == 4);
  std::set<std::vector<int>> codes;
  for (const auto& c : p.cells) {
    codes.insert(c.codes.codes[0]);
    CHECK(c.polygon.area() == doctest::Approx(1.0));
  }
  CHECK(codes == std::set<std::vector<int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}});

  SUBCASE("stats: unit 1 splits one cell, unit 2 splits two") {
    const SubdivisionStats s = subdivision_stats(p);
    CHECK(s.cells_per_depth == std::vector<std::size_t>{1, 4});
    CHECK(s.crossings[0] == std::vector<std::size_t>{1, 2});
    CHECK(s.identity_holds());
    CHECK(s.upper_bounds[0] == 4.0);
    CHECK(s.bounds_hold());
  }
  SUBCASE("locate_cell") {
    const Location loc = locate_cell(p, Point2(0.3, -0.7));
    REQUIRE(loc.cell);
    CHECK(p.cells[*loc.cell].codes.codes[0] == std::vector<int>{1, 2});

    const Location on_cut = locate_cell(p, Point2(0.0, 0.5));
    CHECK(on_cut.ambiguous());
    CHECK(on_cut.candidates.size() == 2);

    CHECK_THROWS_AS(locate_cell(p, Point2(2.0, 0.0)), Error);
  }
}

TEST_CASE("unit_cut_line") {
  const Network net = random_net({2, 4, 3, 1}, Activation::relu(), 13);
  SUBCASE("layer one: the unit's own hyperplane") {
    const auto line = unit_cut_line(net.layer(1), AffineMap::identity(2), 2);
    REQUIRE(line);
    const auto& d = net.dense(1);
    CHECK((line->normal - d.W.row(2).transpose()).norm() == 0.0);
    CHECK(line->offset == d.b(2));
  }
  SUBCASE("layer two: pre-activation vanishes on the pulled-back line") {
    const Partition p = enumerate_partition(net, kBox, 1);
    for (const auto& cell : p.cells) {
      for (int k = 0; k < 3; ++k) {
        const auto line = unit_cut_line(net, cell, 2, k);
        if (!line) continue;
        const Point2 foot = -line->offset * line->normal / line->normal.squaredNorm();
        const Point2 dir(-line->normal.y(), line->normal.x());
        for (int i = 0; i < 10; ++i) {
          const Point2 x = foot + (i - 5) * 0.1 * dir / dir.norm();
          const VectorXd z1 = cell.affine.apply(x);
          const double pre = net.dense(2).W.row(k).dot(z1) + net.dense(2).b(k);
          CHECK(std::abs(pre) <= 1e-10 * (1 + z1.norm()));
        }
      }
    }
  }
  SUBCASE("rank deficient map gives nothing") {
    CHECK_FALSE(unit_cut_line(net.layer(2), AffineMap{MatrixXd::Zero(4, 2), VectorXd::Ones(4)}, 0));
  }
  SUBCASE("identity layer is unsupported") {
    try {
      unit_cut_line(net.layer(3), AffineMap{MatrixXd::Zero(3, 2), VectorXd::Zero(3)}, 0);
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kUnsupported);
    }
  }
}

TEST_CASE("enumerated cells match region codes on a dense grid") {
  const Network net = random_net({2, 6, 6, 1}, Activation::relu(), 2024);
  const Partition p = enumerate_partition(net, kBox, 2);
  CHECK(std::abs(total_area(p) - 4.0) <= 1e-6 * 4.0);
  int checked = 0, mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    for (int j = 0; j < 200; ++j) {
      const Point2 x(-1 + (i + 0.5) / 100.0, -1 + (j + 0.5) / 100.0);
      const Location loc = locate_cell(p, x);
      if (loc.ambiguous()) continue;
      ++checked;
      if (!(p.cells[*loc.cell].codes == region_code(net, x, 2))) ++mismatches;
    }
  }
  CHECK(checked > 39000);
  CHECK(mismatches == 0);
}

TEST_CASE("cell invariants") {
  for (Activation act : {Activation::relu(), Activation::leaky_relu(0.1), Activation::abs()}) {
    const Network net = random_net({2, 5, 4, 1}, act, 77);
    const Partition p = enumerate_partition(net, kBox, 3);
    const SubdivisionStats s = subdivision_stats(p);
    CHECK(s.identity_holds());
    CHECK(s.bounds_hold());
    CHECK(std::is_sorted(s.cells_per_depth.begin(), s.cells_per_depth.end()));
    for (const auto& cell : p.cells) {
      CHECK(cell.polygon.is_convex());
      const Point2 c = cell.polygon.centroid();
      const VectorXd f = forward(net, c).back();
      CHECK((cell.affine.apply(c) - f).norm() <= 1e-9 * (1 + f.norm()));
      // Centroid and radius equal the pulled-back diagram entry.
      const PowerDiagram pd = subdivided_pd(net, cell.codes.prefix(2), 3);
      std::size_t e = 0;
      while (pd.code_labels[e] != cell.codes.codes[2]) ++e;
      CHECK((pd.centroids[e] - cell.centroid).norm() <= 1e-12);
      CHECK(std::abs(pd.radii[e] - cell.radius) <= 1e-12 * (1 + std::abs(cell.radius)));
    }
  }
}

TEST_CASE("cut-line endpoints inside the domain never dead-end") {
  const Network net = random_net({2, 5, 5, 1}, Activation::abs(), 31);
  const Partition p = enumerate_partition(net, kBox, 2);
  // Collect every internal edge once per cell and count endpoint incidences.
  std::vector<std::pair<Point2, Point2>> edges;
  for (const auto& c : p.cells)
    for (std::size_t e = 0; e < c.polygon.size(); ++e)
      if (!c.polygon.tags[e].is_domain()) edges.push_back(c.polygon.edge(e));
  for (const auto& [a, b] : edges) {
    for (const Point2& end : {a, b}) {
      if (p.domain.boundary_distance(end) <= 1e-9) continue;
      int incident = 0;
      for (const auto& [c, d] : edges)
        if ((c - end).norm() <= 1e-9 || (d - end).norm() <= 1e-9) ++incident;
      CHECK(incident >= 2);
    }
  }
}

TEST_CASE("final partition does not depend on the unit cut order") {
  const Network net = random_net({2, 4, 3, 1}, Activation::relu(), 5);
  // Permute units of layer 1 (rows of W1, columns of W2).
  const std::vector<int> perm{2, 0, 3, 1};
  DenseLayer l1 = net.dense(1), l2 = net.dense(2);
  DenseLayer p1 = l1, p2 = l2;
  for (int i = 0; i < 4; ++i) {
    p1.W.row(i) = l1.W.row(perm[i]);
    p1.b(i) = l1.b(perm[i]);
    p2.W.col(i) = l2.W.col(perm[i]);
  }
  const Network permuted(2, std::vector<DenseLayer>{p1, p2, net.dense(3)});
  const Partition a = enumerate_partition(net, kBox, 2);
  const Partition b = enumerate_partition(permuted, kBox, 2);
  std::set<std::string> ka, kb;
  for (const auto& c : a.cells) {
    LayerCodes codes = c.codes;
    std::vector<int> undone(4);
    for (int i = 0; i < 4; ++i) undone[i] = codes.codes[0][perm[i]];
    codes.codes[0] = undone;
    ka.insert(codes.key());
  }
  for (const auto& c : b.cells) kb.insert(c.codes.key());
  CHECK(ka == kb);
}

TEST_CASE("axis-aligned first layers cut along the axes") {
  const Network net = random_net({2, 6, 1}, Activation::relu(), 3, WeightStyle::kAxisAligned);
  const Partition p = enumerate_partition(net, ConvexPolygon::rectangle(-3, -3, 3, 3), 1);
  for (const auto& c : p.cells) {
    for (std::size_t e = 0; e < c.polygon.size(); ++e) {
      const auto [a, b] = c.polygon.edge(e);
      const Point2 d = b - a;
      CHECK(std::min(std::abs(d.x()), std::abs(d.y())) <= 1e-12 * d.norm());
    }
  }
}

TEST_CASE("enumeration errors") {
  CHECK_THROWS_AS(enumerate_partition(random_net({3, 2, 1}, Activation::relu(), 1), kBox, 1), Error);
  const Network net = random_net({2, 8, 8, 1}, Activation::relu(), 1);
  try {
    enumerate_partition(net, kBox, 2, 10);
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kCapacity);
  }
  std::vector<MatrixXd> slopes{MatrixXd::Identity(2, 2), -MatrixXd::Identity(2, 2),
                               MatrixXd::Zero(2, 2)};
  const Network maxout(2, std::vector<MasoLayer>{MasoLayer(slopes, MatrixXd::Zero(2, 3))});
  try {
    enumerate_partition(maxout, kBox, 1);
    FAIL("expected unsupported error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUnsupported);
  }
}
