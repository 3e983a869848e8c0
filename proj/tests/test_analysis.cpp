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

#include <cmath>
#include <random>

#include "masogeom/analysis.hpp"
#include "masogeom/errors.hpp"
#include "test_util.hpp"

using namespace masogeom;
using namespace masogeom::testing;

TEST_CASE("input_jacobian") {
  SUBCASE("all-active first layer gives W") {
    const MatrixXd w = mat({{1.0, 2.0}, {-0.5, 1.0}, {0.3, 0.3}});
    const Network net(2, std::vector<DenseLayer>{dense(w, vec({5.0, 5.0, 5.0}), Activation::relu())});
    const JacobianResult r = input_jacobian(net, vec({0.1, 0.1}), 1);
    CHECK((r.jacobian - w).norm() == 0.0);
    CHECK_FALSE(r.near_boundary);
  }
  SUBCASE("matches central differences away from edges") {
    std::mt19937_64 rng(3);
    int compared = 0;
    for (Activation act : {Activation::relu(), Activation::leaky_relu(0.3), Activation::abs()}) {
      const Network net = random_net({3, 6, 5, 2}, act, 40);
      for (int i = 0; i < 100; ++i) {
        const VectorXd x = uniform_point(rng, 3);
        for (int l = 1; l <= 3; ++l) {
          const JacobianResult r = input_jacobian(net, x, l);
          if (r.input_margin <= 1e-4) continue;
          ++compared;
          const MatrixXd fd = finite_difference_jacobian(net, x, l);
          CHECK((r.jacobian - fd).cwiseAbs().maxCoeff() < 1e-6);
        }
      }
    }
    CHECK(compared > 500);
  }
  SUBCASE("flags points on an edge") {
    const Network net(2, std::vector<DenseLayer>{
                             dense(MatrixXd::Identity(2, 2), VectorXd::Zero(2), Activation::relu())});
    CHECK(input_jacobian(net, vec({0.0, 0.5}), 1).near_boundary);
    CHECK(input_region_margin(net, vec({0.2, 0.5}), 1) == doctest::Approx(0.2));
  }
  CHECK_THROWS_AS(input_jacobian(random_net({2, 3, 1}, Activation::relu(), 1), vec({0, 0}), 3),
                  Error);
}

TEST_CASE("region_centroid_radius agrees with enumerated cells") {
  for (Activation act : {Activation::relu(), Activation::leaky_relu(0.1), Activation::abs()}) {
    const Network net = random_net({2, 5, 4, 1}, act, 61);
    const Partition p = enumerate_partition(net, ConvexPolygon::rectangle(-1, -1, 1, 1), 2);
    for (const Cell& cell : p.cells) {
      const Point2 c = cell.polygon.centroid();
      const CentroidRadiusReport r = region_centroid_radius(net, c, 2);
      CHECK(r.codes == cell.codes);
      CHECK((r.centroid - cell.centroid).norm() <= 1e-9 * (1 + cell.centroid.norm()));
      CHECK(std::abs(r.radius - cell.radius) <= 1e-9 * (1 + std::abs(cell.radius)));
    }
  }
}

TEST_CASE("layer_margin") {
  const Network net(2, std::vector<DenseLayer>{
                           dense(mat({{3.0, 4.0}, {0.0, 1.0}}), vec({0.0, -0.9}), Activation::relu())});
  const MarginReport m = layer_margin(net, vec({0.2, 0.1}), 1);
  CHECK(m.distances[0] == doctest::Approx(0.2));
  CHECK(m.distances[1] == doctest::Approx(0.8));
  CHECK(m.min_distance == doctest::Approx(0.2));
  CHECK(m.arg_unit == 0);

  SUBCASE("matches the exact 2D margin") {
    std::mt19937_64 rng(8);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Network single = random_net({2, 5}, Activation::relu(), seed,
                                        WeightStyle::kDenseGaussian, false);
      // A wide domain keeps every nearest foot point inside it.
      const Partition p = enumerate_partition(single, ConvexPolygon::rectangle(-10, -10, 10, 10), 1);
      for (int i = 0; i < 40; ++i) {
        const VectorXd x = uniform_point(rng, 2);
        const double lm = layer_margin(single, x, 1).min_distance;
        CHECK(std::abs(lm - exact_margin_2d(p, x)) <= 1e-9);
      }
    }
  }
  SUBCASE("safety ball") {
    std::mt19937_64 rng(9);
    const Network single = random_net({4, 7}, Activation::abs(), 2, WeightStyle::kDenseGaussian,
                                      false);
    for (int i = 0; i < 50; ++i) {
      const VectorXd x = uniform_point(rng, 4);
      const double radius = layer_margin(single, x, 1).min_distance;
      const LayerCodes code = region_code(single, x);
      for (int j = 0; j < 20; ++j) {
        VectorXd dir = uniform_point(rng, 4);
        dir *= 0.999 * radius * std::uniform_real_distribution<double>(0, 1)(rng) / dir.norm();
        CHECK(region_code(single, x + dir) == code);
      }
    }
  }
  SUBCASE("degenerate units are reported") {
    const Network flat(2, std::vector<DenseLayer>{
                              dense(mat({{0.0, 0.0}, {1.0, 0.0}}), vec({1.0, 0.0}), Activation::relu())});
    const MarginReport r = layer_margin(flat, vec({0.5, 0.0}), 1);
    CHECK(r.degenerate == std::vector<bool>{true, false});
    CHECK(std::isinf(r.distances[0]));
    CHECK(r.arg_unit == 1);
  }
  const Network ident(2, std::vector<DenseLayer>{
                             dense(MatrixXd::Identity(2, 2), VectorXd::Zero(2), Activation::identity())});
  CHECK_THROWS_AS(layer_margin(ident, vec({0, 0}), 1), Error);
}

TEST_CASE("exact_margin_2d") {
  const Network net(2, std::vector<DenseLayer>{
                           dense(MatrixXd::Identity(2, 2), VectorXd::Zero(2), Activation::relu())});
  const Partition p = enumerate_partition(net, ConvexPolygon::rectangle(-1, -1, 1, 1), 1);
  CHECK(exact_margin_2d(p, Point2(0.3, 0.6)) == doctest::Approx(0.3));
  CHECK_THROWS_AS(exact_margin_2d(p, Point2(3.0, 0.0)), Error);
  const Partition root = enumerate_partition(net, ConvexPolygon::rectangle(-1, -1, 1, 1), 0);
  CHECK(std::isinf(exact_margin_2d(root, Point2(0.3, 0.6))));
}

TEST_CASE("code_occupancy") {
  const Network net(2, std::vector<DenseLayer>{
                           dense(MatrixXd::Identity(2, 2), VectorXd::Zero(2), Activation::relu())});
  const std::vector<VectorXd> data{vec({1, 1}), vec({2, 1}), vec({-1, 1}), vec({3, 3})};
  const OccupancyReport r = code_occupancy(net, data, 1);
  CHECK(r.dataset_size == 4);
  CHECK(r.distinct_codes == 2);
  CHECK(r.max_per_code == 3);
  CHECK(r.histogram == std::map<std::size_t, std::size_t>{{1, 1}, {3, 1}});
  CHECK(code_occupancy(net, data, 0).distinct_codes == 1);
  CHECK_THROWS_AS(code_occupancy(net, {}, 1), Error);
}

TEST_CASE("distance_distribution") {
  const Network net(1, std::vector<DenseLayer>{dense(mat({{1.0}}), vec({0.0}), Activation::relu())});
  std::vector<VectorXd> data;
  for (double v : {0.0, 0.001, 0.01, 0.1, 1.0, 10.0}) data.push_back(vec({v}));
  const DistanceDistribution d = distance_distribution(net, data, 1);
  CHECK(d.count == 6);
  CHECK(d.zero_count == 1);
  CHECK(d.unbounded_count == 0);
  REQUIRE(d.log10_margins.size() == 5);
  CHECK(d.min == doctest::Approx(-3));
  CHECK(d.max == doctest::Approx(1));
  CHECK(d.median == doctest::Approx(-1));
  CHECK(d.q1 == doctest::Approx(-2));
  CHECK(d.q3 == doctest::Approx(0));
  CHECK(d.bin_edges.size() == kDistanceBins + 1);
  std::size_t total = 0;
  for (auto c : d.bin_counts) total += c;
  CHECK(total == 5);
  CHECK(d.bin_counts.front() == 1);
  CHECK(d.bin_counts.back() == 1);
}
