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

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json_util.hpp"
#include "masogeom/errors.hpp"
#include "masogeom/io.hpp"

namespace masogeom {

using namespace detail;

namespace {

Json point_json(const Point2& p) { return Json::array({p.x(), p.y()}); }

Point2 point_at(const Json& j, const std::string& path) {
  const VectorXd v = vector_at(j, path);
  if (v.size() != 2) parse_fail(path, "expected a 2D point");
  return {v(0), v(1)};
}

Json codes_json(const LayerCodes& codes) {
  Json out = Json::array();
  for (const auto& layer : codes.codes) out.push_back(layer);
  return out;
}

LayerCodes codes_at(const Json& j, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array of code vectors");
  LayerCodes codes;
  for (std::size_t l = 0; l < j.size(); ++l) {
    const std::string lp = path + "[" + std::to_string(l) + "]";
    if (!j[l].is_array()) parse_fail(lp, "expected an array");
    std::vector<int> layer;
    for (const auto& c : j[l]) {
      if (!c.is_number_integer()) parse_fail(lp, "expected integers");
      layer.push_back(c.get<int>());
    }
    codes.codes.push_back(std::move(layer));
  }
  return codes;
}

Json polygon_json(const ConvexPolygon& poly) {
  Json vs = Json::array();
  for (const auto& v : poly.vertices) vs.push_back(point_json(v));
  return vs;
}

Json tags_json(const ConvexPolygon& poly) {
  Json ts = Json::array();
  for (const auto& t : poly.tags) ts.push_back(Json::array({t.layer, t.unit}));
  return ts;
}

ConvexPolygon polygon_at(const Json& vertices, const Json* tags, const std::string& path) {
  if (!vertices.is_array() || vertices.size() < 3)
    parse_fail(path, "expected at least 3 vertices");
  ConvexPolygon poly;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    poly.vertices.push_back(point_at(vertices[i], path + "[" + std::to_string(i) + "]"));
  poly.tags.assign(poly.vertices.size(), EdgeTag{});
  if (tags) {
    if (!tags->is_array() || tags->size() != poly.vertices.size())
      parse_fail(path, "edge_tags must have one entry per vertex");
    for (std::size_t i = 0; i < tags->size(); ++i) {
      const Json& t = (*tags)[i];
      if (!t.is_array() || t.size() != 2) parse_fail(path, "edge tag must be [layer, unit]");
      poly.tags[i] = {t[0].get<int>(), t[1].get<int>()};
    }
  }
  return poly;
}

std::vector<std::size_t> size_vector_at(const Json& j, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array");
  std::vector<std::size_t> out;
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) parse_fail(path, "expected non-negative integers");
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Json stats_to_json(const SubdivisionStats& stats) {
  Json j;
  j["cells_per_depth"] = stats.cells_per_depth;
  j["crossings"] = stats.crossings;
  j["cutting_units"] = stats.cutting_units;
  j["upper_bounds"] = stats.upper_bounds;
  j["identity_holds"] = stats.identity_holds();
  j["bounds_hold"] = stats.bounds_hold();
  return j;
}

Json partition_to_json(const Partition& partition) {
  Json root;
  root["depth"] = partition.depth;
  root["domain"] = polygon_json(partition.domain);
  Json cells = Json::array();
  for (std::size_t i = 0; i < partition.cells.size(); ++i) {
    const Cell& c = partition.cells[i];
    Json jc;
    jc["id"] = i;
    jc["vertices"] = polygon_json(c.polygon);
    jc["edge_tags"] = tags_json(c.polygon);
    jc["codes"] = codes_json(c.codes);
    jc["affine"] = {{"A", matrix_json(c.affine.A)}, {"b", vector_json(c.affine.b)}};
    jc["centroid"] = vector_json(c.centroid);
    jc["radius"] = c.radius;
    cells.push_back(std::move(jc));
  }
  root["cells"] = std::move(cells);
  root["stats"] = stats_to_json(partition.history);
  return root;
}

Partition partition_from_json(const Json& j) {
  if (!j.is_object()) parse_fail("$", "expected a partition object");
  if (!j.contains("depth") || !j["depth"].is_number_integer()) parse_fail("depth", "missing");
  if (!j.contains("domain")) parse_fail("domain", "missing");
  if (!j.contains("cells") || !j["cells"].is_array()) parse_fail("cells", "missing");
  Partition part;
  part.depth = j["depth"].get<int>();
  part.domain = polygon_at(j["domain"], nullptr, "domain");
  const Json& cells = j["cells"];
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string path = "cells[" + std::to_string(i) + "]";
    const Json& jc = cells[i];
    Cell c;
    const Json* tags = jc.contains("edge_tags") ? &jc["edge_tags"] : nullptr;
    c.polygon = polygon_at(jc.at("vertices"), tags, path + ".vertices");
    c.codes = codes_at(jc.at("codes"), path + ".codes");
    c.affine.A = matrix_at(jc.at("affine").at("A"), path + ".affine.A");
    c.affine.b = vector_at(jc.at("affine").at("b"), path + ".affine.b");
    c.centroid = vector_at(jc.at("centroid"), path + ".centroid");
    c.radius = number_at(jc.at("radius"), path + ".radius");
    part.cells.push_back(std::move(c));
  }
  if (j.contains("stats")) {
    const Json& js = j["stats"];
    part.history.cells_per_depth = size_vector_at(js.at("cells_per_depth"), "stats.cells_per_depth");
    for (const auto& row : js.at("crossings"))
      part.history.crossings.push_back(size_vector_at(row, "stats.crossings"));
    part.history.cutting_units = js.at("cutting_units").get<std::vector<int>>();
    part.history.compute_bounds();
  }
  return part;
}

std::string partition_to_csv(const Partition& partition) {
  std::ostringstream os;
  os << "cell,codes,area,vertices,A,b,centroid,radius\n";
  auto join = [](const auto& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) s += ' ';
      s += fmt(values[i]);
    }
    return s;
  };
  for (std::size_t i = 0; i < partition.cells.size(); ++i) {
    const Cell& c = partition.cells[i];
    std::vector<double> verts, a, b, mu;
    for (const auto& v : c.polygon.vertices) {
      verts.push_back(v.x());
      verts.push_back(v.y());
    }
    for (Eigen::Index r = 0; r < c.affine.A.rows(); ++r)
      for (Eigen::Index col = 0; col < c.affine.A.cols(); ++col) a.push_back(c.affine.A(r, col));
    for (Eigen::Index r = 0; r < c.affine.b.size(); ++r) b.push_back(c.affine.b(r));
    for (Eigen::Index r = 0; r < c.centroid.size(); ++r) mu.push_back(c.centroid(r));
    os << i << ',' << c.codes.key() << ',' << fmt(c.polygon.area()) << ',' << join(verts)
       << ',' << join(a) << ',' << join(b) << ',' << join(mu) << ',' << fmt(c.radius) << '\n';
  }
  return os.str();
}

Json boundary_to_json(const PiecewiseLinearPath& path) {
  Json root;
  Json segs = Json::array();
  for (const auto& s : path.segments) {
    Json js;
    js["p0"] = point_json(s.p0);
    js["p1"] = point_json(s.p1);
    js["alpha"] = vector_json(s.alpha);
    js["beta"] = s.beta;
    js["cell"] = s.cell;
    segs.push_back(std::move(js));
  }
  root["segments"] = std::move(segs);
  root["chains"] = path.chains;
  return root;
}

PiecewiseLinearPath boundary_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("segments")) parse_fail("segments", "missing");
  PiecewiseLinearPath path;
  const Json& segs = j["segments"];
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::string p = "segments[" + std::to_string(i) + "]";
    BoundarySegment s;
    s.p0 = point_at(segs[i].at("p0"), p + ".p0");
    s.p1 = point_at(segs[i].at("p1"), p + ".p1");
    s.alpha = vector_at(segs[i].at("alpha"), p + ".alpha");
    s.beta = number_at(segs[i].at("beta"), p + ".beta");
    s.cell = segs[i].at("cell").get<std::size_t>();
    path.segments.push_back(std::move(s));
  }
  if (j.contains("chains")) {
    path.chains = j["chains"].get<std::vector<std::vector<std::size_t>>>();
  } else {
    path.chains = chain_segments(path.segments);
  }
  return path;
}

Json occupancy_to_json(const OccupancyReport& report) {
  Json j;
  j["dataset_size"] = report.dataset_size;
  j["distinct_codes"] = report.distinct_codes;
  j["max_per_code"] = report.max_per_code;
  Json hist = Json::array();
  for (const auto& [occupancy, codes] : report.histogram)
    hist.push_back({{"points_per_code", occupancy}, {"codes", codes}});
  j["histogram"] = std::move(hist);
  return j;
}

Json distance_to_json(const DistanceDistribution& dist) {
  Json j;
  j["count"] = dist.count;
  j["zero_count"] = dist.zero_count;
  j["unbounded_count"] = dist.unbounded_count;
  j["finite_count"] = dist.log10_margins.size();
  if (!dist.log10_margins.empty()) {
    j["log10_min"] = dist.min;
    j["log10_q1"] = dist.q1;
    j["log10_median"] = dist.median;
    j["log10_q3"] = dist.q3;
    j["log10_max"] = dist.max;
  }
  j["bin_edges"] = dist.bin_edges;
  j["bin_counts"] = dist.bin_counts;
  return j;
}

std::vector<VectorXd> parse_dataset_csv(const std::string& text) {
  std::vector<VectorXd> points;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> values;
    std::stringstream row(line);
    std::string field;
    bool numeric = true;
    while (std::getline(row, field, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (field.find_first_not_of(" \t", used) != std::string::npos) numeric = false;
        values.push_back(v);
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    const bool first_row = header_allowed;
    header_allowed = false;
    if (!numeric) {
      if (first_row) continue;
      fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": non-numeric field");
    }
    VectorXd p = Eigen::Map<VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    if (!p.allFinite())
      fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": non-finite value");
    if (!points.empty() && p.size() != points.front().size())
      fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": inconsistent column count");
    points.push_back(std::move(p));
  }
  return points;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kInput, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kInput, "cannot write " + path);
  out << content;
}

}  // namespace masogeom
