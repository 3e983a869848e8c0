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

#include <array>
#include <cstdint>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "masogeom/io.hpp"

namespace masogeom {

namespace {

constexpr std::array<const char*, 12> kPalette = {
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
    "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// SVG's y axis points down.
std::string xy(const Point2& p) { return num(p.x()) + "," + num(-p.y()); }

}  // namespace

std::string cell_color(const LayerCodes& codes) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (char c : codes.key()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return kPalette[h % kPalette.size()];
}

std::string emit_svg(const Partition& partition, const PiecewiseLinearPath* boundary,
                     const SvgStyle& style) {
  const Eigen::AlignedBox2d box = partition.domain.bounds();
  const double w = box.sizes().x();
  const double h = box.sizes().y();
  const int width_px = style.width_px;
  const int height_px = static_cast<int>(std::lround(width_px * h / w));

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width_px
     << "\" height=\"" << height_px << "\" viewBox=\"" << num(box.min().x()) << ' '
     << num(-box.max().y()) << ' ' << num(w) << ' ' << num(h) << "\">\n";

  os << "<g id=\"cells\" stroke=\"none\">\n";
  for (const Cell& cell : partition.cells) {
    os << "<path d=\"M";
    for (std::size_t i = 0; i < cell.polygon.size(); ++i)
      os << (i ? " L" : "") << xy(cell.polygon.vertices[i]);
    os << " Z\" fill=\"" << cell_color(cell.codes) << "\"/>\n";
  }
  os << "</g>\n";

  auto edges = [&](const char* id, const char* color, bool current) {
    os << "<g id=\"" << id << "\" stroke=\"" << color << "\" stroke-width=\""
       << num(style.edge_width_px) << "\" vector-effect=\"non-scaling-stroke\">\n";
    for (const Cell& cell : partition.cells) {
      for (std::size_t e = 0; e < cell.polygon.size(); ++e) {
        const EdgeTag tag = cell.polygon.tags[e];
        if (tag.is_domain() || (tag.layer == partition.depth) != current) continue;
        const auto [a, b] = cell.polygon.edge(e);
        os << "<line x1=\"" << num(a.x()) << "\" y1=\"" << num(-a.y()) << "\" x2=\""
           << num(b.x()) << "\" y2=\"" << num(-b.y())
           << "\" vector-effect=\"non-scaling-stroke\"/>\n";
      }
    }
    os << "</g>\n";
  };
  edges("edges-previous", "#9a9a9a", false);
  edges("edges-current", "#222222", true);

  if (boundary) {
    os << "<g id=\"decision-boundary\" stroke=\"#d62728\" fill=\"none\" stroke-width=\""
       << num(style.boundary_width_px) << "\">\n";
    for (const auto& chain : boundary->chains) {
      if (chain.empty()) continue;
      // Walk the chain, emitting each shared endpoint once.
      std::vector<Point2> pts;
      const auto& first = boundary->segments[chain.front()];
      Point2 cur = first.p0;
      if (chain.size() > 1) {
        const auto& second = boundary->segments[chain[1]];
        const double d0 = std::min((first.p0 - second.p0).norm(), (first.p0 - second.p1).norm());
        const double d1 = std::min((first.p1 - second.p0).norm(), (first.p1 - second.p1).norm());
        cur = d0 < d1 ? first.p1 : first.p0;
      }
      pts.push_back(cur);
      for (std::size_t s : chain) {
        const auto& seg = boundary->segments[s];
        cur = (seg.p0 - cur).norm() <= (seg.p1 - cur).norm() ? seg.p1 : seg.p0;
        pts.push_back(cur);
      }
      os << "<polyline points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << xy(pts[i]);
      os << "\" vector-effect=\"non-scaling-stroke\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace masogeom
