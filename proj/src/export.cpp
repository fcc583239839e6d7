// Copyright 2026 The meshplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "meshplan/export.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "meshplan/error.hpp"

namespace meshplan {

namespace {

constexpr double kCellPx = 24.0;

struct Xy {
  double x;
  double y;
};

Xy center_m(const PlanDocument& doc, CellIndex c) {
  return {(c % doc.cols + 0.5) * doc.cell_size_m, (c / doc.cols + 0.5) * doc.cell_size_m};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::optional<ExportFormat> parse_export_format(std::string_view text) {
  if (text == "svg") return ExportFormat::kSvg;
  if (text == "geojson") return ExportFormat::kGeoJson;
  if (text == "csv") return ExportFormat::kCsv;
  return std::nullopt;
}

const char* channel_color(std::optional<int> channel) {
  if (!channel) return "#7f7f7f";
  switch (*channel) {
    case 1: return "#1f77b4";
    case 6: return "#2ca02c";
    case 11: return "#d62728";
    default: break;
  }
  static constexpr const char* kExtra[] = {"#9467bd", "#8c564b", "#e377c2", "#bcbd22", "#17becf",
                                           "#ff7f0e"};
  const int n = static_cast<int>(std::size(kExtra));
  return kExtra[((*channel % n) + n) % n];
}

std::string export_svg(const PlanDocument& doc) {
  const double scale = kCellPx / doc.cell_size_m;
  const double width = doc.cols * kCellPx;
  const double height = doc.rows * kCellPx;
  auto px = [&](CellIndex c) {
    const Xy m = center_m(doc, c);
    return Xy{m.x * scale, m.y * scale};
  };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
      << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
  out << "<g class=\"cells\">\n";
  double max_weight = 0.0;
  for (const auto& ic : doc.interest) max_weight = std::max(max_weight, ic.weight);
  std::vector<double> weight(static_cast<std::size_t>(doc.rows * doc.cols), -1.0);
  for (const auto& ic : doc.interest) weight[static_cast<std::size_t>(ic.cell)] = ic.weight;
  for (CellIndex c = 0; c < doc.rows * doc.cols; ++c) {
    const double x = (c % doc.cols) * kCellPx;
    const double y = (c / doc.cols) * kCellPx;
    const double w = weight[static_cast<std::size_t>(c)];
    out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(kCellPx)
        << "\" height=\"" << fmt(kCellPx) << "\"";
    if (w >= 0.0) {
      const double opacity = max_weight > 0.0 ? 0.15 + 0.65 * (w / max_weight) : 0.15;
      out << " class=\"cell interest\" fill=\"#ffbf00\" fill-opacity=\"" << fmt(opacity) << "\"";
    } else {
      out << " class=\"cell\" fill=\"#ffffff\"";
    }
    out << " stroke=\"#dddddd\"/>\n";
  }
  out << "</g>\n<g class=\"links\">\n";
  for (const Link& l : doc.plan.topology) {
    const CandidateSite* a = doc.plan.find(l.a);
    const CandidateSite* b = doc.plan.find(l.b);
    if (!a || !b) throw Error(ErrorCode::kFormat, "link endpoint missing from plan");
    const Xy pa = px(a->cell);
    const Xy pb = px(b->cell);
    out << "<line class=\"link\" x1=\"" << fmt(pa.x) << "\" y1=\"" << fmt(pa.y) << "\" x2=\""
        << fmt(pb.x) << "\" y2=\"" << fmt(pb.y) << "\" stroke=\"" << channel_color(l.channel)
        << "\" stroke-width=\"2\"><title>" << escape_xml(l.a + "-" + l.b) << "</title></line>\n";
  }
  out << "</g>\n<g class=\"nodes\">\n";
  const double r = kCellPx * 0.3;
  for (const auto& site : doc.plan.selected) {
    const Xy p = px(site.cell);
    const char* fill = site.gateway ? "#000000" : "#444444";
    if (site.indoor()) {
      out << "<rect class=\"node indoor\" x=\"" << fmt(p.x - r) << "\" y=\"" << fmt(p.y - r)
          << "\" width=\"" << fmt(2 * r) << "\" height=\"" << fmt(2 * r) << "\" fill=\"" << fill
          << "\"><title>" << escape_xml(site.id) << "</title></rect>\n";
    } else {
      out << "<line class=\"mast\" x1=\"" << fmt(p.x) << "\" y1=\"" << fmt(p.y - r) << "\" x2=\""
          << fmt(p.x) << "\" y2=\"" << fmt(p.y + r) << "\" stroke=\"#444444\"/>\n";
      out << "<polygon class=\"node outdoor\" points=\"" << fmt(p.x) << ',' << fmt(p.y - 2 * r)
          << ' ' << fmt(p.x - r) << ',' << fmt(p.y - r * 0.5) << ' ' << fmt(p.x + r) << ','
          << fmt(p.y - r * 0.5) << "\" fill=\"" << fill << "\"><title>" << escape_xml(site.id)
          << "</title></polygon>\n";
    }
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string export_geojson(const PlanDocument& doc) {
  using nlohmann::json;
  json features = json::array();
  for (const auto& ic : doc.interest) {
    const double x0 = (ic.cell % doc.cols) * doc.cell_size_m;
    const double y0 = (ic.cell / doc.cols) * doc.cell_size_m;
    const double x1 = x0 + doc.cell_size_m;
    const double y1 = y0 + doc.cell_size_m;
    features.push_back(
        {{"type", "Feature"},
         {"geometry",
          {{"type", "Polygon"},
           {"coordinates", json::array({json::array({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}})})}}},
         {"properties", {{"feature", "interest_cell"}, {"cell", ic.cell}, {"weight", ic.weight}}}});
  }
  for (const auto& site : doc.plan.selected) {
    const Xy p = center_m(doc, site.cell);
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "Point"}, {"coordinates", {p.x, p.y}}}},
                        {"properties",
                         {{"feature", "node"},
                          {"id", site.id},
                          {"kind", to_string(site.kind)},
                          {"gateway", site.gateway},
                          {"antenna_height_m", site.antenna_height_m}}}});
  }
  for (const Link& l : doc.plan.topology) {
    const CandidateSite* a = doc.plan.find(l.a);
    const CandidateSite* b = doc.plan.find(l.b);
    if (!a || !b) throw Error(ErrorCode::kFormat, "link endpoint missing from plan");
    const Xy pa = center_m(doc, a->cell);
    const Xy pb = center_m(doc, b->cell);
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "LineString"}, {"coordinates", {{pa.x, pa.y}, {pb.x, pb.y}}}}},
                        {"properties",
                         {{"feature", "link"},
                          {"a", l.a},
                          {"b", l.b},
                          {"distance_m", l.distance_m},
                          {"rate_mbps", l.rate_mbps},
                          {"channel", l.channel ? json(*l.channel) : json(nullptr)},
                          {"load_kbps", l.load_kbps}}}});
  }
  json j = {{"type", "FeatureCollection"},
            {"coordinate_system", "local planar meters from grid origin; x along columns, y along rows"},
            {"features", features}};
  return j.dump(2) + "\n";
}

std::string export_links_csv(const PlanDocument& doc) {
  std::ostringstream out;
  out.precision(10);
  out << "a,b,distance_m,rate_mbps,channel,load_kbps,capacity_kbps\n";
  const auto& cap = doc.plan.metrics.link_capacity_kbps;
  for (std::size_t i = 0; i < doc.plan.topology.size(); ++i) {
    const Link& l = doc.plan.topology[i];
    out << l.a << ',' << l.b << ',' << l.distance_m << ',' << l.rate_mbps << ',';
    if (l.channel) out << *l.channel;
    out << ',' << l.load_kbps << ',';
    if (i < cap.size()) out << cap[i];
    out << '\n';
  }
  return out.str();
}

std::string export_plan(const PlanDocument& doc, ExportFormat format) {
  switch (format) {
    case ExportFormat::kSvg: return export_svg(doc);
    case ExportFormat::kGeoJson: return export_geojson(doc);
    case ExportFormat::kCsv: return export_links_csv(doc);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown export format");
}

}  // namespace meshplan
