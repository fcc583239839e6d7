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

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "meshplan/plan_io.hpp"

namespace meshplan {

enum class ExportFormat { kSvg, kGeoJson, kCsv };

std::optional<ExportFormat> parse_export_format(std::string_view text);

/// Stroke color of a link on the given channel; gray when unassigned.
const char* channel_color(std::optional<int> channel);

/// SVG map: grid cells (interest shaded, opacity from weight), indoor nodes as
/// squares, outdoor nodes as triangles on a mast, links colored by channel.
std::string export_svg(const PlanDocument& doc);

/// GeoJSON in local planar meters from the grid origin (x along columns,
/// y along rows, cell centers at ((col + 0.5) * size, (row + 0.5) * size)).
std::string export_geojson(const PlanDocument& doc);

/// One row per link with its load and capacity.
std::string export_links_csv(const PlanDocument& doc);

std::string export_plan(const PlanDocument& doc, ExportFormat format);

}  // namespace meshplan
