#pragma once

#include <string>
#include <vector>

#include "geo/construction.hpp"

namespace geo::io {

/// `t,x,y,exists` rows with a header; missing samples leave x and y empty.
std::string trace_csv(const cons::LocusTrace& trace);

struct Box {
  double x0, y0, x1, y1;
};

/// Bounding box of the visible scene objects and traces, before margins.
Box bounding_box(const cons::Scene& scene, const std::vector<cons::PolylineValue>& traces);

/// Static construction plus traced polylines. The viewBox is the bounding
/// box grown by 5% on each side; y points up.
std::string render_svg(const cons::Scene& scene, const std::vector<cons::PolylineValue>& traces = {});

/// Human readable coordinates of one scene object.
std::string describe_value(const cons::SceneObject& o);

}  // namespace geo::io
