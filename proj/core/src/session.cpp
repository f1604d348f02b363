#include "geo/session.hpp"

#include <cstdio>

#include "geo/dsl.hpp"
#include "json.hpp"

namespace geo::serve {

using nlohmann::json;

namespace {

// nlohmann prints the shortest round-trip form; the wire format asks for
// 17 significant digits, so doubles are written by hand.
void write(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        write(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        out += cons::format_number(v);
      }
      break;
    }
    default: out += j.dump(); break;
  }
}

std::string dump(const json& j) {
  std::string out;
  write(j, out);
  return out;
}

json pieces_json(const cons::PolylineValue& p) {
  json pieces = json::array();
  for (const auto& piece : p.pieces) {
    json pts = json::array();
    for (const auto& q : piece) pts.push_back(json::array({q.x(), q.y()}));
    pieces.push_back(std::move(pts));
  }
  return json{{"pieces", std::move(pieces)}, {"closed", p.closed}};
}

json value_json(const cons::Value& value) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HPoint>) {
          if (v.is_infinite()) return json{{"x", v.vec().x()}, {"y", v.vec().y()}, {"w", 0.0}};
          const Vec2 a = v.affine();
          return json{{"x", a.x()}, {"y", a.y()}, {"w", 1.0}};
        } else if constexpr (std::is_same_v<T, HLine>) {
          return json{{"a", v.a()}, {"b", v.b()}, {"c", v.c()}};
        } else if constexpr (std::is_same_v<T, cons::SegmentValue>) {
          const Vec2 a = v.a.affine(), b = v.b.affine();
          return json{{"x1", a.x()}, {"y1", a.y()}, {"x2", b.x()}, {"y2", b.y()}};
        } else if constexpr (std::is_same_v<T, cons::RayValue>) {
          const Vec2 a = v.origin.affine(), b = v.through.affine();
          return json{{"x1", a.x()}, {"y1", a.y()}, {"x2", b.x()}, {"y2", b.y()}};
        } else if constexpr (std::is_same_v<T, Circle>) {
          return json{{"cx", v.center().x()}, {"cy", v.center().y()}, {"r", v.radius()}};
        } else if constexpr (std::is_same_v<T, Conic>) {
          const Mat3& m = v.matrix();
          return json{{"a", m(0, 0)}, {"b", 2 * m(0, 1)}, {"c", m(1, 1)},
                      {"d", 2 * m(0, 2)}, {"e", 2 * m(1, 2)}, {"f", m(2, 2)}};
        } else if constexpr (std::is_same_v<T, double>) {
          return json{{"value", v}};
        } else if constexpr (std::is_same_v<T, cons::PolylineValue>) {
          return pieces_json(v);
        } else {
          return nullptr;
        }
      },
      value);
}

json object_json(const std::string& id, std::string_view kind, json data, bool exists, bool draggable) {
  return json{{"id", id}, {"kind", kind}, {"data", std::move(data)}, {"exists", exists}, {"draggable", draggable}};
}

json scene_objects(const cons::Scene& scene) {
  json objects = json::array();
  for (const auto& o : scene.objects()) {
    if (o.internal) continue;
    objects.push_back(object_json(o.id, cons::to_string(o.kind), o.exists ? value_json(o.value) : json(nullptr),
                                  o.exists, o.draggable));
  }
  return objects;
}

}  // namespace

std::string scene_frame(const cons::Scene& scene) { return dump(json{{"op", "scene"}, {"objects", scene_objects(scene)}}); }

std::string error_frame(const std::string& message, std::optional<size_t> line, std::optional<size_t> col) {
  return dump(json{{"op", "error"},
                   {"message", message},
                   {"line", line ? json(*line) : json(nullptr)},
                   {"col", col ? json(*col) : json(nullptr)}});
}

std::optional<cons::Figure> Session::figure() const {
  std::lock_guard lock(mutex_);
  return figure_;
}

std::vector<std::string> Session::handle(std::string_view message) {
  std::lock_guard lock(mutex_);
  json msg;
  try {
    msg = json::parse(message);
  } catch (const json::exception& e) {
    return {error_frame(std::string("malformed JSON: ") + e.what())};
  }
  try {
    if (!msg.is_object() || !msg.contains("op") || !msg["op"].is_string())
      return {error_frame("message must be an object with a string \"op\"")};
    const std::string op = msg["op"];
    if (op == "load") return load(msg.at("source").get<std::string>());
    if (op == "drag") return drag(msg.at("id").get<std::string>(), msg.at("x").get<double>(), msg.at("y").get<double>());
    if (op == "toolset") return toolset(msg.at("name").get<std::string>());
    if (op == "trace") {
      const int n = msg.contains("n") ? msg["n"].get<int>() : 256;
      return trace(msg.at("mover").get<std::string>(), msg.at("path").get<std::string>(),
                   msg.at("target").get<std::string>(), n);
    }
    return {error_frame("unknown op '" + op + "'")};
  } catch (const json::exception& e) {
    return {error_frame(std::string("bad message: ") + e.what())};
  } catch (const GeoError& e) {
    return {error_frame(e.what())};
  }
}

std::vector<std::string> Session::load(const std::string& source) {
  dsl::ParseResult r = dsl::parse(source);
  if (!r.ok()) {
    std::vector<std::string> out;
    for (const auto& e : r.errors) out.push_back(error_frame(e.message, e.line, e.column));
    return out;
  }
  figure_ = std::move(*r.figure);
  state_.clear();
  scene_ = cons::evaluate(*figure_, state_, &state_);
  return {scene_frame(scene_)};
}

std::vector<std::string> Session::drag(const std::string& id, double x, double y) {
  if (!figure_) return {error_frame("no figure loaded")};
  cons::DragResult r = cons::drag(*figure_, state_, id, Vec2(x, y));
  figure_ = std::move(r.figure);
  state_ = std::move(r.state);
  scene_ = std::move(r.scene);
  return {scene_frame(scene_)};
}

std::vector<std::string> Session::toolset(const std::string& name) {
  if (!figure_) return {error_frame("no figure loaded")};
  auto ts = cons::toolset_by_name(name);
  if (!ts) return {error_frame("unknown toolset '" + name + "'")};
  figure_->set_toolset(*ts);
  json frame{{"op", "scene"}, {"objects", scene_objects(scene_)}, {"toolset", name}};
  json violations = json::array();
  for (const auto& v : cons::check_toolset(*figure_)) violations.push_back(json{{"id", v.step}, {"tool", v.tool}});
  frame["violations"] = std::move(violations);
  return {dump(frame)};
}

std::vector<std::string> Session::trace(const std::string& mover, const std::string& path, const std::string& target,
                                        int n) {
  if (!figure_) return {error_frame("no figure loaded")};
  if (n < 2 || n > 100000) return {error_frame("sample count must be in [2, 100000]")};
  const cons::LocusTrace t = cons::trace_locus(*figure_, mover, cons::path_from_object(*figure_, path), target, n);
  json objects = scene_objects(scene_);
  objects.push_back(object_json("trace:" + target, "polyline", pieces_json(t.polyline()), true, false));
  return {dump(json{{"op", "scene"}, {"objects", std::move(objects)}})};
}

}  // namespace geo::serve
