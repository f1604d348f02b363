#include "geo/construction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>

#include "geo/transforms.hpp"

namespace geo::cons {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string Step::tool_name() const {
  if (const auto* m = std::get_if<std::string>(&tool)) return *m;
  return std::string(tool_spec(std::get<ToolId>(tool)).name);
}

std::string format_call(const Step& s) {
  std::string out = s.tool_name() + "(";
  bool first = true;
  auto sep = [&] {
    if (!first) out += ", ";
    first = false;
  };
  for (const auto& in : s.inputs) {
    sep();
    out += in;
  }
  const bool branch = !s.is_macro_call() && tool_spec(std::get<ToolId>(s.tool)).branching;
  for (double p : s.params) {
    sep();
    out += branch ? "branch=" + format_number(p) : format_number(p);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Figure

std::optional<StepIssue> check_step_against(const Step& s, const std::map<ObjectId, Kind>& kinds,
                                            const std::map<std::string, Macro>& macros,
                                            std::vector<Kind>* output_kinds) {
  using Code = StepIssue::Code;
  if (s.outputs.empty()) return StepIssue{Code::Arity, "step defines no object", {}};
  std::set<ObjectId> seen;
  for (const auto& o : s.outputs) {
    if (kinds.count(o) || !seen.insert(o).second)
      return StepIssue{Code::DuplicateId, "identifier '" + o + "' is already defined", {}};
  }
  auto check_input = [&](size_t i, KindMask accepted) -> std::optional<StepIssue> {
    auto it = kinds.find(s.inputs[i]);
    if (it == kinds.end())
      return StepIssue{Code::UndefinedIdentifier, "UndefinedIdentifier: '" + s.inputs[i] + "' is not defined", i};
    if (!(accepted & mask(it->second)))
      return StepIssue{Code::TypeMismatch,
                       "argument '" + s.inputs[i] + "' has kind " + std::string(to_string(it->second)), i};
    return std::nullopt;
  };

  if (const auto* name = std::get_if<std::string>(&s.tool)) {
    auto it = macros.find(*name);
    if (it == macros.end()) return StepIssue{Code::UnknownTool, "unknown tool or macro '" + *name + "'", {}};
    const Macro& m = it->second;
    if (s.inputs.size() != m.inputs.size() || !s.params.empty())
      return StepIssue{Code::Arity,
                       "macro '" + m.name + "' expects " + std::to_string(m.inputs.size()) + " object arguments", {}};
    if (s.outputs.size() != m.outputs.size())
      return StepIssue{Code::Arity, "macro '" + m.name + "' returns " + std::to_string(m.outputs.size()) + " objects", {}};
    for (size_t i = 0; i < s.inputs.size(); ++i)
      if (auto issue = check_input(i, mask(m.inputs[i].kind))) return issue;
    if (output_kinds) *output_kinds = m.output_kinds;
    return std::nullopt;
  }

  const ToolSpec& spec = tool_spec(std::get<ToolId>(s.tool));
  if (s.outputs.size() != 1) return StepIssue{Code::Arity, std::string(spec.name) + " defines one object", {}};
  const size_t n_in = s.inputs.size();
  const bool arity_ok = spec.variadic ? n_in >= static_cast<size_t>(spec.min_inputs) : n_in == spec.inputs.size();
  if (!arity_ok || static_cast<int>(s.params.size()) < spec.min_params ||
      static_cast<int>(s.params.size()) > spec.max_params) {
    std::string expect = std::to_string(spec.inputs.size()) + (spec.variadic ? "+" : "") + " object argument(s)";
    if (spec.max_params > 0)
      expect += " and " + (spec.min_params == spec.max_params ? std::to_string(spec.max_params)
                                                              : "up to " + std::to_string(spec.max_params)) +
                " number(s)";
    return StepIssue{Code::Arity, std::string(spec.name) + " expects " + expect, {}};
  }
  for (size_t i = 0; i < n_in; ++i)
    if (auto issue = check_input(i, spec.inputs[std::min(i, spec.inputs.size() - 1)])) return issue;
  for (double p : s.params)
    if (!std::isfinite(p)) return StepIssue{Code::BadParam, "numeric argument is not finite", {}};
  if (spec.branching && !s.params.empty() && s.params[0] != 0.0 && s.params[0] != 1.0)
    return StepIssue{Code::BadParam, "branch selector must be 0 or 1", {}};
  if (spec.id == ToolId::Locus && !s.params.empty() && (s.params[0] < 2 || s.params[0] != std::floor(s.params[0])))
    return StepIssue{Code::BadParam, "locus sample count must be an integer >= 2", {}};
  if (spec.id == ToolId::CircleCenterRadius && !(s.params[0] > 0))
    return StepIssue{Code::BadParam, "radius must be positive", {}};
  if (output_kinds) *output_kinds = {spec.output};
  return std::nullopt;
}

const Macro* Figure::find_macro(std::string_view name) const {
  auto it = macros_.find(std::string(name));
  return it == macros_.end() ? nullptr : &it->second;
}

std::optional<StepIssue> Figure::check_step(const Step& s) const { return check_step_against(s, kinds_, macros_); }

void Figure::add_step(Step s) {
  std::vector<Kind> out;
  if (auto issue = check_step_against(s, kinds_, macros_, &out)) throw GeoError(ErrorCode::MalformedFigure, issue->message);
  for (size_t i = 0; i < s.outputs.size(); ++i) {
    kinds_[s.outputs[i]] = out[i];
    owner_[s.outputs[i]] = steps_.size();
  }
  steps_.push_back(std::move(s));
}

void Figure::add_macro(Macro m) {
  if (find_tool(m.name) || macros_.count(m.name) || kind_from_keyword(m.name) || m.name == "macro" ||
      m.name == "return" || m.name == "toolset")
    throw GeoError(ErrorCode::NameClash, "name '" + m.name + "' is already taken");
  if (m.body.empty()) throw GeoError(ErrorCode::IllFormedBody, "macro '" + m.name + "' has an empty body");
  if (m.outputs.empty()) throw GeoError(ErrorCode::IllFormedBody, "macro '" + m.name + "' returns nothing");
  std::map<ObjectId, Kind> local;
  for (const auto& f : m.inputs)
    if (!local.emplace(f.id, f.kind).second)
      throw GeoError(ErrorCode::IllFormedBody, "duplicate formal '" + f.id + "'");
  std::set<ObjectId> defined;
  for (const auto& s : m.body) {
    std::vector<Kind> out;
    if (auto issue = check_step_against(s, local, macros_, &out))
      throw GeoError(ErrorCode::IllFormedBody, "in macro '" + m.name + "': " + issue->message);
    for (size_t i = 0; i < s.outputs.size(); ++i) {
      local[s.outputs[i]] = out[i];
      defined.insert(s.outputs[i]);
    }
  }
  m.output_kinds.clear();
  for (const auto& o : m.outputs) {
    if (!defined.count(o)) throw GeoError(ErrorCode::IllFormedBody, "macro output '" + o + "' is not defined by the body");
    m.output_kinds.push_back(local[o]);
  }
  macro_order_.push_back(m.name);
  macros_.emplace(m.name, std::move(m));
}

const Step* Figure::find_step(const ObjectId& id) const {
  auto it = owner_.find(id);
  return it == owner_.end() ? nullptr : &steps_[it->second];
}

std::optional<Kind> Figure::kind_of(const ObjectId& id) const {
  auto it = kinds_.find(id);
  if (it == kinds_.end()) return std::nullopt;
  return it->second;
}

Figure Figure::with_params(const ObjectId& id, std::vector<double> params) const {
  Figure out = *this;
  auto it = owner_.find(id);
  if (it == owner_.end()) throw GeoError(ErrorCode::MalformedFigure, "unknown object '" + id + "'");
  out.steps_[it->second].params = std::move(params);
  return out;
}

Figure Figure::prefix(size_t n) const {
  Figure out(toolset_);
  out.macros_ = macros_;
  out.macro_order_ = macro_order_;
  for (size_t i = 0; i < std::min(n, steps_.size()); ++i) out.add_step(steps_[i]);
  return out;
}

Figure define_macro(const Figure& fig, const std::string& name, std::vector<Formal> inputs, std::vector<Step> body,
                    std::vector<ObjectId> outputs) {
  Figure out = fig;
  out.add_macro(Macro{name, std::move(inputs), std::move(body), std::move(outputs), {}});
  return out;
}

// ---------------------------------------------------------------------------
// Macro expansion

namespace {

void expand_call(const Figure& fig, const Macro& m, const std::vector<ObjectId>& actual_in,
                 const std::vector<ObjectId>& actual_out, const std::string& prefix, const ObjectId& origin,
                 std::vector<FlatStep>& out) {
  std::map<ObjectId, ObjectId> rename;
  for (size_t i = 0; i < m.inputs.size(); ++i) rename[m.inputs[i].id] = actual_in[i];
  for (size_t i = 0; i < m.outputs.size(); ++i) rename[m.outputs[i]] = actual_out[i];
  auto map_id = [&](const ObjectId& id) {
    auto it = rename.find(id);
    return it != rename.end() ? it->second : prefix + "/" + id;
  };
  const std::set<ObjectId> visible(m.outputs.begin(), m.outputs.end());
  for (const auto& s : m.body) {
    std::vector<ObjectId> ins;
    for (const auto& i : s.inputs) ins.push_back(map_id(i));
    if (const auto* name = std::get_if<std::string>(&s.tool)) {
      std::vector<ObjectId> outs;
      for (const auto& o : s.outputs) outs.push_back(map_id(o));
      expand_call(fig, *fig.find_macro(*name), ins, outs, prefix + "/" + s.id(), origin, out);
    } else {
      out.push_back(FlatStep{map_id(s.id()), std::get<ToolId>(s.tool), std::move(ins), s.params,
                             !visible.count(s.id()), origin});
    }
  }
}

}  // namespace

std::vector<FlatStep> expand(const Figure& fig) {
  std::vector<FlatStep> out;
  for (const auto& s : fig.steps()) {
    if (const auto* name = std::get_if<std::string>(&s.tool)) {
      expand_call(fig, *fig.find_macro(*name), s.inputs, s.outputs, s.id(), s.id(), out);
    } else {
      out.push_back(FlatStep{s.id(), std::get<ToolId>(s.tool), s.inputs, s.params, false, s.id()});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scene

const SceneObject* Scene::find(const ObjectId& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &objects_[it->second];
}

const SceneObject& Scene::at(const ObjectId& id) const {
  const SceneObject* o = find(id);
  if (!o) throw GeoError(ErrorCode::MalformedFigure, "no object '" + id + "' in scene");
  return *o;
}

bool Scene::all_exist() const {
  return std::all_of(objects_.begin(), objects_.end(), [](const SceneObject& o) { return o.internal || o.exists; });
}

void Scene::push(SceneObject o) {
  index_[o.id] = objects_.size();
  objects_.push_back(std::move(o));
}

bool same_value(const Value& a, const Value& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, std::monostate>) return true;
        else if constexpr (std::is_same_v<T, HPoint> || std::is_same_v<T, HLine>) return x.vec() == y.vec();
        else if constexpr (std::is_same_v<T, SegmentValue>) return x.a.vec() == y.a.vec() && x.b.vec() == y.b.vec();
        else if constexpr (std::is_same_v<T, RayValue>)
          return x.origin.vec() == y.origin.vec() && x.through.vec() == y.through.vec();
        else if constexpr (std::is_same_v<T, Circle>) return x.center() == y.center() && x.radius() == y.radius();
        else if constexpr (std::is_same_v<T, Conic>) return x.matrix() == y.matrix();
        else if constexpr (std::is_same_v<T, double>) return x == y;
        else return x.closed == y.closed && x.pieces == y.pieces;
      },
      a);
}

bool operator==(const Scene& a, const Scene& b) {
  if (a.objects_.size() != b.objects_.size()) return false;
  for (size_t i = 0; i < a.objects_.size(); ++i) {
    const auto& x = a.objects_[i];
    const auto& y = b.objects_[i];
    if (x.id != y.id || x.kind != y.kind || x.exists != y.exists || x.draggable != y.draggable ||
        x.internal != y.internal || !same_value(x.value, y.value))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct DragRequest {
  ObjectId id;
  Vec2 target;
};

HLine carrier(const Value& v) {
  if (const auto* l = std::get_if<HLine>(&v)) return *l;
  if (const auto* s = std::get_if<SegmentValue>(&v)) return HLine::through(s->a, s->b);
  const auto& r = std::get<RayValue>(v);
  return HLine::through(r.origin, r.through);
}

Curve as_curve(const Value& v) {
  if (const auto* c = std::get_if<Circle>(&v)) return *c;
  if (const auto* c = std::get_if<Conic>(&v)) return *c;
  return carrier(v);
}

// Affine parameter of p along a -> b.
double along(const Vec2& a, const Vec2& b, const Vec2& p) { return (p - a).dot(b - a) / (b - a).squaredNorm(); }

bool within_range(const Value& v, const HPoint& p) {
  constexpr double tol = 1e-9;
  if (const auto* s = std::get_if<SegmentValue>(&v)) {
    if (p.is_infinite()) return false;
    const double u = along(s->a.affine(), s->b.affine(), p.affine());
    return u >= -tol && u <= 1 + tol;
  }
  if (const auto* r = std::get_if<RayValue>(&v)) {
    if (p.is_infinite()) return false;
    return along(r->origin.affine(), r->through.affine(), p.affine()) >= -tol;
  }
  return true;
}

double witness_distance(const Vec3& a, const Vec3& b) {
  if (std::abs(a.z()) > kEpsIncidence && std::abs(b.z()) > kEpsIncidence)
    return (a.head<2>() / a.z() - b.head<2>() / b.z()).norm();
  const Vec3 ua = a.normalized(), ub = b.normalized();
  return std::min((ua - ub).norm(), (ua + ub).norm());
}

double project_param(const Value& curve, const Vec2& target) {
  if (const auto* l = std::get_if<HLine>(&curve)) return l->parameter_of(target);
  if (const auto* s = std::get_if<SegmentValue>(&curve))
    return std::clamp(along(s->a.affine(), s->b.affine(), target), 0.0, 1.0);
  if (const auto* r = std::get_if<RayValue>(&curve))
    return std::max(0.0, along(r->origin.affine(), r->through.affine(), target));
  return std::get<Circle>(curve).angle_of(target);
}

HPoint point_on(const Value& curve, double t) {
  if (const auto* l = std::get_if<HLine>(&curve)) return HPoint::finite(l->at(t));
  if (const auto* s = std::get_if<SegmentValue>(&curve)) {
    const Vec2 a = s->a.affine(), b = s->b.affine();
    return HPoint::finite(a + t * (b - a));
  }
  if (const auto* r = std::get_if<RayValue>(&curve)) {
    const Vec2 a = r->origin.affine(), b = r->through.affine();
    return HPoint::finite(a + t * (b - a));
  }
  return HPoint::finite(std::get<Circle>(curve).at(t));
}

Conic as_conic(const Value& v) {
  if (const auto* c = std::get_if<Circle>(&v)) return c->to_conic();
  return std::get<Conic>(v);
}

const HPoint& pt(const Value* v) { return std::get<HPoint>(*v); }

// Single-valued tools.
Value apply(ToolId tool, const std::vector<const Value*>& in, const std::vector<double>& params) {
  switch (tool) {
    case ToolId::FreePoint: return HPoint::finite(params[0], params[1]);
    case ToolId::PointOn: return point_on(*in[0], params[0]);
    case ToolId::LineThrough: return HLine::through(pt(in[0]), pt(in[1]));
    case ToolId::Segment:
      if (same_point(pt(in[0]), pt(in[1]))) throw GeoError(ErrorCode::DegenerateInput, "zero-length segment");
      pt(in[0]).affine(), pt(in[1]).affine();
      return SegmentValue{pt(in[0]), pt(in[1])};
    case ToolId::Ray:
      if (same_point(pt(in[0]), pt(in[1]))) throw GeoError(ErrorCode::DegenerateInput, "ray through its origin");
      pt(in[0]).affine(), pt(in[1]).affine();
      return RayValue{pt(in[0]), pt(in[1])};
    case ToolId::CircleCenterPoint: return Circle(pt(in[0]).affine(), distance(pt(in[0]), pt(in[1])));
    case ToolId::Parallel: return parallel_through(carrier(*in[0]), pt(in[1]));
    case ToolId::Perpendicular: return perpendicular_through(carrier(*in[0]), pt(in[1]));
    case ToolId::Midpoint: return midpoint(pt(in[0]), pt(in[1]));
    case ToolId::Compass: {
      const auto& s = std::get<SegmentValue>(*in[0]);
      return Circle(pt(in[1]).affine(), distance(s.a, s.b));
    }
    case ToolId::CircleCenterRadius: return Circle(pt(in[0]).affine(), params[0]);
    case ToolId::AngleMeasure: {
      const Vec2 b = pt(in[1]).affine();
      const Vec2 u = pt(in[0]).affine() - b, v = pt(in[2]).affine() - b;
      if (u.norm() == 0 || v.norm() == 0) throw GeoError(ErrorCode::DegenerateInput, "angle with a zero side");
      return std::atan2(std::abs(u.x() * v.y() - u.y() * v.x()), u.dot(v));
    }
    case ToolId::Polar: return polar(as_conic(*in[0]), pt(in[1]));
    case ToolId::Invert: return invert_point(std::get<Circle>(*in[0]), pt(in[1]));
    case ToolId::BhInvert: return bh_invert(make_bh_config(as_conic(*in[0]), pt(in[1])), pt(in[2]));
    case ToolId::ConicThrough: {
      std::array<HPoint, 5> pts = {pt(in[0]), pt(in[1]), pt(in[2]), pt(in[3]), pt(in[4])};
      return conic_through(std::span<const HPoint, 5>(pts));
    }
    case ToolId::Polygon: {
      PolylineValue poly;
      poly.closed = true;
      poly.pieces.emplace_back();
      for (const Value* v : in) poly.pieces.back().push_back(pt(v).affine());
      return poly;
    }
    case ToolId::Distance: return distance(pt(in[0]), pt(in[1]));
    case ToolId::Ratio: {
      const double d = std::get<double>(*in[1]);
      if (d == 0.0) throw GeoError(ErrorCode::DegenerateInput, "ratio with zero denominator");
      return std::get<double>(*in[0]) / d;
    }
    case ToolId::Intersect:
    case ToolId::Locus: break;
  }
  throw GeoError(ErrorCode::MalformedFigure, "tool needs special evaluation");
}

struct Evaluator {
  const Figure& fig;
  const BranchState* previous;
  BranchState* next;
  const DragRequest* drag;
  std::optional<double> dragged_param;

  Value intersect_step(const FlatStep& s, const std::vector<const Value*>& in) {
    const auto candidates = intersect(as_curve(*in[0]), as_curve(*in[1]));
    const Vec3* witness = nullptr;
    if (previous) {
      auto it = previous->witness.find(s.id);
      if (it != previous->witness.end()) witness = &it->second;
    }
    if (candidates.empty()) {
      if (witness && next) next->witness[s.id] = *witness;
      return std::monostate{};
    }
    const size_t selector = s.params.empty() ? 0 : static_cast<size_t>(s.params[0]);
    size_t chosen = std::min(selector, candidates.size() - 1);
    if (witness && candidates.size() > 1) {
      std::vector<double> d;
      for (const auto& c : candidates) d.push_back(witness_distance(c.point.vec(), *witness));
      const auto best = static_cast<size_t>(std::min_element(d.begin(), d.end()) - d.begin());
      const double scale = std::max(1.0, *std::max_element(d.begin(), d.end()));
      bool tie = true;
      for (size_t i = 0; i < d.size(); ++i)
        if (i != best && std::abs(d[i] - d[best]) > 1e-12 * scale) tie = false;
      if (!tie) chosen = best;
    }
    const HPoint& p = candidates[chosen].point;
    if (next) next->witness[s.id] = p.vec();
    if (!within_range(*in[0], p) || !within_range(*in[1], p)) return std::monostate{};
    return p;
  }

  Value locus_step(const FlatStep& s, const Scene& scene) {
    if (s.internal) throw GeoError(ErrorCode::Unsupported, "locus inside a macro");
    size_t index = 0;
    while (fig.steps()[index].id() != s.origin) ++index;
    const Figure before = fig.prefix(index);
    LocusPath path = path_from_scene_value(scene.at(s.inputs[2]).value);
    const int n = s.params.empty() ? 256 : static_cast<int>(s.params[0]);
    return trace_locus(before, s.inputs[1], path, s.inputs[0], n).polyline();
  }

  static LocusPath path_from_scene_value(const Value& v) {
    if (const auto* c = std::get_if<Circle>(&v)) return LocusPath{*c};
    if (const auto* l = std::get_if<HLine>(&v)) return LocusPath{*l};
    if (const auto* s = std::get_if<SegmentValue>(&v)) return LocusPath{*s};
    if (const auto* r = std::get_if<RayValue>(&v)) {
      const HLine line = HLine::through(r->origin, r->through);
      const double t0 = line.parameter_of(r->origin.affine());
      const double t1 = line.parameter_of(r->through.affine());
      return LocusPath{line, t0, t0 + 10.0 * (t1 - t0)};
    }
    throw GeoError(ErrorCode::DegenerateInput, "locus path must be a circle, line, segment or ray");
  }

  Scene run() {
    Scene scene;
    for (const FlatStep& s : expand(fig)) {
      const ToolSpec& spec = tool_spec(s.tool);
      SceneObject obj{s.id, spec.output, std::monostate{}, false, spec.draggable && !s.internal, s.internal};
      std::vector<const Value*> in;
      bool inputs_exist = true;
      for (const auto& id : s.inputs) {
        const SceneObject& o = scene.at(id);
        inputs_exist = inputs_exist && o.exists;
        in.push_back(&o.value);
      }
      if (inputs_exist) {
        try {
          std::vector<double> params = s.params;
          if (drag && drag->id == s.id) {
            if (s.tool == ToolId::FreePoint) {
              params = {drag->target.x(), drag->target.y()};
            } else {
              params = {project_param(*in[0], drag->target)};
            }
            dragged_param = params[0];
          }
          if (s.tool == ToolId::Intersect) obj.value = intersect_step(s, in);
          else if (s.tool == ToolId::Locus) obj.value = locus_step(s, scene);
          else obj.value = apply(s.tool, in, params);
        } catch (const GeoError&) {
          obj.value = std::monostate{};
        }
        obj.exists = !std::holds_alternative<std::monostate>(obj.value);
      } else if (s.tool == ToolId::Intersect && previous && next) {
        auto it = previous->witness.find(s.id);
        if (it != previous->witness.end()) next->witness[s.id] = it->second;
      }
      scene.push(std::move(obj));
    }
    return scene;
  }
};

}  // namespace

Scene evaluate(const Figure& fig) { return Evaluator{fig, nullptr, nullptr, nullptr, {}}.run(); }

Scene evaluate(const Figure& fig, const BranchState& previous, BranchState* next) {
  BranchState fresh;
  Evaluator ev{fig, &previous, &fresh, nullptr, {}};
  Scene scene = ev.run();
  if (next) *next = std::move(fresh);
  return scene;
}

DragResult drag(const Figure& fig, const BranchState& state, const ObjectId& point, const Vec2& target) {
  const Step* step = fig.find_step(point);
  if (!step || step->is_macro_call()) throw GeoError(ErrorCode::NotDraggable, "'" + point + "' is not a free point");
  const ToolId tool = std::get<ToolId>(step->tool);
  if (!tool_spec(tool).draggable) throw GeoError(ErrorCode::NotDraggable, "'" + point + "' is not a free point");
  if (!target.allFinite()) throw GeoError(ErrorCode::DegenerateInput, "drag target is not finite");

  DragRequest request{point, target};
  BranchState fresh;
  Evaluator ev{fig, &state, &fresh, &request, {}};
  Scene scene = ev.run();
  std::vector<double> params = step->params;
  if (tool == ToolId::FreePoint) params = {target.x(), target.y()};
  else if (ev.dragged_param) params = {*ev.dragged_param};
  // Re-evaluation with the stored parameters reproduces this scene exactly.
  return DragResult{fig.with_params(point, std::move(params)), std::move(scene), std::move(fresh)};
}

// ---------------------------------------------------------------------------
// Toolsets

namespace {

void check_steps(const Figure& fig, const std::vector<Step>& steps, const Toolset& ts, const ObjectId* top,
                 std::vector<Violation>& out) {
  for (const auto& s : steps) {
    const ObjectId& owner = top ? *top : s.id();
    if (const auto* name = std::get_if<std::string>(&s.tool)) {
      check_steps(fig, fig.find_macro(*name)->body, ts, &owner, out);
    } else if (!ts.allows(std::get<ToolId>(s.tool))) {
      Violation v{owner, s.tool_name()};
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    }
  }
}

}  // namespace

std::vector<Violation> check_toolset(const Figure& fig, const Toolset& toolset) {
  std::vector<Violation> out;
  check_steps(fig, fig.steps(), toolset, nullptr, out);
  return out;
}

std::vector<Violation> check_toolset(const Figure& fig) { return check_toolset(fig, fig.toolset()); }

// ---------------------------------------------------------------------------
// Loci

Vec2 LocusPath::at(double t) const {
  if (const auto* c = std::get_if<Circle>(&curve)) return c->at(t);
  if (const auto* l = std::get_if<HLine>(&curve)) return l->at(t);
  const auto& s = std::get<SegmentValue>(curve);
  const Vec2 a = s.a.affine(), b = s.b.affine();
  return a + t * (b - a);
}

double LocusPath::sample_param(int i, int n) const {
  if (std::holds_alternative<Circle>(curve)) return 2.0 * M_PI * i / n;
  if (std::holds_alternative<HLine>(curve)) return t0 + (t1 - t0) * i / (n - 1);
  return static_cast<double>(i) / (n - 1);
}

PolylineValue LocusTrace::polyline() const {
  PolylineValue out;
  bool in_piece = false;
  bool all = true;
  for (const auto& s : samples) {
    if (!s.exists) {
      in_piece = false;
      all = false;
      continue;
    }
    if (!in_piece) out.pieces.emplace_back();
    in_piece = true;
    out.pieces.back().push_back(s.position);
  }
  out.closed = closed && all;
  return out;
}

bool depends_on(const Figure& fig, const ObjectId& target, const ObjectId& source) {
  const auto flat = expand(fig);
  std::map<ObjectId, const FlatStep*> by_id;
  for (const auto& s : flat) by_id[s.id] = &s;
  std::set<ObjectId> seen;
  std::vector<ObjectId> stack = {target};
  while (!stack.empty()) {
    ObjectId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    auto it = by_id.find(id);
    if (it == by_id.end()) continue;
    for (const auto& in : it->second->inputs) {
      if (in == source) return true;
      stack.push_back(in);
    }
  }
  return false;
}

LocusTrace trace_locus(const Figure& fig, const ObjectId& mover, const LocusPath& path, const ObjectId& target, int n) {
  if (n < 2) throw GeoError(ErrorCode::DegenerateInput, "a locus needs at least two samples");
  const Step* ms = fig.find_step(mover);
  if (!ms || ms->is_macro_call() || !tool_spec(std::get<ToolId>(ms->tool)).draggable)
    throw GeoError(ErrorCode::NotDraggable, "'" + mover + "' is not draggable");
  if (!fig.kind_of(target)) throw GeoError(ErrorCode::MalformedFigure, "unknown target '" + target + "'");
  if (*fig.kind_of(target) != Kind::Point) throw GeoError(ErrorCode::MalformedFigure, "locus target must be a point");
  if (!depends_on(fig, target, mover))
    throw GeoError(ErrorCode::NoDependency, "'" + target + "' does not depend on '" + mover + "'");

  LocusTrace trace;
  trace.closed = path.closed();
  BranchState state;
  evaluate(fig, BranchState{}, &state);
  Figure current = fig;
  for (int i = 0; i < n; ++i) {
    const double t = path.sample_param(i, n);
    DragResult r = drag(current, state, mover, path.at(t));
    current = std::move(r.figure);
    state = std::move(r.state);
    const SceneObject& obj = r.scene.at(target);
    LocusSample sample{t, Vec2::Zero(), false};
    if (obj.exists) {
      const auto& p = std::get<HPoint>(obj.value);
      if (!p.is_infinite()) {
        sample.position = p.affine();
        sample.exists = true;
      }
    }
    trace.samples.push_back(sample);
  }
  return trace;
}

LocusPath path_from_object(const Figure& fig, const ObjectId& path_id) {
  const Scene scene = evaluate(fig);
  const SceneObject* o = scene.find(path_id);
  if (!o || !o->exists) throw GeoError(ErrorCode::DegenerateInput, "path object '" + path_id + "' does not exist");
  if (const auto* c = std::get_if<Circle>(&o->value)) return LocusPath{*c};
  if (const auto* l = std::get_if<HLine>(&o->value)) return LocusPath{*l};
  if (const auto* s = std::get_if<SegmentValue>(&o->value)) return LocusPath{*s};
  throw GeoError(ErrorCode::DegenerateInput, "path must be a circle, line or segment");
}

// ---------------------------------------------------------------------------
// Protocol

std::vector<std::string> protocol(const Figure& fig) {
  std::vector<std::string> lines;
  const auto flat = expand(fig);
  auto tag = [](ToolId t) { return tool_spec(t).non_euclidean ? std::string("  [NON-EUCLIDEAN-INPUT]") : std::string(); };
  for (const auto& s : fig.steps()) {
    std::string outs;
    for (const auto& o : s.outputs) outs += (outs.empty() ? "" : ", ") + o;
    std::string line = outs + " = " + format_call(s);
    if (!s.is_macro_call()) {
      lines.push_back(line + tag(std::get<ToolId>(s.tool)));
      continue;
    }
    lines.push_back(line + "  [macro]");
    for (const auto& f : flat) {
      if (f.origin != s.id()) continue;
      Step shown{{f.id}, f.tool, f.inputs, f.params};
      lines.push_back("    " + f.id + " = " + format_call(shown) + tag(f.tool));
    }
  }
  return lines;
}

}  // namespace geo::cons
