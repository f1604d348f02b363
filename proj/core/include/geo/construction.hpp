#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "geo/core.hpp"
#include "geo/tools.hpp"

namespace geo::cons {

using ObjectId = std::string;

struct SegmentValue {
  HPoint a;
  HPoint b;
};

struct RayValue {
  HPoint origin;
  HPoint through;
};

/// Sampled curve; consecutive pieces are separated by gaps.
struct PolylineValue {
  std::vector<std::vector<Vec2>> pieces;
  bool closed = false;
};

using Value = std::variant<std::monostate, HPoint, HLine, SegmentValue, RayValue, Circle, Conic, double, PolylineValue>;

/// A tool application or a macro call. Tool steps have one output.
struct Step {
  std::vector<ObjectId> outputs;
  std::variant<ToolId, std::string> tool;
  std::vector<ObjectId> inputs;
  std::vector<double> params;

  const ObjectId& id() const { return outputs.front(); }
  bool is_macro_call() const { return std::holds_alternative<std::string>(tool); }
  std::string tool_name() const;
  friend bool operator==(const Step&, const Step&) = default;
};

struct Formal {
  ObjectId id;
  Kind kind;
  friend bool operator==(const Formal&, const Formal&) = default;
};

/// User-defined compound tool.
struct Macro {
  std::string name;
  std::vector<Formal> inputs;
  std::vector<Step> body;
  std::vector<ObjectId> outputs;
  std::vector<Kind> output_kinds;
  friend bool operator==(const Macro&, const Macro&) = default;
};

/// Why a step cannot be appended.
struct StepIssue {
  enum class Code { UnknownTool, Arity, UndefinedIdentifier, TypeMismatch, DuplicateId, BadParam };
  Code code;
  std::string message;
  /// Offending input position, when the problem is tied to one argument.
  std::optional<size_t> input;
};

/// Construction protocol: topologically ordered steps under a toolset.
class Figure {
 public:
  explicit Figure(Toolset toolset = full_toolset()) : toolset_(std::move(toolset)) {}

  const std::vector<Step>& steps() const { return steps_; }
  const Toolset& toolset() const { return toolset_; }
  void set_toolset(Toolset t) { toolset_ = std::move(t); }
  const std::map<std::string, Macro>& macros() const { return macros_; }
  /// Macro names in definition order.
  const std::vector<std::string>& macro_order() const { return macro_order_; }
  const Macro* find_macro(std::string_view name) const;

  /// Diagnoses a step against the current figure without appending it.
  std::optional<StepIssue> check_step(const Step& s) const;
  /// Appends a step; throws MalformedFigure with the issue message.
  void add_step(Step s);
  void add_macro(Macro m);

  const Step* find_step(const ObjectId& id) const;
  std::optional<Kind> kind_of(const ObjectId& id) const;
  /// Copy with replaced numeric parameters of one step.
  Figure with_params(const ObjectId& id, std::vector<double> params) const;
  /// Copy holding only the first n steps.
  Figure prefix(size_t n) const;

  friend bool operator==(const Figure&, const Figure&) = default;

 private:
  Toolset toolset_;
  std::vector<Step> steps_;
  std::map<std::string, Macro> macros_;
  std::vector<std::string> macro_order_;
  std::map<ObjectId, Kind> kinds_;
  std::map<ObjectId, size_t> owner_;
};

/// Output kinds of a step given the kinds of everything defined before it.
std::optional<StepIssue> check_step_against(const Step& s, const std::map<ObjectId, Kind>& kinds,
                                            const std::map<std::string, Macro>& macros,
                                            std::vector<Kind>* output_kinds = nullptr);

struct SceneObject {
  ObjectId id;
  Kind kind;
  Value value;
  bool exists = false;
  bool draggable = false;
  /// Produced inside a macro expansion.
  bool internal = false;
};

/// One evaluated snapshot, in evaluation order.
class Scene {
 public:
  const std::vector<SceneObject>& objects() const { return objects_; }
  const SceneObject* find(const ObjectId& id) const;
  const SceneObject& at(const ObjectId& id) const;
  /// True when every non-internal object exists.
  bool all_exist() const;
  void push(SceneObject o);

  friend bool operator==(const Scene& a, const Scene& b);

 private:
  std::vector<SceneObject> objects_;
  std::unordered_map<ObjectId, size_t> index_;
};

bool same_value(const Value& a, const Value& b);

/// Last chosen witness per multi-valued step.
struct BranchState {
  std::map<ObjectId, Vec3> witness;
  void clear() { witness.clear(); }
  bool empty() const { return witness.empty(); }
};

/// Cold evaluation: each intersect uses its branch selector.
Scene evaluate(const Figure& fig);
/// Evaluation with branch continuity against `previous`; fills `next`.
Scene evaluate(const Figure& fig, const BranchState& previous, BranchState* next);

struct Violation {
  ObjectId step;
  std::string tool;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Steps whose tool (transitively through macros) is outside the toolset.
std::vector<Violation> check_toolset(const Figure& fig);
std::vector<Violation> check_toolset(const Figure& fig, const Toolset& toolset);

struct DragResult {
  Figure figure;
  Scene scene;
  BranchState state;
};

/// Moves a free point (or a point on a curve, projected to it) and
/// re-evaluates with nearest-witness branch continuity.
DragResult drag(const Figure& fig, const BranchState& state, const ObjectId& point, const Vec2& target);

/// Path swept by a locus mover.
struct LocusPath {
  std::variant<Circle, HLine, SegmentValue> curve;
  /// Parameter interval for unbounded lines.
  double t0 = -10.0;
  double t1 = 10.0;

  Vec2 at(double t) const;
  /// Parameter of the i-th of n uniform samples.
  double sample_param(int i, int n) const;
  bool closed() const { return std::holds_alternative<Circle>(curve); }
};

struct LocusSample {
  double t;
  Vec2 position;
  bool exists;
};

struct LocusTrace {
  std::vector<LocusSample> samples;
  PolylineValue polyline() const;
  bool closed = false;
};

/// Samples `target` while `mover` sweeps `path`, dragging frame to frame.
LocusTrace trace_locus(const Figure& fig, const ObjectId& mover, const LocusPath& path, const ObjectId& target, int n);
/// Uses the current value of a circle, line or segment object as the path.
LocusPath path_from_object(const Figure& fig, const ObjectId& path_id);

/// True when `target` is computed (transitively) from `source`.
bool depends_on(const Figure& fig, const ObjectId& target, const ObjectId& source);

/// Copy of `fig` with a macro added.
Figure define_macro(const Figure& fig, const std::string& name, std::vector<Formal> inputs, std::vector<Step> body,
                    std::vector<ObjectId> outputs);

/// One line per step in evaluation order; macro calls are followed by their
/// indented expansion.
std::vector<std::string> protocol(const Figure& fig);

/// Steps after macro expansion, with fresh ids for macro internals.
struct FlatStep {
  ObjectId id;
  ToolId tool;
  std::vector<ObjectId> inputs;
  std::vector<double> params;
  bool internal = false;
  /// Top-level step this came from.
  ObjectId origin;
};
std::vector<FlatStep> expand(const Figure& fig);

/// Formats a double with 17 significant digits.
std::string format_number(double v);
/// "tool(in1, in2, 0.5)" with the intersect selector written as branch=k.
std::string format_call(const Step& s);

}  // namespace geo::cons
