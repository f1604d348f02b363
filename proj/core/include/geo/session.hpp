#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geo/construction.hpp"

namespace geo::serve {

/// One client's figure and branch state. Messages are JSON text frames;
/// each call returns the reply frames in order. Calls on the same session
/// are serialized.
class Session {
 public:
  std::vector<std::string> handle(std::string_view message);

  std::optional<cons::Figure> figure() const;

 private:
  std::vector<std::string> load(const std::string& source);
  std::vector<std::string> drag(const std::string& id, double x, double y);
  std::vector<std::string> toolset(const std::string& name);
  std::vector<std::string> trace(const std::string& mover, const std::string& path, const std::string& target, int n);

  mutable std::mutex mutex_;
  std::optional<cons::Figure> figure_;
  cons::BranchState state_;
  cons::Scene scene_;
};

/// {"op":"scene","objects":[...]} for the visible objects of a scene.
std::string scene_frame(const cons::Scene& scene);
/// {"op":"error","message":...,"line":...,"col":...}; line/col are null when absent.
std::string error_frame(const std::string& message, std::optional<size_t> line = {}, std::optional<size_t> col = {});

}  // namespace geo::serve
