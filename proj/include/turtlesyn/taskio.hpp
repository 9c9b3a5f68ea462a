#pragma once

#include <string>
#include <variant>

#include "turtlesyn/model.hpp"

namespace tsyn {

struct IoError {
  std::string message;
};

// Parses a task from JSON text and enforces every structural invariant:
// grid sides in [2,8], cells in bounds, items/walls/forbidden pairwise
// disjoint, start cell free (and item-free for find goals), pattern edges
// 4-adjacent and draw-goal-only, constraint parameters well formed.
std::variant<Task, IoError> task_from_json(const std::string& text);

// Canonical serialization: fixed key order (grid, turtle, items, walls,
// forbidden, pattern, goal, constraints), arrays sorted, two-space indent.
// Round-trips through task_from_json to the identical string.
std::string task_to_json(const Task& task);

}  // namespace tsyn
