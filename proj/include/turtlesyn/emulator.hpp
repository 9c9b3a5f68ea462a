#pragma once

#include <set>

#include "turtlesyn/model.hpp"

namespace tsyn {

struct ExecResult {
  Trajectory trajectory;
  std::set<Cell> collected;  // item cells entered during execution
  bool goal_met = false;     // filled by evaluate(); execute() leaves it false
};

// Runs a program on a world. The pen starts black and is always down: every
// translation draws the edge it crosses in the current color, overwriting any
// earlier color on that edge. Stepping off the grid or into a wall or
// forbidden cell crashes and halts before the move takes effect; the
// trajectory keeps the executed prefix. Entering a cell collects its item.
ExecResult execute(const Program& code, const GridWorld& world);

bool check_goal(const Goal& goal, const GridWorld& world, const ExecResult& result);

// Conjunction over the constraint set; occurrence counts are over written
// tokens, where "repeat" names the repeat header itself.
bool check_constraints(const std::vector<CodeConstraint>& constraints, const Program& code);

bool is_solution(const Task& task, const Program& code);

// execute() plus the goal verdict for the task's goal.
ExecResult evaluate(const Task& task, const Program& code);

}  // namespace tsyn
