#include "turtlesyn/emulator.hpp"

#include <map>
#include <utility>

namespace tsyn {

namespace {

struct Runner {
  const GridWorld& world;
  ExecResult& result;
  Pose pose;
  PenColor pen = PenColor::Black;
  std::map<std::pair<Cell, Cell>, PenColor> edges;

  explicit Runner(const GridWorld& w, ExecResult& r) : world(w), result(r), pose(w.start) {
    result.trajectory.poses.push_back(pose);
    result.trajectory.visited.push_back(cell_of(pose));
    collect(cell_of(pose));
  }

  void collect(Cell c) {
    if (world.items.count(c)) result.collected.insert(c);
  }

  // Returns false when execution halts (crash).
  bool apply(const LeafStmt& l) {
    if (l.kind == LeafStmt::Kind::SetPenColor) {
      pen = l.color;
      return true;
    }
    switch (l.cmd) {
      case BasicCmd::Left:
        pose.dir = turn_left(pose.dir);
        result.trajectory.poses.push_back(pose);
        return true;
      case BasicCmd::Right:
        pose.dir = turn_right(pose.dir);
        result.trajectory.poses.push_back(pose);
        return true;
      case BasicCmd::Forward:
      case BasicCmd::Back: {
        Direction dir = l.cmd == BasicCmd::Forward ? pose.dir : turn_right(turn_right(pose.dir));
        Cell from = cell_of(pose);
        Cell to = step_from(from, dir);
        if (!world.in_bounds(to)) return crash(CrashReason::OffGrid);
        if (world.walls.count(to)) return crash(CrashReason::Wall);
        if (world.forbidden.count(to)) return crash(CrashReason::Forbidden);
        Cell a = from, b = to;
        if (b < a) std::swap(a, b);
        edges[{a, b}] = pen;
        pose.row = to.row;
        pose.col = to.col;
        result.trajectory.poses.push_back(pose);
        result.trajectory.visited.push_back(to);
        collect(to);
        return true;
      }
    }
    return true;
  }

  bool crash(CrashReason reason) {
    result.trajectory.crashed = true;
    result.trajectory.crash_reason = reason;
    return false;
  }
};

}  // namespace

ExecResult execute(const Program& code, const GridWorld& world) {
  ExecResult result;
  Runner run(world, result);
  for (const Stmt& s : code.statements) {
    if (s.kind == Stmt::Kind::Leaf) {
      if (!run.apply(s.leaf)) goto done;
    } else {
      for (int i = 0; i < s.count; ++i)
        for (const LeafStmt& l : s.body)
          if (!run.apply(l)) goto done;
    }
  }
done:
  result.trajectory.segments.reserve(run.edges.size());
  for (const auto& [edge, color] : run.edges)
    result.trajectory.segments.push_back(Segment{edge.first, edge.second, color});
  return result;
}

bool check_goal(const Goal& goal, const GridWorld& world, const ExecResult& result) {
  if (result.trajectory.crashed) return false;
  switch (goal.type) {
    case GoalType::Find: {
      Cell final = result.trajectory.visited.back();
      auto it = world.items.find(final);
      return it != world.items.end() && it->second == goal.item;
    }
    case GoalType::CollectAll: {
      std::set<Cell> seen(result.trajectory.visited.begin(), result.trajectory.visited.end());
      for (const auto& [cell, kind] : world.items)
        if (kind == goal.item && !seen.count(cell)) return false;
      return true;
    }
    case GoalType::Draw:
      return result.trajectory.segments == world.pattern;
  }
  return false;
}

bool check_constraints(const std::vector<CodeConstraint>& constraints, const Program& code) {
  for (const CodeConstraint& c : constraints) {
    switch (c.type) {
      case ConstraintType::AtMostCommands:
        if (code_length(code) > c.n) return false;
        break;
      case ConstraintType::ExactlyCommands:
        if (code_length(code) != c.n) return false;
        break;
      case ConstraintType::AllowedBlocks: {
        for (int b = 0; b <= static_cast<int>(BlockKind::Repeat); ++b) {
          auto kind = static_cast<BlockKind>(b);
          if (!c.blocks.count(kind) && block_occurrences(code, kind) > 0) return false;
        }
        break;
      }
      case ConstraintType::MustUse:
        if (block_occurrences(code, c.block) == 0) return false;
        break;
      case ConstraintType::Forbid:
        if (block_occurrences(code, c.block) > 0) return false;
        break;
      case ConstraintType::MaxOccurrences:
        if (block_occurrences(code, c.block) > c.n) return false;
        break;
    }
  }
  return true;
}

bool is_solution(const Task& task, const Program& code) {
  if (!check_constraints(task.constraints, code)) return false;
  ExecResult result = execute(code, task.world);
  return check_goal(task.goal, task.world, result);
}

ExecResult evaluate(const Task& task, const Program& code) {
  ExecResult result = execute(code, task.world);
  result.goal_met = check_goal(task.goal, task.world, result);
  return result;
}

}  // namespace tsyn
