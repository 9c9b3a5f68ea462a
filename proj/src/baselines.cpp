#include "turtlesyn/baselines.hpp"

#include <algorithm>

namespace tsyn {
namespace {

struct GeomMap {
  int out_rows = 0;
  int out_cols = 0;
  Cell (*cell)(Cell, int, int) = nullptr;
  Direction (*dir)(Direction) = nullptr;
};

Cell rotate_cell(Cell c, int /*rows*/, int cols) { return {cols - 1 - c.col, c.row}; }

Direction rotate_dir(Direction d) {
  switch (d) {
    case Direction::North: return Direction::West;
    case Direction::East: return Direction::North;
    case Direction::South: return Direction::East;
    case Direction::West: return Direction::South;
  }
  return d;
}

Cell mirror_cell(Cell c, int /*rows*/, int cols) { return {c.row, cols - 1 - c.col}; }

Direction mirror_dir(Direction d) {
  if (d == Direction::East) return Direction::West;
  if (d == Direction::West) return Direction::East;
  return d;
}

// Rotation followed by a horizontal mirror of the rotated grid.
Cell both_cell(Cell c, int rows, int cols) {
  return {cols - 1 - c.col, rows - 1 - c.row};
}

Direction both_dir(Direction d) { return mirror_dir(rotate_dir(d)); }

GeomMap map_for(Difficulty difficulty, int rows, int cols) {
  switch (difficulty) {
    case Difficulty::Easy: return {cols, rows, rotate_cell, rotate_dir};
    case Difficulty::Medium: return {rows, cols, mirror_cell, mirror_dir};
    case Difficulty::Hard: return {cols, rows, both_cell, both_dir};
  }
  return {rows, cols, mirror_cell, mirror_dir};
}

GridWorld transform_world(const GridWorld& world, const GeomMap& m) {
  GridWorld out;
  out.rows = m.out_rows;
  out.cols = m.out_cols;
  out.start.row = m.cell({world.start.row, world.start.col}, world.rows, world.cols).row;
  out.start.col = m.cell({world.start.row, world.start.col}, world.rows, world.cols).col;
  out.start.dir = m.dir(world.start.dir);
  for (const auto& [cell, kind] : world.items)
    out.items.emplace(m.cell(cell, world.rows, world.cols), kind);
  for (const Cell& cell : world.walls) out.walls.insert(m.cell(cell, world.rows, world.cols));
  for (const Cell& cell : world.forbidden)
    out.forbidden.insert(m.cell(cell, world.rows, world.cols));
  for (const Segment& seg : world.pattern)
    out.pattern.push_back(make_segment(m.cell(seg.a, world.rows, world.cols),
                                       m.cell(seg.b, world.rows, world.cols), seg.color));
  std::sort(out.pattern.begin(), out.pattern.end());
  return out;
}

BasicCmd swap_turn(BasicCmd cmd) {
  if (cmd == BasicCmd::Left) return BasicCmd::Right;
  if (cmd == BasicCmd::Right) return BasicCmd::Left;
  return cmd;
}

BlockKind swap_turn_block(BlockKind block) {
  if (block == BlockKind::Left) return BlockKind::Right;
  if (block == BlockKind::Right) return BlockKind::Left;
  return block;
}

LeafStmt swap_leaf(const LeafStmt& leaf) {
  if (leaf.kind == LeafStmt::Kind::Basic) return LeafStmt::basic(swap_turn(leaf.cmd));
  return leaf;
}

Program swap_turns(const Program& code) {
  Program out;
  for (const Stmt& stmt : code.statements) {
    if (stmt.kind == Stmt::Kind::Leaf) {
      out.statements.push_back(Stmt::from_leaf(swap_leaf(stmt.leaf)));
    } else {
      std::vector<LeafStmt> body;
      for (const LeafStmt& leaf : stmt.body) body.push_back(swap_leaf(leaf));
      out.statements.push_back(Stmt::repeat(stmt.count, body));
    }
  }
  return out;
}

std::vector<CodeConstraint> swap_turn_constraints(std::vector<CodeConstraint> constraints) {
  for (CodeConstraint& c : constraints) {
    c.block = swap_turn_block(c.block);
    std::set<BlockKind> swapped;
    for (BlockKind b : c.blocks) swapped.insert(swap_turn_block(b));
    c.blocks = std::move(swapped);
  }
  canonicalize_constraints(constraints);
  return constraints;
}

}  // namespace

std::pair<Task, Program> rotate_flip(const Task& reference, const Program& code,
                                     Difficulty difficulty) {
  GeomMap m = map_for(difficulty, reference.world.rows, reference.world.cols);
  Task out;
  out.world = transform_world(reference.world, m);
  out.goal = reference.goal;
  if (difficulty == Difficulty::Easy) {
    out.constraints = reference.constraints;
    return {std::move(out), code};
  }
  out.constraints = swap_turn_constraints(reference.constraints);
  return {std::move(out), swap_turns(code)};
}

}  // namespace tsyn
