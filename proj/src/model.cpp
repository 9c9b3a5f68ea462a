#include "turtlesyn/model.hpp"

#include <algorithm>

namespace tsyn {

Direction turn_left(Direction d) {
  switch (d) {
    case Direction::North: return Direction::West;
    case Direction::West: return Direction::South;
    case Direction::South: return Direction::East;
    case Direction::East: return Direction::North;
  }
  return d;
}

Direction turn_right(Direction d) {
  switch (d) {
    case Direction::North: return Direction::East;
    case Direction::East: return Direction::South;
    case Direction::South: return Direction::West;
    case Direction::West: return Direction::North;
  }
  return d;
}

const char* direction_name(Direction d) {
  switch (d) {
    case Direction::North: return "N";
    case Direction::East: return "E";
    case Direction::South: return "S";
    case Direction::West: return "W";
  }
  return "?";
}

std::optional<Direction> direction_from_name(const std::string& name) {
  if (name == "N") return Direction::North;
  if (name == "E") return Direction::East;
  if (name == "S") return Direction::South;
  if (name == "W") return Direction::West;
  return std::nullopt;
}

Cell step_from(Cell c, Direction d) {
  switch (d) {
    case Direction::North: return Cell{c.row - 1, c.col};
    case Direction::South: return Cell{c.row + 1, c.col};
    case Direction::East: return Cell{c.row, c.col + 1};
    case Direction::West: return Cell{c.row, c.col - 1};
  }
  return c;
}

const char* item_name(ItemKind k) {
  switch (k) {
    case ItemKind::Strawberry: return "strawberry";
    case ItemKind::Lemon: return "lemon";
    case ItemKind::Apple: return "apple";
    case ItemKind::Banana: return "banana";
  }
  return "?";
}

std::optional<ItemKind> item_from_name(const std::string& name) {
  for (int i = 0; i < kItemKindCount; ++i) {
    auto k = static_cast<ItemKind>(i);
    if (name == item_name(k)) return k;
  }
  return std::nullopt;
}

const char* color_name(PenColor c) {
  switch (c) {
    case PenColor::Black: return "black";
    case PenColor::Red: return "red";
    case PenColor::Green: return "green";
    case PenColor::Blue: return "blue";
    case PenColor::Yellow: return "yellow";
    case PenColor::White: return "white";
  }
  return "?";
}

std::optional<PenColor> color_from_name(const std::string& name) {
  for (int i = 0; i < kPenColorCount; ++i) {
    auto c = static_cast<PenColor>(i);
    if (name == color_name(c)) return c;
  }
  return std::nullopt;
}

Segment make_segment(Cell x, Cell y, PenColor color) {
  if (y < x) std::swap(x, y);
  return Segment{x, y, color};
}

const char* goal_type_name(GoalType t) {
  switch (t) {
    case GoalType::Find: return "find";
    case GoalType::CollectAll: return "collect_all";
    case GoalType::Draw: return "draw";
  }
  return "?";
}

std::optional<GoalType> goal_type_from_name(const std::string& name) {
  if (name == "find") return GoalType::Find;
  if (name == "collect_all") return GoalType::CollectAll;
  if (name == "draw") return GoalType::Draw;
  return std::nullopt;
}

const char* basic_name(BasicCmd c) {
  switch (c) {
    case BasicCmd::Forward: return "forward";
    case BasicCmd::Back: return "back";
    case BasicCmd::Left: return "left";
    case BasicCmd::Right: return "right";
  }
  return "?";
}

std::optional<BasicCmd> basic_from_name(const std::string& name) {
  for (int i = 0; i < kBasicCmdCount; ++i) {
    auto c = static_cast<BasicCmd>(i);
    if (name == basic_name(c)) return c;
  }
  return std::nullopt;
}

const char* block_name(BlockKind b) {
  switch (b) {
    case BlockKind::Forward: return "forward";
    case BlockKind::Back: return "back";
    case BlockKind::Left: return "left";
    case BlockKind::Right: return "right";
    case BlockKind::SetPenColor: return "setpencolor";
    case BlockKind::Repeat: return "repeat";
  }
  return "?";
}

std::optional<BlockKind> block_from_name(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(BlockKind::Repeat); ++i) {
    auto b = static_cast<BlockKind>(i);
    if (name == block_name(b)) return b;
  }
  return std::nullopt;
}

BlockKind block_of(BasicCmd c) { return static_cast<BlockKind>(static_cast<int>(c)); }

CodeConstraint CodeConstraint::at_most(int n) {
  CodeConstraint c;
  c.type = ConstraintType::AtMostCommands;
  c.n = n;
  return c;
}

CodeConstraint CodeConstraint::exactly(int n) {
  CodeConstraint c;
  c.type = ConstraintType::ExactlyCommands;
  c.n = n;
  return c;
}

CodeConstraint CodeConstraint::allowed(std::set<BlockKind> blocks) {
  CodeConstraint c;
  c.type = ConstraintType::AllowedBlocks;
  c.blocks = std::move(blocks);
  return c;
}

CodeConstraint CodeConstraint::must_use(BlockKind b) {
  CodeConstraint c;
  c.type = ConstraintType::MustUse;
  c.block = b;
  return c;
}

CodeConstraint CodeConstraint::forbid(BlockKind b) {
  CodeConstraint c;
  c.type = ConstraintType::Forbid;
  c.block = b;
  return c;
}

CodeConstraint CodeConstraint::max_occurrences(BlockKind b, int k) {
  CodeConstraint c;
  c.type = ConstraintType::MaxOccurrences;
  c.block = b;
  c.n = k;
  return c;
}

void canonicalize_constraints(std::vector<CodeConstraint>& cs) { std::sort(cs.begin(), cs.end()); }

const char* difficulty_name(Difficulty d) {
  switch (d) {
    case Difficulty::Easy: return "easy";
    case Difficulty::Medium: return "medium";
    case Difficulty::Hard: return "hard";
  }
  return "?";
}

std::optional<Difficulty> difficulty_from_name(const std::string& name) {
  if (name == "easy") return Difficulty::Easy;
  if (name == "medium") return Difficulty::Medium;
  if (name == "hard") return Difficulty::Hard;
  return std::nullopt;
}

const char* crash_reason_name(CrashReason r) {
  switch (r) {
    case CrashReason::OffGrid: return "off_grid";
    case CrashReason::Wall: return "wall";
    case CrashReason::Forbidden: return "forbidden";
  }
  return "?";
}

int code_length(const Program& code) {
  int n = 0;
  for (const Stmt& s : code.statements) {
    if (s.kind == Stmt::Kind::Leaf) {
      n += 1;
    } else {
      n += static_cast<int>(s.body.size());
    }
  }
  return n;
}

int block_occurrences(const Program& code, BlockKind b) {
  int n = 0;
  auto leaf_matches = [&](const LeafStmt& l) {
    if (l.kind == LeafStmt::Kind::Basic) return block_of(l.cmd) == b;
    return b == BlockKind::SetPenColor;
  };
  for (const Stmt& s : code.statements) {
    if (s.kind == Stmt::Kind::Leaf) {
      if (leaf_matches(s.leaf)) ++n;
    } else {
      if (b == BlockKind::Repeat) ++n;
      for (const LeafStmt& l : s.body)
        if (leaf_matches(l)) ++n;
    }
  }
  return n;
}

}  // namespace tsyn
