#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tsyn {

// Grid coordinates: row 0 is the top row, column 0 the leftmost column.
// North means decreasing row, East means increasing column.
enum class Direction : uint8_t { North, East, South, West };

Direction turn_left(Direction d);
Direction turn_right(Direction d);
const char* direction_name(Direction d);
std::optional<Direction> direction_from_name(const std::string& name);

struct Cell {
  int row = 0;
  int col = 0;
  auto operator<=>(const Cell&) const = default;
};

// Cell one step ahead of `c` when facing `d`.
Cell step_from(Cell c, Direction d);

struct Pose {
  int row = 0;
  int col = 0;
  Direction dir = Direction::North;
  auto operator<=>(const Pose&) const = default;
};

inline Cell cell_of(const Pose& p) { return Cell{p.row, p.col}; }

enum class ItemKind : uint8_t { Strawberry, Lemon, Apple, Banana };
constexpr int kItemKindCount = 4;
const char* item_name(ItemKind k);
std::optional<ItemKind> item_from_name(const std::string& name);

enum class PenColor : uint8_t { Black, Red, Green, Blue, Yellow, White };
constexpr int kPenColorCount = 6;
const char* color_name(PenColor c);
std::optional<PenColor> color_from_name(const std::string& name);

// An undirected edge between two 4-adjacent cells, carrying the color it was
// last drawn with. Endpoints are stored normalized (a < b).
struct Segment {
  Cell a;
  Cell b;
  PenColor color = PenColor::Black;
  auto operator<=>(const Segment&) const = default;
};

Segment make_segment(Cell x, Cell y, PenColor color);

enum class GoalType : uint8_t { Find, CollectAll, Draw };
const char* goal_type_name(GoalType t);
std::optional<GoalType> goal_type_from_name(const std::string& name);

// `item` is meaningful for Find and CollectAll only; Draw goals keep it at a
// fixed default so value comparison stays well defined.
struct Goal {
  GoalType type = GoalType::Find;
  ItemKind item = ItemKind::Strawberry;

  auto operator<=>(const Goal&) const = default;

  static Goal find(ItemKind k) { return Goal{GoalType::Find, k}; }
  static Goal collect_all(ItemKind k) { return Goal{GoalType::CollectAll, k}; }
  static Goal draw() { return Goal{GoalType::Draw, ItemKind::Strawberry}; }
};

struct GridWorld {
  int rows = 0;
  int cols = 0;
  Pose start;
  std::map<Cell, ItemKind> items;
  std::set<Cell> walls;
  std::set<Cell> forbidden;
  std::vector<Segment> pattern;  // kept sorted by endpoints

  bool operator==(const GridWorld&) const = default;
  bool in_bounds(Cell c) const { return c.row >= 0 && c.row < rows && c.col >= 0 && c.col < cols; }
};

// Command vocabulary, usable both as statement kinds and as the block names
// code constraints talk about.
enum class BasicCmd : uint8_t { Forward, Back, Left, Right };
constexpr int kBasicCmdCount = 4;
const char* basic_name(BasicCmd c);
std::optional<BasicCmd> basic_from_name(const std::string& name);

enum class BlockKind : uint8_t { Forward, Back, Left, Right, SetPenColor, Repeat };
const char* block_name(BlockKind b);
std::optional<BlockKind> block_from_name(const std::string& name);
BlockKind block_of(BasicCmd c);

enum class ConstraintType : uint8_t {
  AtMostCommands,
  ExactlyCommands,
  AllowedBlocks,
  MustUse,
  Forbid,
  MaxOccurrences,
};

struct CodeConstraint {
  ConstraintType type = ConstraintType::AtMostCommands;
  int n = 0;                    // AtMostCommands / ExactlyCommands / MaxOccurrences cap
  BlockKind block = BlockKind::Forward;  // MustUse / Forbid / MaxOccurrences
  std::set<BlockKind> blocks;   // AllowedBlocks

  auto operator<=>(const CodeConstraint&) const = default;

  static CodeConstraint at_most(int n);
  static CodeConstraint exactly(int n);
  static CodeConstraint allowed(std::set<BlockKind> blocks);
  static CodeConstraint must_use(BlockKind b);
  static CodeConstraint forbid(BlockKind b);
  static CodeConstraint max_occurrences(BlockKind b, int k);
};

// Sorts into the canonical order used by serialization and hashing.
void canonicalize_constraints(std::vector<CodeConstraint>& cs);

// Statements that may appear inside a repeat body: a basic command or a pen
// color change. Top-level statements additionally allow repeat itself.
struct LeafStmt {
  enum class Kind : uint8_t { Basic, SetPenColor } kind = Kind::Basic;
  BasicCmd cmd = BasicCmd::Forward;
  PenColor color = PenColor::Black;

  auto operator<=>(const LeafStmt&) const = default;

  static LeafStmt basic(BasicCmd c) { return LeafStmt{Kind::Basic, c, PenColor::Black}; }
  static LeafStmt pen(PenColor c) { return LeafStmt{Kind::SetPenColor, BasicCmd::Forward, c}; }
};

struct Stmt {
  enum class Kind : uint8_t { Leaf, Repeat } kind = Kind::Leaf;
  LeafStmt leaf;
  int count = 0;               // repeat count, 2..5
  std::vector<LeafStmt> body;  // nonempty for repeat

  auto operator<=>(const Stmt&) const = default;

  static Stmt from_leaf(LeafStmt l) { return Stmt{Kind::Leaf, l, 0, {}}; }
  static Stmt repeat(int count, std::vector<LeafStmt> body) {
    return Stmt{Kind::Repeat, LeafStmt{}, count, std::move(body)};
  }
};

struct Program {
  std::vector<Stmt> statements;
  auto operator<=>(const Program&) const = default;
};

struct Task {
  Goal goal;
  std::vector<CodeConstraint> constraints;  // kept in canonical order
  GridWorld world;
  bool operator==(const Task&) const = default;
};

enum class Difficulty : uint8_t { Easy, Medium, Hard };
const char* difficulty_name(Difficulty d);
std::optional<Difficulty> difficulty_from_name(const std::string& name);

enum class CrashReason : uint8_t { OffGrid, Wall, Forbidden };
const char* crash_reason_name(CrashReason r);

struct Trajectory {
  std::vector<Pose> poses;       // one entry per executed movement command, plus the start
  std::vector<Cell> visited;     // start cell plus one entry per translation
  std::vector<Segment> segments; // drawn edges, sorted, latest color wins
  bool crashed = false;
  std::optional<CrashReason> crash_reason;
};

// Written length of a program: every basic and setpencolor token counts once,
// a repeat header counts zero and its body is counted once regardless of the
// iteration count. "repeat 4 { forward left }" has length 2.
int code_length(const Program& code);

// Occurrences of a block name among written tokens ("repeat" counts the
// header, its body tokens count individually).
int block_occurrences(const Program& code, BlockKind b);

// Stable content digest of a task/code pair: 64 hex chars, independent of
// field ordering in any textual source, identical across process runs.
std::string canonical_hash(const Task& task, const Program& code);

}  // namespace tsyn
