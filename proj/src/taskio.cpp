#include "turtlesyn/taskio.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace tsyn {
namespace {

using ordered_json = nlohmann::ordered_json;

struct BadTask {
  std::string message;
};

[[noreturn]] void fail(const std::string& message) { throw BadTask{message}; }

void require_keys(const ordered_json& j, const char* where,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
  if (!j.is_object()) fail(std::string(where) + " must be an object");
  for (const char* key : required)
    if (!j.contains(key)) fail(std::string(where) + " is missing key '" + key + "'");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    auto known = [&](std::initializer_list<const char*> names) {
      return std::any_of(names.begin(), names.end(),
                         [&](const char* n) { return key == n; });
    };
    if (!known(required) && !known(optional))
      fail(std::string(where) + " has unknown key '" + key + "'");
  }
}

int read_int(const ordered_json& j, const char* where) {
  if (!j.is_number_integer()) fail(std::string(where) + " must be an integer");
  return j.get<int>();
}

Cell read_cell(const ordered_json& j, const GridWorld& world, const char* where) {
  if (!j.is_object() || !j.contains("row") || !j.contains("col"))
    fail(std::string(where) + " needs 'row' and 'col'");
  Cell c{read_int(j.at("row"), where), read_int(j.at("col"), where)};
  if (!world.in_bounds(c)) fail(std::string(where) + " is outside the grid");
  return c;
}

Cell read_cell_pair(const ordered_json& j, const GridWorld& world, const char* where) {
  if (!j.is_array() || j.size() != 2) fail(std::string(where) + " must be a [row, col] pair");
  Cell c{read_int(j[0], where), read_int(j[1], where)};
  if (!world.in_bounds(c)) fail(std::string(where) + " is outside the grid");
  return c;
}

BlockKind read_block(const ordered_json& j, const char* where) {
  if (!j.is_string()) fail(std::string(where) + " must be a block name");
  auto block = block_from_name(j.get<std::string>());
  if (!block) fail(std::string(where) + ": unknown block '" + j.get<std::string>() + "'");
  return *block;
}

CodeConstraint read_constraint(const ordered_json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    fail("each constraint must be an object with a 'type' string");
  const std::string type = j.at("type").get<std::string>();
  if (type == "at_most_commands") {
    require_keys(j, "at_most_commands", {"type", "n"}, {});
    int n = read_int(j.at("n"), "at_most_commands.n");
    if (n < 1) fail("at_most_commands.n must be at least 1");
    return CodeConstraint::at_most(n);
  }
  if (type == "exactly_commands") {
    require_keys(j, "exactly_commands", {"type", "n"}, {});
    int n = read_int(j.at("n"), "exactly_commands.n");
    if (n < 1) fail("exactly_commands.n must be at least 1");
    return CodeConstraint::exactly(n);
  }
  if (type == "allowed_blocks") {
    require_keys(j, "allowed_blocks", {"type", "blocks"}, {});
    const ordered_json& arr = j.at("blocks");
    if (!arr.is_array() || arr.empty()) fail("allowed_blocks.blocks must be a nonempty array");
    std::set<BlockKind> blocks;
    for (const auto& entry : arr)
      if (!blocks.insert(read_block(entry, "allowed_blocks.blocks")).second)
        fail("allowed_blocks.blocks has a duplicate entry");
    return CodeConstraint::allowed(std::move(blocks));
  }
  if (type == "must_use") {
    require_keys(j, "must_use", {"type", "block"}, {});
    return CodeConstraint::must_use(read_block(j.at("block"), "must_use.block"));
  }
  if (type == "forbid") {
    require_keys(j, "forbid", {"type", "block"}, {});
    return CodeConstraint::forbid(read_block(j.at("block"), "forbid.block"));
  }
  if (type == "max_occurrences") {
    require_keys(j, "max_occurrences", {"type", "block", "k"}, {});
    int k = read_int(j.at("k"), "max_occurrences.k");
    if (k < 1) fail("max_occurrences.k must be at least 1");
    return CodeConstraint::max_occurrences(read_block(j.at("block"), "max_occurrences.block"), k);
  }
  fail("unknown constraint type '" + type + "'");
}

Task read_task(const ordered_json& j) {
  require_keys(j, "task", {"grid", "turtle", "goal"},
               {"items", "walls", "forbidden", "pattern", "constraints"});
  Task task;
  GridWorld& world = task.world;

  const ordered_json& grid = j.at("grid");
  require_keys(grid, "grid", {"rows", "cols"}, {});
  world.rows = read_int(grid.at("rows"), "grid.rows");
  world.cols = read_int(grid.at("cols"), "grid.cols");
  if (world.rows < 2 || world.rows > 8 || world.cols < 2 || world.cols > 8)
    fail("grid sides must be between 2 and 8");

  const ordered_json& turtle = j.at("turtle");
  require_keys(turtle, "turtle", {"row", "col", "dir"}, {});
  world.start.row = read_int(turtle.at("row"), "turtle.row");
  world.start.col = read_int(turtle.at("col"), "turtle.col");
  if (!world.in_bounds(cell_of(world.start))) fail("turtle starts outside the grid");
  if (!turtle.at("dir").is_string()) fail("turtle.dir must be a string");
  auto dir = direction_from_name(turtle.at("dir").get<std::string>());
  if (!dir) fail("turtle.dir must be one of N, E, S, W");
  world.start.dir = *dir;

  if (j.contains("items")) {
    for (const auto& entry : j.at("items")) {
      require_keys(entry, "items entry", {"row", "col", "kind"}, {});
      Cell c = read_cell(entry, world, "items entry");
      if (!entry.at("kind").is_string()) fail("items entry kind must be a string");
      auto kind = item_from_name(entry.at("kind").get<std::string>());
      if (!kind) fail("unknown item kind '" + entry.at("kind").get<std::string>() + "'");
      if (!world.items.emplace(c, *kind).second) fail("two items share one cell");
    }
  }
  if (j.contains("walls")) {
    for (const auto& entry : j.at("walls")) {
      require_keys(entry, "walls entry", {"row", "col"}, {});
      if (!world.walls.insert(read_cell(entry, world, "walls entry")).second)
        fail("duplicate wall cell");
    }
  }
  if (j.contains("forbidden")) {
    for (const auto& entry : j.at("forbidden")) {
      require_keys(entry, "forbidden entry", {"row", "col"}, {});
      if (!world.forbidden.insert(read_cell(entry, world, "forbidden entry")).second)
        fail("duplicate forbidden cell");
    }
  }

  for (const auto& [cell, kind] : world.items) {
    (void)kind;
    if (world.walls.count(cell)) fail("an item cell is also a wall");
    if (world.forbidden.count(cell)) fail("an item cell is also forbidden");
  }
  for (const Cell& cell : world.walls)
    if (world.forbidden.count(cell)) fail("a wall cell is also forbidden");
  if (world.walls.count(cell_of(world.start))) fail("turtle starts on a wall");
  if (world.forbidden.count(cell_of(world.start))) fail("turtle starts on a forbidden cell");

  if (j.contains("pattern")) {
    for (const auto& entry : j.at("pattern")) {
      require_keys(entry, "pattern entry", {"from", "to", "color"}, {});
      Cell a = read_cell_pair(entry.at("from"), world, "pattern entry from");
      Cell b = read_cell_pair(entry.at("to"), world, "pattern entry to");
      if (std::abs(a.row - b.row) + std::abs(a.col - b.col) != 1)
        fail("pattern edge endpoints must be 4-adjacent");
      if (!entry.at("color").is_string()) fail("pattern entry color must be a string");
      auto color = color_from_name(entry.at("color").get<std::string>());
      if (!color) fail("unknown pen color '" + entry.at("color").get<std::string>() + "'");
      world.pattern.push_back(make_segment(a, b, *color));
    }
    std::sort(world.pattern.begin(), world.pattern.end());
    for (size_t i = 1; i < world.pattern.size(); ++i)
      if (world.pattern[i - 1].a == world.pattern[i].a && world.pattern[i - 1].b == world.pattern[i].b)
        fail("pattern draws the same edge twice");
  }

  const ordered_json& goal = j.at("goal");
  require_keys(goal, "goal", {"type"}, {"item"});
  if (!goal.at("type").is_string()) fail("goal.type must be a string");
  auto type = goal_type_from_name(goal.at("type").get<std::string>());
  if (!type) fail("goal.type must be one of find, collect_all, draw");
  if (*type == GoalType::Draw) {
    if (goal.contains("item")) fail("draw goals take no item");
    task.goal = Goal::draw();
  } else {
    if (!goal.contains("item") || !goal.at("item").is_string())
      fail("find and collect_all goals need an 'item' string");
    auto item = item_from_name(goal.at("item").get<std::string>());
    if (!item) fail("unknown item kind '" + goal.at("item").get<std::string>() + "'");
    task.goal = *type == GoalType::Find ? Goal::find(*item) : Goal::collect_all(*item);
  }
  if (task.goal.type == GoalType::Draw && world.pattern.empty())
    fail("draw goals require a nonempty pattern");
  if (task.goal.type != GoalType::Draw && !world.pattern.empty())
    fail("only draw goals may carry a pattern");
  if (task.goal.type == GoalType::Find && world.items.count(cell_of(world.start)))
    fail("find goals forbid an item on the start cell");

  if (j.contains("constraints"))
    for (const auto& entry : j.at("constraints")) task.constraints.push_back(read_constraint(entry));
  canonicalize_constraints(task.constraints);
  for (size_t i = 1; i < task.constraints.size(); ++i)
    if (task.constraints[i - 1] == task.constraints[i]) fail("duplicate constraint");
  for (const CodeConstraint& c : task.constraints) {
    if (c.type != ConstraintType::MustUse) continue;
    for (const CodeConstraint& d : task.constraints)
      if (d.type == ConstraintType::Forbid && d.block == c.block)
        fail(std::string("'") + block_name(c.block) + "' is both required and forbidden");
  }
  return task;
}

ordered_json cell_json(const Cell& c) {
  ordered_json j;
  j["row"] = c.row;
  j["col"] = c.col;
  return j;
}

ordered_json constraint_json(const CodeConstraint& c) {
  ordered_json j;
  switch (c.type) {
    case ConstraintType::AtMostCommands:
      j["type"] = "at_most_commands";
      j["n"] = c.n;
      break;
    case ConstraintType::ExactlyCommands:
      j["type"] = "exactly_commands";
      j["n"] = c.n;
      break;
    case ConstraintType::AllowedBlocks: {
      j["type"] = "allowed_blocks";
      auto blocks = ordered_json::array();
      for (BlockKind b : c.blocks) blocks.push_back(block_name(b));
      j["blocks"] = std::move(blocks);
      break;
    }
    case ConstraintType::MustUse:
      j["type"] = "must_use";
      j["block"] = block_name(c.block);
      break;
    case ConstraintType::Forbid:
      j["type"] = "forbid";
      j["block"] = block_name(c.block);
      break;
    case ConstraintType::MaxOccurrences:
      j["type"] = "max_occurrences";
      j["block"] = block_name(c.block);
      j["k"] = c.n;
      break;
  }
  return j;
}

}  // namespace

std::variant<Task, IoError> task_from_json(const std::string& text) {
  try {
    return read_task(ordered_json::parse(text));
  } catch (const BadTask& e) {
    return IoError{e.message};
  } catch (const std::exception& e) {
    return IoError{e.what()};
  }
}

std::string task_to_json(const Task& task) {
  const GridWorld& world = task.world;
  ordered_json j;
  j["grid"]["rows"] = world.rows;
  j["grid"]["cols"] = world.cols;
  j["turtle"]["row"] = world.start.row;
  j["turtle"]["col"] = world.start.col;
  j["turtle"]["dir"] = direction_name(world.start.dir);

  auto items = ordered_json::array();
  for (const auto& [cell, kind] : world.items) {
    ordered_json entry = cell_json(cell);
    entry["kind"] = item_name(kind);
    items.push_back(std::move(entry));
  }
  j["items"] = std::move(items);

  auto walls = ordered_json::array();
  for (const Cell& cell : world.walls) walls.push_back(cell_json(cell));
  j["walls"] = std::move(walls);

  auto forbidden = ordered_json::array();
  for (const Cell& cell : world.forbidden) forbidden.push_back(cell_json(cell));
  j["forbidden"] = std::move(forbidden);

  std::vector<Segment> pattern = world.pattern;
  std::sort(pattern.begin(), pattern.end());
  auto edges = ordered_json::array();
  for (const Segment& seg : pattern) {
    ordered_json entry;
    entry["from"] = {seg.a.row, seg.a.col};
    entry["to"] = {seg.b.row, seg.b.col};
    entry["color"] = color_name(seg.color);
    edges.push_back(std::move(entry));
  }
  j["pattern"] = std::move(edges);

  j["goal"]["type"] = goal_type_name(task.goal.type);
  if (task.goal.type != GoalType::Draw) j["goal"]["item"] = item_name(task.goal.item);

  std::vector<CodeConstraint> constraints = task.constraints;
  canonicalize_constraints(constraints);
  auto arr = ordered_json::array();
  for (const CodeConstraint& c : constraints) arr.push_back(constraint_json(c));
  j["constraints"] = std::move(arr);

  return j.dump(2);
}

}  // namespace tsyn
