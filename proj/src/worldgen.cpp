#include "turtlesyn/worldgen.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "turtlesyn/emulator.hpp"
#include "turtlesyn/rng.hpp"
#include "turtlesyn/symexec.hpp"

namespace tsyn {

namespace {

bool adjacent_to_any(Cell c, const std::set<Cell>& cells) {
  const Cell sides[4] = {{c.row - 1, c.col}, {c.row + 1, c.col}, {c.row, c.col - 1}, {c.row, c.col + 1}};
  for (const Cell& s : sides)
    if (cells.count(s)) return true;
  return false;
}

std::optional<GridWorld> attempt_world(const Program& code, const Goal& goal, int rows, int cols,
                                       uint64_t seed, const WorldGenOptions& opts) {
  Rng rng(seed);

  auto pose = sample_valid_pose(code, rows, cols, rng.next_u64());
  if (!pose) return std::nullopt;

  Trajectory traj = trace_on_empty(code, rows, cols, *pose);
  const Cell start = cell_of(*pose);
  const Cell final = traj.visited.back();
  std::set<Cell> on_path(traj.visited.begin(), traj.visited.end());

  GridWorld world;
  world.rows = rows;
  world.cols = cols;
  world.start = *pose;

  switch (goal.type) {
    case GoalType::Find:
      if (final == start) return std::nullopt;
      world.items[final] = goal.item;
      break;
    case GoalType::CollectAll: {
      std::vector<Cell> candidates(on_path.begin(), on_path.end());
      candidates.erase(std::find(candidates.begin(), candidates.end(), final));
      if (candidates.empty()) return std::nullopt;
      int want = rng.range(2, std::min(4, static_cast<int>(candidates.size()) + 1));
      rng.shuffle(candidates);
      world.items[final] = goal.item;
      for (int i = 0; i < want - 1; ++i) world.items[candidates[static_cast<size_t>(i)]] = goal.item;
      break;
    }
    case GoalType::Draw:
      if (traj.segments.empty()) return std::nullopt;
      world.pattern = traj.segments;
      break;
  }

  std::vector<Cell> off_path;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (!on_path.count(Cell{r, c})) off_path.push_back(Cell{r, c});

  std::vector<Cell> adjacent, remote;
  for (const Cell& c : off_path)
    (adjacent_to_any(c, on_path) ? adjacent : remote).push_back(c);
  rng.shuffle(adjacent);
  rng.shuffle(remote);

  std::vector<Cell> pool = adjacent;  // adjacency-first so the wall rule holds
  pool.insert(pool.end(), remote.begin(), remote.end());
  size_t cursor = 0;

  const int wall_cap = rows * cols / 5;
  if (wall_cap >= 1) {
    if (pool.empty()) return std::nullopt;
    int walls = rng.range(1, wall_cap);
    walls = std::min(walls, static_cast<int>(pool.size()));
    for (int i = 0; i < walls; ++i) world.walls.insert(pool[cursor++]);
  }

  if (goal.type != GoalType::Draw) {
    int distractors = rng.range(0, 3);
    for (int i = 0; i < distractors && cursor < pool.size(); ++i) {
      int kind = rng.range(0, kItemKindCount - 2);
      if (kind >= static_cast<int>(goal.item)) ++kind;  // skip the goal's own kind
      world.items[pool[cursor++]] = static_cast<ItemKind>(kind);
    }
  }

  if (opts.forbidden_cells > 0) {
    int want = opts.forbidden_cells + rng.range(-1, 1);
    for (int i = 0; i < want && cursor < pool.size(); ++i) world.forbidden.insert(pool[cursor++]);
  }

  Task assembled;
  assembled.goal = goal;
  assembled.world = world;
  if (!is_solution(assembled, code)) return std::nullopt;
  return world;
}

}  // namespace

std::optional<GridWorld> generate_world(const Program& code, const Goal& goal, int rows, int cols,
                                        uint64_t seed, const WorldGenOptions& opts) {
  // A quick probe so that a code with no valid start pose fails fast instead
  // of burning the whole attempt budget.
  if (!sample_valid_pose(code, rows, cols, derive_seed(seed, 2, 0))) return std::nullopt;

  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    auto world = attempt_world(code, goal, rows, cols, derive_seed(seed, 2, 1 + attempt), opts);
    if (world) return world;
  }
  return std::nullopt;
}

}  // namespace tsyn
