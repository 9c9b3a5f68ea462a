#pragma once

#include <cstdint>
#include <optional>

#include "turtlesyn/model.hpp"

namespace tsyn {

struct WorldGenOptions {
  // Number of forbidden cells the reference world carried. The generated
  // world gets that count plus or minus one (never below zero); zero means
  // no forbidden cells are ever emitted.
  int forbidden_cells = 0;
  int max_attempts = 50;
};

// Builds a world the given code solves for the given goal: samples a start
// pose, traces the code on an empty grid, then places elements around the
// trajectory. Placement rules per attempt:
//   - trajectory cells never hold walls or forbidden cells
//   - find: the goal item sits exactly on the final trajectory cell
//   - collect_all: the goal item sits on 2..4 trajectory cells, final
//     cell included, and nowhere else
//   - draw: the pattern is the traced segment set and no items are placed
//   - 0..3 distractor items of other kinds on off-trajectory cells
//   - 1..floor(rows*cols/5) walls on off-trajectory cells, at least one
//     adjacent to the trajectory when such a cell exists
// The first assembled world the code actually solves is returned; empty
// result after the attempt budget, or when no valid start pose exists.
std::optional<GridWorld> generate_world(const Program& code, const Goal& goal, int rows, int cols,
                                        uint64_t seed, const WorldGenOptions& opts = {});

}  // namespace tsyn
