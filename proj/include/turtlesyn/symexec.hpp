#pragma once

#include <cstdint>
#include <optional>

#include "turtlesyn/model.hpp"

namespace tsyn {

// Trajectory of `code` on an obstacle-free rows x cols grid from `start`.
// Crashes happen exactly when a move would leave the grid.
Trajectory trace_on_empty(const Program& code, int rows, int cols, Pose start);

// Samples a start pose from which `code` runs on the empty grid without
// crashing: up to 200 uniform draws, then a seeded-random-order scan of all
// rows*cols*4 poses. Empty result means no valid pose exists.
std::optional<Pose> sample_valid_pose(const Program& code, int rows, int cols, uint64_t seed);

}  // namespace tsyn
