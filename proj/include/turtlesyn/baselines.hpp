#pragma once

#include <utility>

#include "turtlesyn/model.hpp"

namespace tsyn {

// Geometric task derivation: Easy rotates the grid 90 degrees counterclockwise
// and keeps the code; Medium mirrors the grid horizontally and swaps every
// left/right in the code (and in any constraint that names a turn, so the
// transformed pair stays a valid solution); Hard rotates then mirrors with the
// same code adjustment. All three preserve solvability and code length.
std::pair<Task, Program> rotate_flip(const Task& reference, const Program& code,
                                     Difficulty difficulty);

}  // namespace tsyn
