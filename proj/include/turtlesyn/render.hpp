#pragma once

#include <string>

#include "turtlesyn/model.hpp"

namespace tsyn {

// Deterministic SVG picture of a task: 100-unit cells, grid lines, walls as
// filled rectangles, forbidden cells hatched, the drawn pattern as colored
// strokes, items as labeled circles, and the turtle as an oriented triangle.
// When `code` is given its execution trajectory is overlaid as a polyline.
// Identical inputs produce byte-identical output.
std::string render_svg(const Task& task, const Program* code = nullptr);

}  // namespace tsyn
