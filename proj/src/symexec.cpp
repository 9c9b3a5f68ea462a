#include "turtlesyn/symexec.hpp"

#include <numeric>
#include <vector>

#include "turtlesyn/emulator.hpp"
#include "turtlesyn/rng.hpp"

namespace tsyn {

Trajectory trace_on_empty(const Program& code, int rows, int cols, Pose start) {
  GridWorld world;
  world.rows = rows;
  world.cols = cols;
  world.start = start;
  return execute(code, world).trajectory;
}

std::optional<Pose> sample_valid_pose(const Program& code, int rows, int cols, uint64_t seed) {
  Rng rng(seed);
  const int total = rows * cols * 4;
  auto pose_at = [&](int index) {
    Pose p;
    p.dir = static_cast<Direction>(index % 4);
    int cell = index / 4;
    p.row = cell / cols;
    p.col = cell % cols;
    return p;
  };
  auto valid = [&](const Pose& p) { return !trace_on_empty(code, rows, cols, p).crashed; };

  for (int attempt = 0; attempt < 200; ++attempt) {
    Pose p = pose_at(static_cast<int>(rng.below(static_cast<uint64_t>(total))));
    if (valid(p)) return p;
  }
  std::vector<int> order(static_cast<size_t>(total));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  for (int index : order) {
    Pose p = pose_at(index);
    if (valid(p)) return p;
  }
  return std::nullopt;
}

}  // namespace tsyn
