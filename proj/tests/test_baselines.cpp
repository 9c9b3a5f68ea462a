#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"
#include "turtlesyn/baselines.hpp"
#include "turtlesyn/emulator.hpp"
#include "turtlesyn/lang.hpp"

using namespace tsyn;

static Program prog(const std::string& text) { return std::get<Program>(parse(text)); }

static Task find_task() {
  GridWorld w;
  w.rows = 4;
  w.cols = 6;
  w.start = {3, 0, Direction::North};
  w.items[{1, 0}] = ItemKind::Lemon;
  w.items[{3, 4}] = ItemKind::Apple;
  w.walls.insert({2, 3});
  w.forbidden.insert({0, 5});
  return {Goal::find(ItemKind::Lemon), {CodeConstraint::at_most(2)}, w};
}

static Task draw_task() {
  GridWorld w;
  w.rows = 5;
  w.cols = 5;
  w.start = {4, 1, Direction::North};
  w.pattern = {make_segment({4, 1}, {3, 1}, PenColor::Blue),
               make_segment({3, 1}, {3, 2}, PenColor::Blue)};
  std::sort(w.pattern.begin(), w.pattern.end());
  return {Goal::draw(), {CodeConstraint::must_use(BlockKind::Right)}, w};
}

TEST_CASE("all variants of all goal kinds stay solvable") {
  Program find_code = prog("forward forward");
  Program draw_code = prog("setpencolor blue forward right forward");
  REQUIRE(is_solution(find_task(), find_code));
  REQUIRE(is_solution(draw_task(), draw_code));

  Rng rng(99);
  std::vector<std::pair<Task, Program>> refs = {{find_task(), find_code},
                                                {draw_task(), draw_code}};
  for (int i = 0; i < 30; ++i) {
    auto [task, code] = testutil::random_solvable_task(rng, 5);
    refs.emplace_back(std::move(task), std::move(code));
  }

  for (const auto& [task, code] : refs) {
    for (Difficulty d : {Difficulty::Easy, Difficulty::Medium, Difficulty::Hard}) {
      auto [t2, c2] = rotate_flip(task, code, d);
      CHECK(is_solution(t2, c2));
      CHECK(code_length(c2) == code_length(code));
      CHECK(t2.goal.type == task.goal.type);
      CHECK(t2.constraints.size() == task.constraints.size());
    }
  }
}

TEST_CASE("easy rotation keeps the code untouched") {
  Task t = find_task();
  Program code = prog("forward forward");
  auto [t2, c2] = rotate_flip(t, code, Difficulty::Easy);
  CHECK(print(c2) == print(code));
  // A 90 degree turn of a 4x6 grid is 6x4.
  CHECK(t2.world.rows == t.world.cols);
  CHECK(t2.world.cols == t.world.rows);
  CHECK(t2.world.items.size() == t.world.items.size());
  CHECK(t2.world.walls.size() == t.world.walls.size());
  CHECK(t2.world.forbidden.size() == t.world.forbidden.size());
}

TEST_CASE("four easy rotations are the identity") {
  for (const Task& t : {find_task(), draw_task()}) {
    Program code = t.goal.type == GoalType::Draw
                       ? prog("setpencolor blue forward right forward")
                       : prog("forward forward");
    Task cur = t;
    Program cur_code = code;
    for (int i = 0; i < 4; ++i) {
      auto [nt, nc] = rotate_flip(cur, cur_code, Difficulty::Easy);
      cur = nt;
      cur_code = nc;
    }
    CHECK(cur.world == t.world);
    CHECK(cur.goal == t.goal);
    CHECK(cur.constraints == t.constraints);
    CHECK(print(cur_code) == print(code));
  }
}

TEST_CASE("the medium mirror is an involution") {
  for (const Task& t : {find_task(), draw_task()}) {
    Program code = t.goal.type == GoalType::Draw
                       ? prog("setpencolor blue forward right forward")
                       : prog("forward forward");
    auto [t1, c1] = rotate_flip(t, code, Difficulty::Medium);
    auto [t2, c2] = rotate_flip(t1, c1, Difficulty::Medium);
    CHECK(t2.world == t.world);
    CHECK(t2.goal == t.goal);
    CHECK(t2.constraints == t.constraints);
    CHECK(print(c2) == print(code));
  }
}

TEST_CASE("the mirror swaps turns in code and constraints") {
  Task t = draw_task();
  Program code = prog("setpencolor blue forward right forward");
  auto [t1, c1] = rotate_flip(t, code, Difficulty::Medium);
  CHECK(print(c1) == "setpencolor blue\nforward\nleft\nforward");
  bool has_left_constraint = false;
  for (const CodeConstraint& c : t1.constraints) {
    if (c.type == ConstraintType::MustUse && c.block == BlockKind::Left)
      has_left_constraint = true;
    CHECK(!(c.type == ConstraintType::MustUse && c.block == BlockKind::Right));
  }
  CHECK(has_left_constraint);
}

TEST_CASE("repeat bodies are mirrored too") {
  GridWorld w;
  w.rows = 5;
  w.cols = 5;
  w.start = {4, 0, Direction::North};
  Program code = prog("repeat 2 { forward right } forward");
  ExecResult run = execute(code, w);
  REQUIRE(!run.trajectory.crashed);
  w.items[run.trajectory.visited.back()] = ItemKind::Banana;
  Task t{Goal::find(ItemKind::Banana), {}, w};
  REQUIRE(is_solution(t, code));
  auto [t1, c1] = rotate_flip(t, code, Difficulty::Medium);
  CHECK(print(c1) == "repeat 2 {\n  forward\n  left\n}\nforward");
  CHECK(is_solution(t1, c1));
}

TEST_CASE("hard composes a rotation with the mirror") {
  Task t = find_task();
  Program code = prog("forward forward");
  auto [easy_t, easy_c] = rotate_flip(t, code, Difficulty::Easy);
  auto [expect_t, expect_c] = rotate_flip(easy_t, easy_c, Difficulty::Medium);
  auto [hard_t, hard_c] = rotate_flip(t, code, Difficulty::Hard);
  CHECK(hard_t.world == expect_t.world);
  CHECK(hard_t.goal == expect_t.goal);
  CHECK(hard_t.constraints == expect_t.constraints);
  CHECK(print(hard_c) == print(expect_c));
}
