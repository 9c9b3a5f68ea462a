#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"
#include "turtlesyn/lang.hpp"
#include "turtlesyn/render.hpp"

using namespace tsyn;

static size_t count_of(const std::string& haystack, const std::string& needle) {
  size_t n = 0;
  for (size_t pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size()))
    ++n;
  return n;
}

static Task sample_task() {
  GridWorld w;
  w.rows = 4;
  w.cols = 5;
  w.start = {3, 0, Direction::North};
  w.items[{1, 0}] = ItemKind::Lemon;
  w.items[{2, 4}] = ItemKind::Strawberry;
  w.walls.insert({2, 3});
  w.forbidden.insert({0, 4});
  return {Goal::find(ItemKind::Lemon), {}, w};
}

TEST_CASE("the picture is a well formed svg with every element kind") {
  Task t = sample_task();
  std::string svg = render_svg(t);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("width=\"500\"") != std::string::npos);   // 5 cols x 100 units
  CHECK(svg.find("height=\"400\"") != std::string::npos);  // 4 rows x 100 units
  CHECK(count_of(svg, "<circle") >= 2);                    // one per item
  CHECK(svg.find("<polygon") != std::string::npos);        // the turtle
}

TEST_CASE("grids scale with the world") {
  GridWorld w;
  w.rows = 2;
  w.cols = 2;
  w.start = {1, 0, Direction::East};
  w.items[{1, 1}] = ItemKind::Apple;
  Task t{Goal::find(ItemKind::Apple), {}, w};
  std::string svg = render_svg(t);
  CHECK(svg.find("width=\"200\"") != std::string::npos);
  CHECK(svg.find("height=\"200\"") != std::string::npos);
}

TEST_CASE("patterns are stroked in their colors") {
  GridWorld w;
  w.rows = 3;
  w.cols = 3;
  w.start = {2, 0, Direction::North};
  w.pattern = {make_segment({2, 0}, {1, 0}, PenColor::Red),
               make_segment({1, 0}, {1, 1}, PenColor::Blue)};
  Task t{Goal::draw(), {}, w};
  std::string svg = render_svg(t);
  CHECK(svg.find("red") != std::string::npos);
  CHECK(svg.find("blue") != std::string::npos);
}

TEST_CASE("a code overlay adds the trajectory polyline") {
  Task t = sample_task();
  Program code = std::get<Program>(parse("forward forward"));
  std::string plain = render_svg(t);
  std::string overlaid = render_svg(t, &code);
  CHECK(plain.find("<polyline") == std::string::npos);
  CHECK(overlaid.find("<polyline") != std::string::npos);
  CHECK(overlaid.size() > plain.size());
}

TEST_CASE("identical input renders byte for byte") {
  Rng rng(31337);
  for (int i = 0; i < 20; ++i) {
    auto [task, code] = testutil::random_solvable_task(rng);
    CHECK(render_svg(task) == render_svg(task));
    CHECK(render_svg(task, &code) == render_svg(task, &code));
  }
}
