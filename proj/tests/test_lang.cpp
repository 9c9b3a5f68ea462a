#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"
#include "turtlesyn/lang.hpp"

using namespace tsyn;

static Program parse_ok(const std::string& text) {
  auto r = parse(text);
  REQUIRE(std::holds_alternative<Program>(r));
  return std::get<Program>(r);
}

static ParseError parse_err(const std::string& text) {
  auto r = parse(text);
  REQUIRE(std::holds_alternative<ParseError>(r));
  return std::get<ParseError>(r);
}

TEST_CASE("basic commands parse") {
  Program p = parse_ok("forward back left right");
  REQUIRE(p.statements.size() == 4);
  CHECK(p.statements[0].leaf.cmd == BasicCmd::Forward);
  CHECK(p.statements[3].leaf.cmd == BasicCmd::Right);
}

TEST_CASE("setpencolor takes a color argument") {
  Program p = parse_ok("setpencolor red forward");
  REQUIRE(p.statements.size() == 2);
  CHECK(p.statements[0].leaf.kind == LeafStmt::Kind::SetPenColor);
  CHECK(p.statements[0].leaf.color == PenColor::Red);
  CHECK(parse_err("setpencolor").message.find("color") != std::string::npos);
  parse_err("setpencolor purple");
}

TEST_CASE("repeat parses count and body") {
  Program p = parse_ok("repeat 3 { forward left }");
  REQUIRE(p.statements.size() == 1);
  CHECK(p.statements[0].kind == Stmt::Kind::Repeat);
  CHECK(p.statements[0].count == 3);
  REQUIRE(p.statements[0].body.size() == 2);
  CHECK(p.statements[0].body[1].cmd == BasicCmd::Left);
}

TEST_CASE("repeat bounds and nesting are rejected") {
  parse_err("repeat 1 { forward }");
  parse_err("repeat 6 { forward }");
  parse_err("repeat 2 { }");
  parse_err("repeat 2 { repeat 2 { forward } }");
  parse_err("repeat 2 forward");
  parse_err("repeat 2 { forward");
  parse_err("repeat x { forward }");
}

TEST_CASE("unknown tokens are rejected with a position") {
  ParseError e = parse_err("forward\nfly");
  CHECK(e.line == 2);
  CHECK(e.column == 1);
  parse_err("}");
}

TEST_CASE("empty input is an empty program") {
  Program p = parse_ok("");
  CHECK(p.statements.empty());
  CHECK(print(p).empty());
}

TEST_CASE("print uses the canonical layout") {
  Program p = parse_ok("setpencolor blue  repeat 2 { forward right }  back");
  CHECK(print(p) == "setpencolor blue\nrepeat 2 {\n  forward\n  right\n}\nback");
}

TEST_CASE("parse after print is the identity on random programs") {
  Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    Program p = testutil::random_program(rng);
    auto back = parse(print(p));
    REQUIRE(std::holds_alternative<Program>(back));
    CHECK(std::get<Program>(back) == p);
  }
}

TEST_CASE("whitespace variations parse to the same program") {
  Program a = parse_ok("repeat 2 { forward forward } left");
  Program b = parse_ok("repeat   2\n{\n  forward\n\tforward\n}\nleft");
  CHECK(a == b);
}
