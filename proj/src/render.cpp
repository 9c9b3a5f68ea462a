#include "turtlesyn/render.hpp"

#include <sstream>

#include "turtlesyn/emulator.hpp"

namespace tsyn {
namespace {

constexpr int kCell = 100;

const char* svg_color(PenColor c) {
  switch (c) {
    case PenColor::Black: return "black";
    case PenColor::Red: return "red";
    case PenColor::Green: return "green";
    case PenColor::Blue: return "blue";
    case PenColor::Yellow: return "gold";
    case PenColor::White: return "white";
  }
  return "black";
}

const char* item_fill(ItemKind k) {
  switch (k) {
    case ItemKind::Strawberry: return "#d43d51";
    case ItemKind::Lemon: return "#f4e04d";
    case ItemKind::Apple: return "#7cb342";
    case ItemKind::Banana: return "#f2a93b";
  }
  return "#888";
}

char item_letter(ItemKind k) { return "SLAB"[static_cast<int>(k)]; }

int cx(Cell c) { return c.col * kCell + kCell / 2; }
int cy(Cell c) { return c.row * kCell + kCell / 2; }

// Triangle nose and base corners for a turtle at (x, y) facing d.
void turtle_points(std::ostream& out, int x, int y, Direction d) {
  const int n = 35, b = 25;
  switch (d) {
    case Direction::North:
      out << x << ',' << y - n << ' ' << x - b << ',' << y + b << ' ' << x + b << ',' << y + b;
      return;
    case Direction::East:
      out << x + n << ',' << y << ' ' << x - b << ',' << y - b << ' ' << x - b << ',' << y + b;
      return;
    case Direction::South:
      out << x << ',' << y + n << ' ' << x - b << ',' << y - b << ' ' << x + b << ',' << y - b;
      return;
    case Direction::West:
      out << x - n << ',' << y << ' ' << x + b << ',' << y - b << ' ' << x + b << ',' << y + b;
      return;
  }
}

}  // namespace

std::string render_svg(const Task& task, const Program* code) {
  const GridWorld& world = task.world;
  const int width = world.cols * kCell;
  const int height = world.rows * kCell;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << ' ' << height
      << "\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "  <defs>\n"
      << "    <pattern id=\"hatch\" width=\"12\" height=\"12\" patternUnits=\"userSpaceOnUse\""
      << " patternTransform=\"rotate(45)\">\n"
      << "      <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"12\" stroke=\"#d43d51\" stroke-width=\"5\"/>\n"
      << "    </pattern>\n"
      << "  </defs>\n";
  out << "  <rect class=\"background\" x=\"0\" y=\"0\" width=\"" << width << "\" height=\""
      << height << "\" fill=\"#fdfdf6\"/>\n";

  for (const Cell& c : world.forbidden) {
    out << "  <rect class=\"forbidden\" x=\"" << c.col * kCell << "\" y=\"" << c.row * kCell
        << "\" width=\"" << kCell << "\" height=\"" << kCell << "\" fill=\"url(#hatch)\"/>\n";
  }
  for (const Cell& c : world.walls) {
    out << "  <rect class=\"wall\" x=\"" << c.col * kCell << "\" y=\"" << c.row * kCell
        << "\" width=\"" << kCell << "\" height=\"" << kCell << "\" fill=\"#4a4a4a\"/>\n";
  }

  for (int r = 0; r <= world.rows; ++r)
    out << "  <line class=\"grid\" x1=\"0\" y1=\"" << r * kCell << "\" x2=\"" << width
        << "\" y2=\"" << r * kCell << "\" stroke=\"#b8b8b8\" stroke-width=\"2\"/>\n";
  for (int c = 0; c <= world.cols; ++c)
    out << "  <line class=\"grid\" x1=\"" << c * kCell << "\" y1=\"0\" x2=\"" << c * kCell
        << "\" y2=\"" << height << "\" stroke=\"#b8b8b8\" stroke-width=\"2\"/>\n";

  for (const Segment& seg : world.pattern) {
    out << "  <line class=\"pattern\" x1=\"" << cx(seg.a) << "\" y1=\"" << cy(seg.a)
        << "\" x2=\"" << cx(seg.b) << "\" y2=\"" << cy(seg.b) << "\" stroke=\""
        << svg_color(seg.color) << "\" stroke-width=\"8\" stroke-linecap=\"round\"/>\n";
  }

  if (code) {
    ExecResult run = execute(*code, world);
    for (const Segment& seg : run.trajectory.segments) {
      out << "  <line class=\"drawn\" x1=\"" << cx(seg.a) << "\" y1=\"" << cy(seg.a)
          << "\" x2=\"" << cx(seg.b) << "\" y2=\"" << cy(seg.b) << "\" stroke=\""
          << svg_color(seg.color) << "\" stroke-width=\"6\" stroke-linecap=\"round\""
          << " stroke-dasharray=\"2 10\"/>\n";
    }
    if (run.trajectory.visited.size() > 1) {
      out << "  <polyline class=\"trajectory\" points=\"";
      for (size_t i = 0; i < run.trajectory.visited.size(); ++i) {
        if (i) out << ' ';
        const Cell& c = run.trajectory.visited[i];
        out << cx(c) << ',' << cy(c);
      }
      out << "\" fill=\"none\" stroke=\"#1565c0\" stroke-width=\"4\" stroke-opacity=\"0.6\"/>\n";
    }
  }

  for (const auto& [cell, kind] : world.items) {
    out << "  <circle class=\"item\" cx=\"" << cx(cell) << "\" cy=\"" << cy(cell)
        << "\" r=\"28\" fill=\"" << item_fill(kind) << "\" stroke=\"#333\" stroke-width=\"2\"/>\n";
    out << "  <text class=\"item-label\" x=\"" << cx(cell) << "\" y=\"" << cy(cell) + 10
        << "\" font-family=\"sans-serif\" font-size=\"30\" font-weight=\"bold\""
        << " text-anchor=\"middle\" fill=\"#222\">" << item_letter(kind) << "</text>\n";
  }

  out << "  <polygon class=\"turtle\" points=\"";
  turtle_points(out, cx(cell_of(world.start)), cy(cell_of(world.start)), world.start.dir);
  out << "\" fill=\"#2e7d32\" stroke=\"#1b4d20\" stroke-width=\"3\"/>\n";

  out << "</svg>\n";
  return out.str();
}

}  // namespace tsyn
