#include "turtlesyn/scoring.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <set>

#include "turtlesyn/emulator.hpp"

namespace tsyn {

namespace {

// ---- shorter-witness search -------------------------------------------------
//
// Programs are token sequences: 0..3 basic commands, 4..9 setpencolor with
// each color. A tight simulator keeps per-run cost at a few dozen integer
// operations so full enumeration up to the budget stays cheap.

constexpr int kPenTokenBase = 4;

struct SearchWorld {
  int rows = 0, cols = 0;
  uint64_t walls = 0, forbidden = 0;
  GoalType goal = GoalType::Find;
  uint64_t find_targets = 0;     // cells holding the goal item
  uint64_t collect_targets = 0;  // cells the run must visit
  // Edge ids: cell*2 for the edge toward East, cell*2+1 toward South.
  std::array<int8_t, 128> pattern_color;
  std::array<int8_t, 128> drawn_color;
  int pattern_size = 0;

  int cell_index(int r, int c) const { return r * cols + c; }

  void init(const Task& task) {
    rows = task.world.rows;
    cols = task.world.cols;
    goal = task.goal.type;
    for (const Cell& w : task.world.walls) walls |= 1ull << cell_index(w.row, w.col);
    for (const Cell& f : task.world.forbidden) forbidden |= 1ull << cell_index(f.row, f.col);
    for (const auto& [cell, kind] : task.world.items) {
      if (kind == task.goal.item) {
        uint64_t bit = 1ull << cell_index(cell.row, cell.col);
        find_targets |= bit;
        collect_targets |= bit;
      }
    }
    pattern_color.fill(-1);
    drawn_color.fill(-1);
    for (const Segment& s : task.world.pattern) {
      pattern_color[static_cast<size_t>(edge_id(s.a, s.b))] = static_cast<int8_t>(s.color);
      ++pattern_size;
    }
  }

  int edge_id(Cell a, Cell b) const {
    // a < b holds for normalized segments: b is East or South of a.
    return cell_index(a.row, a.col) * 2 + (b.row == a.row ? 0 : 1);
  }
};

struct SearchRun {
  SearchWorld& w;
  int row, col;
  Direction dir;
  int8_t pen = static_cast<int8_t>(PenColor::Black);
  uint64_t visited_targets = 0;
  int matched = 0;
  bool dead = false;  // crashed, or drew outside the pattern
  std::array<int, 64> journal;
  int journal_size = 0;

  explicit SearchRun(SearchWorld& world, const Pose& start) : w(world) {
    row = start.row;
    col = start.col;
    dir = start.dir;
    visited_targets = w.collect_targets & (1ull << w.cell_index(row, col));
  }

  ~SearchRun() {
    for (int i = 0; i < journal_size; ++i) w.drawn_color[static_cast<size_t>(journal[i])] = -1;
  }

  bool apply(int token) {
    if (token >= kPenTokenBase) {
      pen = static_cast<int8_t>(token - kPenTokenBase);
      return true;
    }
    auto cmd = static_cast<BasicCmd>(token);
    if (cmd == BasicCmd::Left) {
      dir = turn_left(dir);
      return true;
    }
    if (cmd == BasicCmd::Right) {
      dir = turn_right(dir);
      return true;
    }
    Direction move = cmd == BasicCmd::Forward ? dir : turn_right(turn_right(dir));
    Cell to = step_from(Cell{row, col}, move);
    if (to.row < 0 || to.row >= w.rows || to.col < 0 || to.col >= w.cols) return fail();
    uint64_t bit = 1ull << w.cell_index(to.row, to.col);
    if ((w.walls | w.forbidden) & bit) return fail();

    if (w.goal == GoalType::Draw) {
      Cell a{row, col}, b = to;
      if (b < a) std::swap(a, b);
      int e = w.edge_id(a, b);
      int8_t want = w.pattern_color[static_cast<size_t>(e)];
      if (want < 0) return fail();  // edge outside the pattern can never be erased
      int8_t old = w.drawn_color[static_cast<size_t>(e)];
      if (old < 0) journal[journal_size++] = e;
      if (old == want) --matched;
      w.drawn_color[static_cast<size_t>(e)] = pen;
      if (pen == want) ++matched;
    }

    row = to.row;
    col = to.col;
    visited_targets |= w.collect_targets & bit;
    return true;
  }

  bool fail() {
    dead = true;
    return false;
  }

  bool goal_met() const {
    if (dead) return false;
    switch (w.goal) {
      case GoalType::Find:
        return (w.find_targets >> w.cell_index(row, col)) & 1;
      case GoalType::CollectAll:
        return visited_targets == w.collect_targets;
      case GoalType::Draw:
        return matched == w.pattern_size;
    }
    return false;
  }
};

// A witness must be a full solution: goal achieved without crashing AND every
// code constraint satisfied on its written form. Its size is measured by
// executed (unrolled) tokens, so "repeat 2 { forward }" counts as 2: a loop
// header compresses the notation, not the work the learner's program does.
struct WitnessSearch {
  SearchWorld world;
  Pose start;
  std::vector<int> alphabet;
  bool allow_repeat = false;
  std::vector<CodeConstraint> checks;  // length/usage constraints only

  static BlockKind token_block(int token) {
    if (token >= kPenTokenBase) return BlockKind::SetPenColor;
    return block_of(static_cast<BasicCmd>(token));
  }

  // tokens[0..written) is the written body; has_repeat marks a loop header.
  bool constraints_ok(const int* tokens, int written, bool has_repeat) const {
    for (const CodeConstraint& c : checks) {
      switch (c.type) {
        case ConstraintType::AtMostCommands:
          if (written > c.n) return false;
          break;
        case ConstraintType::ExactlyCommands:
          if (written != c.n) return false;
          break;
        case ConstraintType::MustUse:
        case ConstraintType::MaxOccurrences: {
          int occ = 0;
          if (c.block == BlockKind::Repeat) {
            occ = has_repeat ? 1 : 0;
          } else {
            for (int i = 0; i < written; ++i)
              if (token_block(tokens[i]) == c.block) ++occ;
          }
          if (c.type == ConstraintType::MustUse ? occ < 1 : occ > c.n) return false;
          break;
        }
        case ConstraintType::AllowedBlocks:
        case ConstraintType::Forbid:
          break;  // enforced by the alphabet
      }
    }
    return true;
  }

  bool run_flat(const int* tokens, int t) {
    if (!constraints_ok(tokens, t, false)) return false;
    SearchRun run(world, start);
    for (int i = 0; i < t; ++i)
      if (!run.apply(tokens[i])) return false;
    return run.goal_met();
  }

  // prefix tokens[0..p), body tokens[p..p+b) looped count times, then suffix.
  bool run_repeat(const int* tokens, int w, int p, int b, int count) {
    if (!constraints_ok(tokens, w, true)) return false;
    SearchRun run(world, start);
    for (int i = 0; i < p; ++i)
      if (!run.apply(tokens[i])) return false;
    for (int k = 0; k < count; ++k)
      for (int i = p; i < p + b; ++i)
        if (!run.apply(tokens[i])) return false;
    for (int i = p + b; i < w; ++i)
      if (!run.apply(tokens[i])) return false;
    return run.goal_met();
  }

  template <typename Fn>
  bool for_each_word(int w, Fn&& body) {
    std::array<int, 8> tokens{};
    if (w == 0) return body(tokens.data());
    const int a = static_cast<int>(alphabet.size());
    std::array<int, 8> idx{};
    while (true) {
      for (int i = 0; i < w; ++i)
        tokens[static_cast<size_t>(i)] = alphabet[static_cast<size_t>(idx[static_cast<size_t>(i)])];
      if (body(tokens.data())) return true;
      int pos = w - 1;
      while (pos >= 0 && idx[static_cast<size_t>(pos)] == a - 1) idx[static_cast<size_t>(pos--)] = 0;
      if (pos < 0) return false;
      ++idx[static_cast<size_t>(pos)];
    }
  }

  // True when any solution runs fewer than max_len executed tokens.
  bool exists_shorter(int max_len) {
    const int budget = max_len - 1;  // largest admissible unrolled length
    for (int t = 0; t <= budget; ++t) {
      if (t > 0 && alphabet.empty()) break;
      if (for_each_word(t, [&](const int* tokens) { return run_flat(tokens, t); })) return true;
    }
    if (!allow_repeat || alphabet.empty()) return false;
    for (int b = 1; 2 * b <= budget; ++b) {
      for (int count = 2; count <= 5; ++count) {
        for (int p = 0; p + count * b <= budget; ++p) {
          for (int s = 0; p + count * b + s <= budget; ++s) {
            int w = p + b + s;
            if (for_each_word(
                    w, [&](const int* tokens) { return run_repeat(tokens, w, p, b, count); }))
              return true;
          }
        }
      }
    }
    return false;
  }
};

// Number of programs exists_shorter() would visit.
double search_space_size(int max_len, int alphabet_size, bool allow_repeat) {
  const int budget = max_len - 1;
  double total = 0;
  double pow_a = 1;  // alphabet_size^t
  for (int t = 0; t <= budget; ++t) {
    if (t > 0) pow_a *= alphabet_size;
    total += pow_a;
  }
  if (allow_repeat) {
    for (int b = 1; 2 * b <= budget; ++b)
      for (int count = 2; count <= 5; ++count)
        for (int p = 0; p + count * b <= budget; ++p)
          for (int s = 0; p + count * b + s <= budget; ++s)
            total += std::pow(alphabet_size, p + b + s);
  }
  return total;
}

}  // namespace

MinimalityResult minimality_oracle(const Task& task, int max_len) {
  if (max_len > 8) return MinimalityResult::BudgetExceeded;
  if (max_len <= 0) return MinimalityResult::Minimal;

  std::set<BlockKind> allowed = {BlockKind::Forward, BlockKind::Back,    BlockKind::Left,
                                 BlockKind::Right,   BlockKind::SetPenColor, BlockKind::Repeat};
  for (const CodeConstraint& c : task.constraints) {
    if (c.type == ConstraintType::AllowedBlocks) {
      std::set<BlockKind> kept;
      for (BlockKind b : allowed)
        if (c.blocks.count(b)) kept.insert(b);
      allowed = kept;
    }
    if (c.type == ConstraintType::Forbid) allowed.erase(c.block);
  }

  bool pen_matters = false;
  if (task.goal.type == GoalType::Draw) {
    for (const Segment& s : task.world.pattern)
      if (s.color != PenColor::Black) pen_matters = true;
  }
  for (const CodeConstraint& c : task.constraints)
    if (c.type == ConstraintType::MustUse && c.block == BlockKind::SetPenColor)
      pen_matters = true;

  WitnessSearch search;
  search.world.init(task);
  search.start = task.world.start;
  search.allow_repeat = allowed.count(BlockKind::Repeat) > 0;
  for (int b = 0; b < kBasicCmdCount; ++b)
    if (allowed.count(block_of(static_cast<BasicCmd>(b)))) search.alphabet.push_back(b);
  if (pen_matters && allowed.count(BlockKind::SetPenColor))
    for (int c = 0; c < kPenColorCount; ++c) search.alphabet.push_back(kPenTokenBase + c);
  for (const CodeConstraint& c : task.constraints)
    if (c.type != ConstraintType::AllowedBlocks && c.type != ConstraintType::Forbid)
      search.checks.push_back(c);

  double space =
      search_space_size(max_len, static_cast<int>(search.alphabet.size()), search.allow_repeat);
  if (space > 1e6) return MinimalityResult::BudgetExceeded;

  return search.exists_shorter(max_len) ? MinimalityResult::NotMinimal : MinimalityResult::Minimal;
}

namespace {

double band_score(double value, double lo, double hi) {
  if (value < lo) return std::max(0.0, value / lo);
  if (value > hi) return std::max(0.0, (1.0 - value) / (1.0 - hi));
  return 1.0;
}

std::vector<BasicCmd> unrolled_moves(const Program& code) {
  std::vector<BasicCmd> moves;
  auto push_leaf = [&](const LeafStmt& l) {
    if (l.kind == LeafStmt::Kind::Basic) moves.push_back(l.cmd);
  };
  for (const Stmt& s : code.statements) {
    if (s.kind == Stmt::Kind::Leaf) {
      push_leaf(s.leaf);
    } else {
      for (int i = 0; i < s.count; ++i)
        for (const LeafStmt& l : s.body) push_leaf(l);
    }
  }
  return moves;
}

double trajectory_quality(const Program& code, const Trajectory& traj) {
  int moves = static_cast<int>(traj.poses.size()) - 1;
  int turns = 0;
  for (size_t i = 1; i < traj.poses.size(); ++i)
    if (cell_of(traj.poses[i]) == cell_of(traj.poses[i - 1])) ++turns;
  double turn_term = moves > 0 ? band_score(static_cast<double>(turns) / moves, 0.25, 0.6) : 0.0;

  double undo_term = 1.0;
  std::vector<BasicCmd> seq = unrolled_moves(code);
  for (size_t i = 1; i < seq.size(); ++i) {
    bool fb = seq[i - 1] == BasicCmd::Forward && seq[i] == BasicCmd::Back;
    bool bf = seq[i - 1] == BasicCmd::Back && seq[i] == BasicCmd::Forward;
    if (fb || bf) undo_term = 0.0;
  }

  std::set<int> rows_seen, cols_seen;
  for (const Cell& c : traj.visited) {
    rows_seen.insert(c.row);
    cols_seen.insert(c.col);
  }
  double span_term = rows_seen.size() >= 2 && cols_seen.size() >= 2 ? 1.0 : 0.0;

  return (turn_term + undo_term + span_term) / 3.0;
}

double visual_quality(const Task& task, const Trajectory& traj) {
  const GridWorld& w = task.world;
  double elements =
      static_cast<double>(w.items.size() + w.walls.size() + w.forbidden.size());
  double density_term = band_score(elements / (w.rows * w.cols), 0.05, 0.35);
  double ends_term = traj.visited.front() != traj.visited.back() ? 1.0 : 0.0;
  return (density_term + ends_term) / 2.0;
}

char cell_glyph(const GridWorld& w, Cell c) {
  if (w.walls.count(c)) return '#';
  if (w.forbidden.count(c)) return 'x';
  auto it = w.items.find(c);
  if (it != w.items.end()) return static_cast<char>('a' + static_cast<int>(it->second));
  return '.';
}

double dissimilarity(const Task& task, const Task& ref) {
  double pose_term = task.world.start != ref.world.start ? 1.0 : 0.0;
  double edit_term = 1.0;
  if (task.world.rows == ref.world.rows && task.world.cols == ref.world.cols) {
    int differing = 0;
    for (int r = 0; r < task.world.rows; ++r)
      for (int c = 0; c < task.world.cols; ++c)
        if (cell_glyph(task.world, {r, c}) != cell_glyph(ref.world, {r, c})) ++differing;
    edit_term = static_cast<double>(differing) / (task.world.rows * task.world.cols);
  }
  edit_term = std::clamp(edit_term, 0.0, 1.0);
  return (pose_term + edit_term) / 2.0;
}

}  // namespace

ScoredCandidate score(const Task& task, const Program& code, const Task& ref_task,
                      [[maybe_unused]] const Program& ref_code, const ScoringConfig& cfg) {
  ScoredCandidate out;
  out.task = task;
  out.code = code;
  out.hash = canonical_hash(task, code);

  ComponentScores& s = out.components;
  s.validity = is_solution(task, code) ? 1.0 : 0.0;

  switch (minimality_oracle(task, code_length(code))) {
    case MinimalityResult::Minimal:
      s.minimality = 1.0;
      break;
    case MinimalityResult::NotMinimal:
      s.minimality = 0.0;
      break;
    case MinimalityResult::BudgetExceeded:
      s.minimality = 1.0;
      s.minimality_unknown = true;
      break;
  }

  Trajectory traj = execute(code, task.world).trajectory;
  s.trajectory_quality = trajectory_quality(code, traj);
  s.visual_quality = visual_quality(task, traj);
  s.dissimilarity = dissimilarity(task, ref_task);

  if (s.validity == 0.0 || s.minimality == 0.0) {
    out.total = 0.0;
  } else {
    double wsum = cfg.weight_trajectory + cfg.weight_visual + cfg.weight_dissimilarity;
    out.total = wsum <= 0.0 ? 0.0
                            : (cfg.weight_trajectory * s.trajectory_quality +
                               cfg.weight_visual * s.visual_quality +
                               cfg.weight_dissimilarity * s.dissimilarity) /
                                  wsum;
  }
  return out;
}

std::vector<ScoredCandidate> top_k(std::vector<ScoredCandidate> candidates, int k, double tau) {
  std::sort(candidates.begin(), candidates.end(),
            [](const ScoredCandidate& a, const ScoredCandidate& b) {
              if (a.total != b.total) return a.total > b.total;
              return a.hash < b.hash;
            });
  std::vector<ScoredCandidate> out;
  std::set<std::string> seen;
  for (ScoredCandidate& c : candidates) {
    if (static_cast<int>(out.size()) >= k) break;
    if (c.total < tau) break;  // sorted: everything after is below tau too
    if (!seen.insert(c.hash).second) continue;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace tsyn
