// Acceptance gate for the synthesis pipeline. Runs nine end-to-end checks,
// prints one PASS/FAIL line per criterion, and exits nonzero if any fail.
// Budgets and sample sizes are pinned here on purpose: changing them changes
// what "accepted" means.

#include <sys/wait.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "testutil.hpp"
#include "turtlesyn/baselines.hpp"
#include "turtlesyn/emulator.hpp"
#include "turtlesyn/fdsolver.hpp"
#include "turtlesyn/lang.hpp"
#include "turtlesyn/model.hpp"
#include "turtlesyn/rng.hpp"
#include "turtlesyn/scoring.hpp"
#include "turtlesyn/symexec.hpp"
#include "turtlesyn/taskio.hpp"

namespace fs = std::filesystem;
using namespace tsyn;

namespace {

constexpr double kValiditySuiteBudgetSeconds = 600.0;  // criterion 1
constexpr double kBatchLevelBudgetSeconds = 60.0;      // criterion 2, per level
constexpr int kSeedCount = 5;                          // seeds 0..4
constexpr int kCspTrials = 100;                        // criterion 5
constexpr int64_t kCspAssignmentCap = 100000;          // criterion 5
constexpr int kMinimalityTrials = 50;                  // criterion 5
constexpr int kMinimalityMaxLen = 5;                   // criterion 5
constexpr int kEmulatorTrials = 500;                   // criterion 6, each check
constexpr int kProgramRoundTrips = 1000;               // criterion 9
constexpr int kTaskRoundTrips = 200;                   // criterion 9

const char* kReferences[] = {"find_strawberry", "find_lemon",    "collect_apples",
                             "collect_bananas", "draw_corner",   "draw_red_hook"};
const char* kDifficulties[] = {"easy", "medium", "hard"};

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

int run_cli(const std::string& args) {
  std::string cmd = std::string(TSYN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::optional<std::string> slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path data_task(const std::string& name) {
  return fs::path(TSYN_DATA_DIR) / "references" / (name + ".task.json");
}
fs::path data_code(const std::string& name) {
  return fs::path(TSYN_DATA_DIR) / "references" / (name + ".xlc");
}

struct RefPair {
  Task task;
  Program code;
};

RefPair load_reference(const std::string& name) {
  auto task_text = slurp(data_task(name));
  auto code_text = slurp(data_code(name));
  if (!task_text || !code_text) throw std::runtime_error(name + ": reference files missing");
  auto task = task_from_json(*task_text);
  if (auto* err = std::get_if<IoError>(&task))
    throw std::runtime_error(name + ": " + err->message);
  auto code = parse(*code_text);
  if (std::holds_alternative<ParseError>(code))
    throw std::runtime_error(name + ": reference code does not parse");
  return RefPair{std::get<Task>(task), std::get<Program>(code)};
}

struct Emitted {
  std::string ref;
  std::string difficulty;
  fs::path task_file;
  fs::path code_file;
};

// Output pairs of one synthesis directory, sorted by stem.
std::vector<std::pair<fs::path, fs::path>> emitted_pairs(const fs::path& dir) {
  std::vector<std::pair<fs::path, fs::path>> out;
  if (!fs::exists(dir)) return out;
  std::vector<fs::path> tasks;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (name.size() > 10 && name.substr(name.size() - 10) == ".task.json")
      tasks.push_back(entry.path());
  }
  std::sort(tasks.begin(), tasks.end());
  for (const fs::path& t : tasks) {
    std::string stem = t.filename().string();
    stem = stem.substr(0, stem.size() - 10);
    out.emplace_back(t, dir / (stem + ".xlc"));
  }
  return out;
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct SuiteState {
  fs::path root;
  std::vector<Emitted> outputs;  // everything criterion 1 produced
};

// ---------------------------------------------------------------------------

Verdict criterion_validity(SuiteState& state) {
  const auto t0 = std::chrono::steady_clock::now();
  int runs_failed = 0;
  int pairs = 0;
  int pairs_failed = 0;
  for (const char* ref : kReferences) {
    for (const char* difficulty : kDifficulties) {
      for (int seed = 0; seed < kSeedCount; ++seed) {
        fs::path dir = state.root / "run1" / ref / difficulty / std::to_string(seed);
        std::ostringstream args;
        args << "synth --task " << quoted(data_task(ref)) << " --code "
             << quoted(data_code(ref)) << " --difficulty " << difficulty << " --seed " << seed
             << " --out " << quoted(dir);
        if (run_cli(args.str()) != 0) {
          ++runs_failed;
          continue;
        }
        for (const auto& [task_file, code_file] : emitted_pairs(dir)) {
          ++pairs;
          state.outputs.push_back(Emitted{ref, difficulty, task_file, code_file});
          if (run_cli("check --task " + quoted(task_file) + " --code " + quoted(code_file)) != 0)
            ++pairs_failed;
        }
      }
    }
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream detail;
  detail << (90 - runs_failed) << "/90 runs, " << (pairs - pairs_failed) << "/" << pairs
         << " emitted pairs solve their task, " << std::fixed;
  detail.precision(1);
  detail << elapsed << " s (budget " << kValiditySuiteBudgetSeconds << " s)";
  bool pass = runs_failed == 0 && pairs > 0 && pairs_failed == 0 &&
              elapsed <= kValiditySuiteBudgetSeconds;
  return {pass, detail.str()};
}

Verdict criterion_batch(const SuiteState& state) {
  const int wanted[3] = {3, 4, 3};
  bool pass = true;
  double worst = 0.0;
  std::ostringstream detail;
  for (const char* ref : kReferences) {
    fs::path dir = state.root / "batch" / ref;
    const auto t0 = std::chrono::steady_clock::now();
    int rc = run_cli("batch --task " + quoted(data_task(ref)) + " --code " +
                     quoted(data_code(ref)) + " --seed 0 --out " + quoted(dir));
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    worst = std::max(worst, elapsed);
    if (rc != 0 || elapsed > 3 * kBatchLevelBudgetSeconds) {
      pass = false;
      continue;
    }
    for (int level = 0; level < 3; ++level) {
      std::set<std::pair<std::string, std::string>> distinct;
      for (const auto& [task_file, code_file] : emitted_pairs(dir / kDifficulties[level])) {
        auto t = slurp(task_file);
        auto c = slurp(code_file);
        if (t && c) distinct.emplace(*t, *c);
      }
      if (static_cast<int>(distinct.size()) < wanted[level]) pass = false;
    }
  }
  detail << "6 references, need 3/4/3 distinct per level, slowest batch " << std::fixed;
  detail.precision(2);
  detail << worst << " s (budget " << 3 * kBatchLevelBudgetSeconds << " s total)";
  return {pass, detail.str()};
}

Verdict criterion_difficulty(const SuiteState& state,
                             const std::map<std::string, RefPair>& refs) {
  int checked = 0;
  int bad = 0;
  for (const Emitted& e : state.outputs) {
    auto task_text = slurp(e.task_file);
    auto code_text = slurp(e.code_file);
    if (!task_text || !code_text) {
      ++bad;
      continue;
    }
    auto task_v = task_from_json(*task_text);
    auto code_v = parse(*code_text);
    if (!std::holds_alternative<Task>(task_v) || !std::holds_alternative<Program>(code_v)) {
      ++bad;
      continue;
    }
    const Task& task = std::get<Task>(task_v);
    const Program& code = std::get<Program>(code_v);
    const RefPair& ref = refs.at(e.ref);
    const int dlen = code_length(code) - code_length(ref.code);
    const int dcons = static_cast<int>(task.constraints.size()) -
                      static_cast<int>(ref.task.constraints.size());
    const bool same_goal = task.goal.type == ref.task.goal.type;
    bool ok = false;
    if (e.difficulty == "easy") ok = dlen == 0 && dcons == 0 && same_goal;
    if (e.difficulty == "medium") ok = (dlen == 1 || dlen == 2) && same_goal;
    if (e.difficulty == "hard") ok = dlen == 2 && dcons == 1;
    ++checked;
    if (!ok) ++bad;
  }
  std::ostringstream detail;
  detail << (checked - bad) << "/" << checked
         << " outputs meet their difficulty contract (dlen/dcons/goal-type)";
  return {checked > 0 && bad == 0, detail.str()};
}

Verdict criterion_placement(const SuiteState& state) {
  int finds = 0;
  int bad = 0;
  for (const Emitted& e : state.outputs) {
    auto task_text = slurp(e.task_file);
    auto code_text = slurp(e.code_file);
    if (!task_text || !code_text) continue;
    auto task_v = task_from_json(*task_text);
    auto code_v = parse(*code_text);
    if (!std::holds_alternative<Task>(task_v) || !std::holds_alternative<Program>(code_v))
      continue;
    const Task& task = std::get<Task>(task_v);
    if (task.goal.type != GoalType::Find) continue;
    ++finds;
    ExecResult run = execute(std::get<Program>(code_v), task.world);
    const Cell final_cell = run.trajectory.visited.back();
    auto at_final = task.world.items.find(final_cell);
    bool ok = !run.trajectory.crashed && at_final != task.world.items.end() &&
              at_final->second == task.goal.item;
    for (const auto& [cell, kind] : task.world.items)
      if (kind == task.goal.item && !(cell == final_cell)) ok = false;
    if (!ok) ++bad;
  }
  std::ostringstream detail;
  detail << (finds - bad) << "/" << finds
         << " find outputs place the goal item exactly on the final trajectory cell";
  return {finds > 0 && bad == 0, detail.str()};
}

Verdict criterion_oracles() {
  Rng rng(50401);
  int csp_bad = 0;
  for (int i = 0; i < kCspTrials; ++i) {
    Csp csp = testutil::random_csp(rng);
    int64_t space = 1;
    for (const FdVariable& v : csp.variables) space *= static_cast<int64_t>(v.domain.size());
    if (space > kCspAssignmentCap) {
      ++csp_bad;
      continue;
    }
    std::vector<std::vector<int>> got;
    SolutionStream stream(csp, rng.next_u64());
    while (auto solution = stream.next()) got.push_back(*solution);
    std::sort(got.begin(), got.end());
    if (got != testutil::brute_force_solutions(csp)) ++csp_bad;
  }

  int min_bad = 0;
  for (int i = 0; i < kMinimalityTrials; ++i) {
    auto [task, code] = testutil::random_solvable_task(rng, kMinimalityMaxLen);
    const int max_len = code_length(code);
    MinimalityResult got = minimality_oracle(task, max_len);
    if (got == MinimalityResult::BudgetExceeded) {
      ++min_bad;
      continue;
    }
    const bool shorter = testutil::naive_exists_shorter(task, max_len);
    if ((got == MinimalityResult::NotMinimal) != shorter) ++min_bad;
  }

  std::ostringstream detail;
  detail << (kCspTrials - csp_bad) << "/" << kCspTrials << " CSP solution sets match, "
         << (kMinimalityTrials - min_bad) << "/" << kMinimalityTrials
         << " minimality verdicts match naive search";
  return {csp_bad == 0 && min_bad == 0, detail.str()};
}

Program unrolled(const Program& p) {
  Program out;
  for (const Stmt& s : p.statements) {
    if (s.kind == Stmt::Kind::Leaf) {
      out.statements.push_back(s);
    } else {
      for (int i = 0; i < s.count; ++i)
        for (const LeafStmt& l : s.body) out.statements.push_back(Stmt::from_leaf(l));
    }
  }
  return out;
}

bool same_trajectory(const Trajectory& a, const Trajectory& b) {
  return a.poses == b.poses && a.visited == b.visited && a.segments == b.segments &&
         a.crashed == b.crashed && a.crash_reason == b.crash_reason;
}

Verdict criterion_emulator() {
  Rng rng(60601);
  int unroll_bad = 0;
  for (int i = 0; i < kEmulatorTrials; ++i) {
    GridWorld world;
    world.rows = rng.range(2, 8);
    world.cols = rng.range(2, 8);
    world.start = Pose{rng.range(0, world.rows - 1), rng.range(0, world.cols - 1),
                       static_cast<Direction>(rng.range(0, 3))};
    for (int r = 0; r < world.rows; ++r) {
      for (int c = 0; c < world.cols; ++c) {
        Cell cell{r, c};
        if (cell == cell_of(world.start)) continue;
        if (rng.chance(0.08)) world.walls.insert(cell);
        else if (rng.chance(0.05)) world.forbidden.insert(cell);
        else if (rng.chance(0.10))
          world.items[cell] = static_cast<ItemKind>(rng.range(0, 3));
      }
    }
    Program code = testutil::random_program(rng);
    ExecResult a = execute(code, world);
    ExecResult b = execute(unrolled(code), world);
    if (!same_trajectory(a.trajectory, b.trajectory) || a.collected != b.collected) ++unroll_bad;
  }

  int trace_bad = 0;
  for (int i = 0; i < kEmulatorTrials; ++i) {
    GridWorld world;
    world.rows = rng.range(2, 8);
    world.cols = rng.range(2, 8);
    world.start = Pose{rng.range(0, world.rows - 1), rng.range(0, world.cols - 1),
                       static_cast<Direction>(rng.range(0, 3))};
    Program code = testutil::random_program(rng);
    Trajectory sym = trace_on_empty(code, world.rows, world.cols, world.start);
    Trajectory emu = execute(code, world).trajectory;
    if (!same_trajectory(sym, emu)) ++trace_bad;
  }

  std::ostringstream detail;
  detail << (kEmulatorTrials - unroll_bad) << "/" << kEmulatorTrials
         << " repeat unrollings agree, " << (kEmulatorTrials - trace_bad) << "/"
         << kEmulatorTrials << " symbolic traces equal emulator traces";
  return {unroll_bad == 0 && trace_bad == 0, detail.str()};
}

Verdict criterion_rotate_flip(const std::map<std::string, RefPair>& refs) {
  int solvable = 0;
  int solvable_bad = 0;
  bool involution = true;
  bool rotation = true;
  for (const auto& [name, ref] : refs) {
    (void)name;
    for (Difficulty d : {Difficulty::Easy, Difficulty::Medium, Difficulty::Hard}) {
      auto [task, code] = rotate_flip(ref.task, ref.code, d);
      ++solvable;
      if (!is_solution(task, code)) ++solvable_bad;
    }

    auto [flip_task, flip_code] = rotate_flip(ref.task, ref.code, Difficulty::Medium);
    auto [back_task, back_code] = rotate_flip(flip_task, flip_code, Difficulty::Medium);
    if (!(back_task == ref.task) || print(back_code) != print(ref.code)) involution = false;

    Task cur_task = ref.task;
    Program cur_code = ref.code;
    for (int i = 0; i < 4; ++i) {
      auto [t, c] = rotate_flip(cur_task, cur_code, Difficulty::Easy);
      cur_task = t;
      cur_code = c;
    }
    if (!(cur_task == ref.task) || print(cur_code) != print(ref.code)) rotation = false;
  }
  std::ostringstream detail;
  detail << (solvable - solvable_bad) << "/" << solvable
         << " transformed pairs stay solvable, flip involution "
         << (involution ? "holds" : "BROKEN") << ", 4-fold rotation identity "
         << (rotation ? "holds" : "BROKEN");
  return {solvable_bad == 0 && involution && rotation, detail.str()};
}

Verdict criterion_determinism(const SuiteState& state) {
  int runs_failed = 0;
  for (const char* ref : kReferences) {
    for (const char* difficulty : kDifficulties) {
      for (int seed = 0; seed < kSeedCount; ++seed) {
        fs::path dir = state.root / "run2" / ref / difficulty / std::to_string(seed);
        std::ostringstream args;
        args << "synth --task " << quoted(data_task(ref)) << " --code "
             << quoted(data_code(ref)) << " --difficulty " << difficulty << " --seed " << seed
             << " --out " << quoted(dir);
        if (run_cli(args.str()) != 0) ++runs_failed;
      }
    }
  }

  auto collect = [&](const fs::path& base) {
    std::map<std::string, fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(base))
      if (entry.is_regular_file())
        files.emplace(fs::relative(entry.path(), base).string(), entry.path());
    return files;
  };
  auto run1 = collect(state.root / "run1");
  auto run2 = collect(state.root / "run2");

  int mismatched = 0;
  if (run1.size() != run2.size() || run1.empty()) mismatched = -1;
  if (mismatched == 0) {
    for (const auto& [rel, path1] : run1) {
      auto it = run2.find(rel);
      if (it == run2.end() || slurp(path1) != slurp(it->second)) ++mismatched;
    }
  }
  std::ostringstream detail;
  if (mismatched == -1)
    detail << "file sets differ (" << run1.size() << " vs " << run2.size() << ")";
  else
    detail << run1.size() - static_cast<size_t>(mismatched) << "/" << run1.size()
           << " files byte-identical across reruns";
  return {runs_failed == 0 && mismatched == 0, detail.str()};
}

Verdict criterion_round_trips() {
  Rng rng(90901);
  int program_bad = 0;
  for (int i = 0; i < kProgramRoundTrips; ++i) {
    Program p = testutil::random_program(rng);
    auto back = parse(print(p));
    if (!std::holds_alternative<Program>(back) || !(std::get<Program>(back) == p))
      ++program_bad;
  }
  int task_bad = 0;
  for (int i = 0; i < kTaskRoundTrips; ++i) {
    auto [task, code] = testutil::random_solvable_task(rng);
    (void)code;
    std::string text = task_to_json(task);
    auto back = task_from_json(text);
    if (!std::holds_alternative<Task>(back) || !(std::get<Task>(back) == task) ||
        task_to_json(std::get<Task>(back)) != text)
      ++task_bad;
  }
  std::ostringstream detail;
  detail << (kProgramRoundTrips - program_bad) << "/" << kProgramRoundTrips
         << " programs survive parse(print), " << (kTaskRoundTrips - task_bad) << "/"
         << kTaskRoundTrips << " tasks survive the JSON round trip";
  return {program_bad == 0 && task_bad == 0, detail.str()};
}

}  // namespace

int main() {
  SuiteState state;
  state.root = fs::current_path() / "acceptance_runs";
  std::error_code ec;
  fs::remove_all(state.root, ec);
  fs::create_directories(state.root);

  std::map<std::string, RefPair> refs;
  for (const char* name : kReferences) refs.emplace(name, load_reference(name));

  struct Row {
    const char* name;
    std::function<Verdict()> run;
  };
  const Row rows[] = {
      {"validity suite", [&] { return criterion_validity(state); }},
      {"deployment profile", [&] { return criterion_batch(state); }},
      {"difficulty conformance", [&] { return criterion_difficulty(state, refs); }},
      {"find placement law", [&] { return criterion_placement(state); }},
      {"oracle equivalence", [&] { return criterion_oracles(); }},
      {"emulator cross-checks", [&] { return criterion_emulator(); }},
      {"rotate-flip invariants", [&] { return criterion_rotate_flip(refs); }},
      {"determinism", [&] { return criterion_determinism(state); }},
      {"round trips", [&] { return criterion_round_trips(); }},
  };

  int failed = 0;
  int index = 0;
  for (const Row& row : rows) {
    ++index;
    Verdict v;
    try {
      v = row.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("criterion %d (%s): %s - %s\n", index, row.name, v.pass ? "PASS" : "FAIL",
                v.detail.c_str());
  }
  std::printf("%d/9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
