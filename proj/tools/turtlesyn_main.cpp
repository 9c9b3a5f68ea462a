#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "turtlesyn.h"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

using TaskPtr = std::unique_ptr<tsyn_task, void (*)(tsyn_task*)>;
using ProgramPtr = std::unique_ptr<tsyn_program, void (*)(tsyn_program*)>;
using ReportPtr = std::unique_ptr<tsyn_report, void (*)(tsyn_report*)>;

std::string take(char* s) {
  std::string out = s ? s : "";
  tsyn_string_free(s);
  return out;
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_file(const fs::path& path, std::string content) {
  if (content.empty() || content.back() != '\n') content.push_back('\n');
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

TaskPtr load_task(const std::string& path) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << path << ": cannot read file\n";
    return {nullptr, tsyn_task_free};
  }
  tsyn_task* task = nullptr;
  if (tsyn_task_from_json(text->c_str(), &task) != TSYN_OK) {
    std::cerr << path << ": " << tsyn_last_error() << '\n';
    return {nullptr, tsyn_task_free};
  }
  return {task, tsyn_task_free};
}

ProgramPtr load_program(const std::string& path) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << path << ": cannot read file\n";
    return {nullptr, tsyn_program_free};
  }
  tsyn_program* program = nullptr;
  if (tsyn_program_parse(text->c_str(), &program) != TSYN_OK) {
    std::cerr << path << ": " << tsyn_last_error() << '\n';
    return {nullptr, tsyn_program_free};
  }
  return {program, tsyn_program_free};
}

std::optional<tsyn_difficulty> difficulty_from(const std::string& name) {
  if (name == "easy") return TSYN_DIFFICULTY_EASY;
  if (name == "medium") return TSYN_DIFFICULTY_MEDIUM;
  if (name == "hard") return TSYN_DIFFICULTY_HARD;
  return std::nullopt;
}

std::string trimmed(const std::string& s) {
  size_t from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return "";
  size_t to = s.find_last_not_of(" \t\r");
  return s.substr(from, to - from + 1);
}

// Scoring overrides, one `key = value` per line, `#` comments.
bool apply_config(const std::string& path, tsyn_synth_options& options) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << path << ": cannot read file\n";
    return false;
  }
  std::istringstream lines(*text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    std::string body = trimmed(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    size_t eq = body.find('=');
    if (eq == std::string::npos) {
      std::cerr << path << ":" << lineno << ": expected 'key = value'\n";
      return false;
    }
    std::string key = trimmed(body.substr(0, eq));
    std::string value = trimmed(body.substr(eq + 1));
    double parsed = 0;
    try {
      size_t used = 0;
      parsed = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      std::cerr << path << ":" << lineno << ": '" << value << "' is not a number\n";
      return false;
    }
    if (key == "tau") options.tau = parsed;
    else if (key == "weight_trajectory") options.weight_trajectory = parsed;
    else if (key == "weight_visual") options.weight_visual = parsed;
    else if (key == "weight_dissimilarity") options.weight_dissimilarity = parsed;
    else {
      std::cerr << path << ":" << lineno << ": unknown key '" << key << "'\n";
      return false;
    }
  }
  return true;
}

std::string output_stem(size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "task_%03zu", index + 1);
  return buf;
}

// Writes task/code (and optionally SVG) files for one report entry; returns
// the report.json fragment describing them, or nullopt on an I/O failure.
std::optional<ordered_json> emit_output(const tsyn_report* report, size_t index,
                                        const fs::path& dir, bool render) {
  char* task_json = nullptr;
  char* code_text = nullptr;
  char* scores_json = nullptr;
  if (tsyn_report_task_json(report, index, &task_json) != TSYN_OK ||
      tsyn_report_code_text(report, index, &code_text) != TSYN_OK ||
      tsyn_report_scores_json(report, index, &scores_json) != TSYN_OK) {
    std::cerr << "report access failed: " << tsyn_last_error() << '\n';
    return std::nullopt;
  }
  std::string stem = output_stem(index);
  std::string task_text = take(task_json);
  if (!write_file(dir / (stem + ".task.json"), task_text) ||
      !write_file(dir / (stem + ".xlc"), take(code_text))) {
    std::cerr << dir.string() << ": cannot write output files\n";
    return std::nullopt;
  }
  if (render) {
    tsyn_task* task = nullptr;
    tsyn_program* code = nullptr;
    char* svg = nullptr;
    auto code_file = read_file(dir / (stem + ".xlc"));
    bool ok = tsyn_task_from_json(task_text.c_str(), &task) == TSYN_OK && code_file &&
              tsyn_program_parse(code_file->c_str(), &code) == TSYN_OK &&
              tsyn_render_svg(task, code, &svg) == TSYN_OK &&
              write_file(dir / (stem + ".svg"), take(svg));
    tsyn_task_free(task);
    tsyn_program_free(code);
    if (!ok) {
      std::cerr << dir.string() << ": cannot render " << stem << ".svg\n";
      return std::nullopt;
    }
  }
  ordered_json entry;
  entry["task"] = stem + ".task.json";
  entry["code"] = stem + ".xlc";
  entry["scores"] = ordered_json::parse(take(scores_json));
  return entry;
}

// Runs one synthesis and writes its outputs plus report.json into dir.
// Returns the output count, or -1 on failure.
int synth_into(const tsyn_task* reference, const tsyn_program* code, tsyn_difficulty difficulty,
               const tsyn_synth_options& options, const fs::path& dir, bool render,
               const std::string& difficulty_name) {
  tsyn_report* raw = nullptr;
  tsyn_status status = tsyn_synthesize(reference, code, difficulty, &options, &raw);
  if (status != TSYN_OK) {
    std::cerr << "synthesis failed: " << tsyn_last_error() << '\n';
    return -1;
  }
  ReportPtr report(raw, tsyn_report_free);

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << dir.string() << ": " << ec.message() << '\n';
    return -1;
  }

  size_t count = tsyn_report_count(report.get());
  ordered_json manifest;
  manifest["difficulty"] = difficulty_name;
  manifest["seed"] = options.seed;
  manifest["requested"] = options.k;
  manifest["outputs"] = ordered_json::array();
  for (size_t i = 0; i < count; ++i) {
    auto entry = emit_output(report.get(), i, dir, render);
    if (!entry) return -1;
    manifest["outputs"].push_back(std::move(*entry));
  }
  char* counters = nullptr;
  if (tsyn_report_counters_json(report.get(), &counters) != TSYN_OK) {
    std::cerr << "report access failed: " << tsyn_last_error() << '\n';
    return -1;
  }
  manifest["counters"] = ordered_json::parse(take(counters));
  if (!write_file(dir / "report.json", manifest.dump(2))) {
    std::cerr << (dir / "report.json").string() << ": cannot write\n";
    return -1;
  }
  std::printf("%s: %zu task%s in %.2f s\n", difficulty_name.c_str(), count,
              count == 1 ? "" : "s", tsyn_report_elapsed_seconds(report.get()));
  return static_cast<int>(count);
}

struct CommonArgs {
  std::string task_path;
  std::string code_path;
  std::string difficulty;
  std::string out_dir = "./out";
  std::string config_path;
  uint64_t seed = 0;
  int k = 4;
  bool render = false;
};

int run_synth(const CommonArgs& args) {
  auto difficulty = difficulty_from(args.difficulty);
  if (!difficulty) {
    std::cerr << "unknown difficulty '" << args.difficulty
              << "' (valid: easy, medium, hard)\n";
    return 1;
  }
  TaskPtr task = load_task(args.task_path);
  if (!task) return 1;
  ProgramPtr code = load_program(args.code_path);
  if (!code) return 1;

  tsyn_synth_options options;
  tsyn_synth_options_init(&options);
  options.k = args.k;
  options.seed = args.seed;
  if (!args.config_path.empty() && !apply_config(args.config_path, options)) return 1;

  int count = synth_into(task.get(), code.get(), *difficulty, options, args.out_dir,
                         args.render, args.difficulty);
  if (count < 0) return 1;
  if (count == 0) {
    std::cerr << "no candidate cleared the acceptance threshold\n";
    return 2;
  }
  return 0;
}

int run_batch(const CommonArgs& args) {
  TaskPtr task = load_task(args.task_path);
  if (!task) return 1;
  ProgramPtr code = load_program(args.code_path);
  if (!code) return 1;

  tsyn_synth_options options;
  tsyn_synth_options_init(&options);
  options.seed = args.seed;
  if (!args.config_path.empty() && !apply_config(args.config_path, options)) return 1;

  const struct {
    const char* name;
    tsyn_difficulty difficulty;
    int k;
  } levels[] = {
      {"easy", TSYN_DIFFICULTY_EASY, 3},
      {"medium", TSYN_DIFFICULTY_MEDIUM, 4},
      {"hard", TSYN_DIFFICULTY_HARD, 3},
  };
  bool all_nonempty = true;
  for (const auto& level : levels) {
    options.k = level.k;
    int count = synth_into(task.get(), code.get(), level.difficulty, options,
                           fs::path(args.out_dir) / level.name, args.render, level.name);
    if (count < 0) return 1;
    if (count == 0) all_nonempty = false;
  }
  if (!all_nonempty) {
    std::cerr << "at least one difficulty produced no tasks\n";
    return 2;
  }
  return 0;
}

int run_check(const CommonArgs& args) {
  TaskPtr task = load_task(args.task_path);
  if (!task) return 1;
  ProgramPtr code = load_program(args.code_path);
  if (!code) return 1;

  tsyn_check_result result{};
  if (tsyn_check(task.get(), code.get(), &result) != TSYN_OK) {
    std::cerr << tsyn_last_error() << '\n';
    return 1;
  }
  std::printf("goal: %s\n", result.goal_met ? "pass" : "fail");
  std::printf("constraints: %s\n", result.constraints_met ? "pass" : "fail");
  if (result.crashed) std::printf("crash: %s\n", result.crash_reason);
  return result.goal_met && result.constraints_met ? 0 : 3;
}

int run_baseline(const CommonArgs& args) {
  auto difficulty = difficulty_from(args.difficulty);
  if (!difficulty) {
    std::cerr << "unknown difficulty '" << args.difficulty
              << "' (valid: easy, medium, hard)\n";
    return 1;
  }
  TaskPtr task = load_task(args.task_path);
  if (!task) return 1;
  ProgramPtr code = load_program(args.code_path);
  if (!code) return 1;

  tsyn_check_result result{};
  if (tsyn_check(task.get(), code.get(), &result) != TSYN_OK) {
    std::cerr << tsyn_last_error() << '\n';
    return 1;
  }
  if (!result.goal_met || !result.constraints_met) {
    std::cerr << args.code_path << ": reference code does not solve the reference task\n";
    return 1;
  }

  tsyn_task* out_task = nullptr;
  tsyn_program* out_code = nullptr;
  if (tsyn_rotate_flip(task.get(), code.get(), *difficulty, &out_task, &out_code) != TSYN_OK) {
    std::cerr << tsyn_last_error() << '\n';
    return 1;
  }
  TaskPtr transformed(out_task, tsyn_task_free);
  ProgramPtr adjusted(out_code, tsyn_program_free);

  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  if (ec) {
    std::cerr << args.out_dir << ": " << ec.message() << '\n';
    return 1;
  }
  char* task_json = nullptr;
  char* code_text = nullptr;
  if (tsyn_task_to_json(transformed.get(), &task_json) != TSYN_OK ||
      tsyn_program_print(adjusted.get(), &code_text) != TSYN_OK) {
    std::cerr << tsyn_last_error() << '\n';
    return 1;
  }
  fs::path dir(args.out_dir);
  std::string stem = output_stem(0);
  if (!write_file(dir / (stem + ".task.json"), take(task_json)) ||
      !write_file(dir / (stem + ".xlc"), take(code_text))) {
    std::cerr << args.out_dir << ": cannot write output files\n";
    return 1;
  }
  if (args.render) {
    char* svg = nullptr;
    if (tsyn_render_svg(transformed.get(), adjusted.get(), &svg) != TSYN_OK ||
        !write_file(dir / (stem + ".svg"), take(svg))) {
      std::cerr << args.out_dir << ": cannot render " << stem << ".svg\n";
      return 1;
    }
  }
  std::printf("wrote %s and %s\n", (dir / (stem + ".task.json")).c_str(),
              (dir / (stem + ".xlc")).c_str());
  return 0;
}

int run_render(const CommonArgs& args, const std::string& out_file) {
  TaskPtr task = load_task(args.task_path);
  if (!task) return 1;
  ProgramPtr code(nullptr, tsyn_program_free);
  if (!args.code_path.empty()) {
    code = load_program(args.code_path);
    if (!code) return 1;
  }
  char* svg = nullptr;
  if (tsyn_render_svg(task.get(), code.get(), &svg) != TSYN_OK) {
    std::cerr << tsyn_last_error() << '\n';
    return 1;
  }
  if (!write_file(out_file, take(svg))) {
    std::cerr << out_file << ": cannot write\n";
    return 1;
  }
  std::printf("wrote %s\n", out_file.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesizes solvable practice tasks for XLOMini turtle programs"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string render_out = "out.svg";

  auto add_ref_flags = [&](CLI::App* cmd) {
    cmd->add_option("--task", args.task_path, "Reference task JSON file")->required();
    cmd->add_option("--code", args.code_path, "Reference solution code file")->required();
  };

  CLI::App* synth = app.add_subcommand("synth", "Generate practice tasks at one difficulty");
  add_ref_flags(synth);
  synth->add_option("--difficulty", args.difficulty, "easy, medium, or hard")->required();
  synth->add_option("--k", args.k, "Number of tasks to generate (default 4)");
  synth->add_option("--seed", args.seed, "Random seed (default 0)");
  synth->add_option("--out", args.out_dir, "Output directory (default ./out)");
  synth->add_option("--config", args.config_path, "Scoring weights/threshold file");
  synth->add_flag("--render", args.render, "Also write an SVG per task");

  CLI::App* batch = app.add_subcommand(
      "batch", "Generate the full practice set: 3 easy, 4 medium, 3 hard");
  add_ref_flags(batch);
  batch->add_option("--seed", args.seed, "Random seed (default 0)");
  batch->add_option("--out", args.out_dir, "Output directory (default ./out)");
  batch->add_option("--config", args.config_path, "Scoring weights/threshold file");
  batch->add_flag("--render", args.render, "Also write an SVG per task");

  CLI::App* check = app.add_subcommand("check", "Verify that code solves a task");
  add_ref_flags(check);

  CLI::App* baseline =
      app.add_subcommand("baseline", "Derive one task geometrically (rotate/flip)");
  add_ref_flags(baseline);
  baseline->add_option("--difficulty", args.difficulty, "easy, medium, or hard")->required();
  baseline->add_option("--out", args.out_dir, "Output directory (default ./out)");
  baseline->add_flag("--render", args.render, "Also write an SVG");

  CLI::App* render = app.add_subcommand("render", "Draw a task as SVG");
  render->add_option("--task", args.task_path, "Task JSON file")->required();
  render->add_option("--code", args.code_path, "Overlay this code's trajectory");
  render->add_option("--out", render_out, "Output SVG file (default out.svg)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (synth->parsed()) return run_synth(args);
  if (batch->parsed()) return run_batch(args);
  if (check->parsed()) return run_check(args);
  if (baseline->parsed()) return run_baseline(args);
  if (render->parsed()) return run_render(args, render_out);
  return 1;
}
