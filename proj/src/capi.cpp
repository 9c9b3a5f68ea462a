#include "turtlesyn.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include <json.hpp>

#include "turtlesyn/baselines.hpp"
#include "turtlesyn/emulator.hpp"
#include "turtlesyn/lang.hpp"
#include "turtlesyn/render.hpp"
#include "turtlesyn/synth.hpp"
#include "turtlesyn/taskio.hpp"

struct tsyn_task {
  tsyn::Task value;
};
struct tsyn_program {
  tsyn::Program value;
};
struct tsyn_report {
  tsyn::SynthReport value;
};

namespace {

thread_local std::string g_last_error;

tsyn_status set_error(tsyn_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

tsyn_status ok() {
  g_last_error.clear();
  return TSYN_OK;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tsyn_status give_string(const std::string& s, char** out) {
  *out = copy_string(s);
  if (!*out) return set_error(TSYN_ERR_INTERNAL, "out of memory");
  return ok();
}

bool to_difficulty(tsyn_difficulty in, tsyn::Difficulty& out) {
  switch (in) {
    case TSYN_DIFFICULTY_EASY: out = tsyn::Difficulty::Easy; return true;
    case TSYN_DIFFICULTY_MEDIUM: out = tsyn::Difficulty::Medium; return true;
    case TSYN_DIFFICULTY_HARD: out = tsyn::Difficulty::Hard; return true;
  }
  return false;
}

}  // namespace

extern "C" {

const char* tsyn_last_error(void) { return g_last_error.c_str(); }

void tsyn_string_free(char* s) { std::free(s); }

tsyn_status tsyn_task_from_json(const char* json_text, tsyn_task** out) {
  if (!json_text || !out) return set_error(TSYN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  auto parsed = tsyn::task_from_json(json_text);
  if (auto* err = std::get_if<tsyn::IoError>(&parsed))
    return set_error(TSYN_ERR_PARSE, err->message);
  *out = new tsyn_task{std::move(std::get<tsyn::Task>(parsed))};
  return ok();
}

tsyn_status tsyn_task_to_json(const tsyn_task* task, char** out_json) {
  if (!task || !out_json) return set_error(TSYN_ERR_INVALID_ARGUMENT, "null argument");
  return give_string(tsyn::task_to_json(task->value), out_json);
}

void tsyn_task_free(tsyn_task* task) { delete task; }

tsyn_status tsyn_program_parse(const char* text, tsyn_program** out) {
  if (!text || !out) return set_error(TSYN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  auto parsed = tsyn::parse(text);
  if (auto* err = std::get_if<tsyn::ParseError>(&parsed)) {
    std::ostringstream msg;
    msg << "line " << err->line << ", column " << err->column << ": " << err->message;
    return set_error(TSYN_ERR_PARSE, msg.str());
  }
  *out = new tsyn_program{std::move(std::get<tsyn::Program>(parsed))};
  return ok();
}

tsyn_status tsyn_program_print(const tsyn_program* program, char** out_text) {
  if (!program || !out_text) return set_error(TSYN_ERR_INVALID_ARGUMENT, "null argument");
  return give_string(tsyn::print(program->value), out_text);
}

void tsyn_program_free(tsyn_program* program) { delete program; }

tsyn_status tsyn_check(const tsyn_task* task, const tsyn_program* program,
                       tsyn_check_result* out) {
  if (!task || !program || !out) return set_error(TSYN_ERR_INVALID_ARGUMENT, "null argument");
  tsyn::ExecResult result = tsyn::evaluate(task->value, program->value);
  out->goal_met = result.goal_met ? 1 : 0;
  out->constraints_met =
      tsyn::check_constraints(task->value.constraints, program->value) ? 1 : 0;
  out->crashed = result.trajectory.crashed ? 1 : 0;
  out->crash_reason = result.trajectory.crash_reason
                          ? tsyn::crash_reason_name(*result.trajectory.crash_reason)
                          : nullptr;
  return ok();
}

void tsyn_synth_options_init(tsyn_synth_options* options) {
  if (!options) return;
  tsyn::SynthRequest defaults;
  options->k = defaults.k;
  options->seed = defaults.seed;
  options->max_instantiations = defaults.budgets.max_instantiations;
  options->max_worlds_per_instantiation = defaults.budgets.max_worlds_per_instantiation;
  options->time_budget_seconds = defaults.budgets.time_budget_seconds;
  options->weight_trajectory = defaults.scoring.weight_trajectory;
  options->weight_visual = defaults.scoring.weight_visual;
  options->weight_dissimilarity = defaults.scoring.weight_dissimilarity;
  options->tau = defaults.scoring.tau;
}

tsyn_status tsyn_synthesize(const tsyn_task* reference, const tsyn_program* code,
                            tsyn_difficulty difficulty, const tsyn_synth_options* options,
                            tsyn_report** out) {
  if (!reference || !code || !out) return set_error(TSYN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  tsyn::SynthRequest request;
  if (!to_difficulty(difficulty, request.difficulty))
    return set_error(TSYN_ERR_INVALID_ARGUMENT, "bad difficulty value");
  request.reference_task = reference->value;
  request.reference_code = code->value;
  if (options) {
    if (options->k < 1) return set_error(TSYN_ERR_INVALID_ARGUMENT, "k must be at least 1");
    if (options->max_instantiations < 1 || options->max_worlds_per_instantiation < 1 ||
        options->time_budget_seconds <= 0)
      return set_error(TSYN_ERR_INVALID_ARGUMENT, "budgets must be positive");
    if (options->weight_trajectory < 0 || options->weight_visual < 0 ||
        options->weight_dissimilarity < 0 ||
        options->weight_trajectory + options->weight_visual + options->weight_dissimilarity <= 0)
      return set_error(TSYN_ERR_INVALID_ARGUMENT, "weights must be nonnegative, sum positive");
    if (options->tau < 0 || options->tau > 1)
      return set_error(TSYN_ERR_INVALID_ARGUMENT, "tau must lie in [0, 1]");
    request.k = options->k;
    request.seed = options->seed;
    request.budgets.max_instantiations = options->max_instantiations;
    request.budgets.max_worlds_per_instantiation = options->max_worlds_per_instantiation;
    request.budgets.time_budget_seconds = options->time_budget_seconds;
    request.scoring.weight_trajectory = options->weight_trajectory;
    request.scoring.weight_visual = options->weight_visual;
    request.scoring.weight_dissimilarity = options->weight_dissimilarity;
    request.scoring.tau = options->tau;
  }
  try {
    *out = new tsyn_report{tsyn::synthesize(request)};
  } catch (const std::invalid_argument& e) {
    return set_error(TSYN_ERR_UNSOLVED_REFERENCE, e.what());
  } catch (const std::exception& e) {
    return set_error(TSYN_ERR_INTERNAL, e.what());
  }
  return ok();
}

size_t tsyn_report_count(const tsyn_report* report) {
  return report ? report->value.outputs.size() : 0;
}

tsyn_status tsyn_report_task_json(const tsyn_report* report, size_t index, char** out_json) {
  if (!report || !out_json) return set_error(TSYN_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= report->value.outputs.size())
    return set_error(TSYN_ERR_INVALID_ARGUMENT, "output index out of range");
  return give_string(tsyn::task_to_json(report->value.outputs[index].task), out_json);
}

tsyn_status tsyn_report_code_text(const tsyn_report* report, size_t index, char** out_text) {
  if (!report || !out_text) return set_error(TSYN_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= report->value.outputs.size())
    return set_error(TSYN_ERR_INVALID_ARGUMENT, "output index out of range");
  return give_string(tsyn::print(report->value.outputs[index].code), out_text);
}

tsyn_status tsyn_report_scores_json(const tsyn_report* report, size_t index, char** out_json) {
  if (!report || !out_json) return set_error(TSYN_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= report->value.outputs.size())
    return set_error(TSYN_ERR_INVALID_ARGUMENT, "output index out of range");
  const tsyn::ScoredCandidate& cand = report->value.outputs[index];
  nlohmann::ordered_json j;
  j["validity"] = cand.components.validity;
  j["minimality"] = cand.components.minimality;
  j["minimality_unknown"] = cand.components.minimality_unknown;
  j["trajectory_quality"] = cand.components.trajectory_quality;
  j["visual_quality"] = cand.components.visual_quality;
  j["dissimilarity"] = cand.components.dissimilarity;
  j["total"] = cand.total;
  j["hash"] = cand.hash;
  return give_string(j.dump(2), out_json);
}

tsyn_status tsyn_report_counters_json(const tsyn_report* report, char** out_json) {
  if (!report || !out_json) return set_error(TSYN_ERR_INVALID_ARGUMENT, "null argument");
  const tsyn::SynthCounters& c = report->value.counters;
  nlohmann::ordered_json j;
  j["instantiations_tried"] = c.instantiations_tried;
  j["worlds_built"] = c.worlds_built;
  j["hard_gate_rejections"] = c.hard_gate_rejections;
  j["dedup_hits"] = c.dedup_hits;
  return give_string(j.dump(2), out_json);
}

double tsyn_report_elapsed_seconds(const tsyn_report* report) {
  return report ? report->value.elapsed_seconds : 0.0;
}

void tsyn_report_free(tsyn_report* report) { delete report; }

tsyn_status tsyn_rotate_flip(const tsyn_task* reference, const tsyn_program* code,
                             tsyn_difficulty difficulty, tsyn_task** out_task,
                             tsyn_program** out_code) {
  if (!reference || !code || !out_task || !out_code)
    return set_error(TSYN_ERR_INVALID_ARGUMENT, "null argument");
  *out_task = nullptr;
  *out_code = nullptr;
  tsyn::Difficulty level;
  if (!to_difficulty(difficulty, level))
    return set_error(TSYN_ERR_INVALID_ARGUMENT, "bad difficulty value");
  auto [task, program] = tsyn::rotate_flip(reference->value, code->value, level);
  *out_task = new tsyn_task{std::move(task)};
  *out_code = new tsyn_program{std::move(program)};
  return ok();
}

tsyn_status tsyn_render_svg(const tsyn_task* task, const tsyn_program* code_or_null,
                            char** out_svg) {
  if (!task || !out_svg) return set_error(TSYN_ERR_INVALID_ARGUMENT, "null argument");
  const tsyn::Program* code = code_or_null ? &code_or_null->value : nullptr;
  return give_string(tsyn::render_svg(task->value, code), out_svg);
}

}  // extern "C"
