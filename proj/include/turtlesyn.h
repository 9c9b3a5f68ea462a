/* turtlesyn - practice-task synthesis for XLOMini turtle programs.
 *
 * C interface to the shared library. All functions are thread-safe as long
 * as each handle is used from one thread at a time. Functions returning
 * tsyn_status set a thread-local message readable via tsyn_last_error()
 * on failure. Strings returned through char** out-parameters are owned by
 * the caller and released with tsyn_string_free().
 */
#ifndef TURTLESYN_H
#define TURTLESYN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tsyn_status {
  TSYN_OK = 0,
  TSYN_ERR_INVALID_ARGUMENT = 1, /* null handle, bad enum, index out of range */
  TSYN_ERR_PARSE = 2,            /* malformed task JSON or program text */
  TSYN_ERR_UNSOLVED_REFERENCE = 3, /* reference code does not solve its task */
  TSYN_ERR_INTERNAL = 4
} tsyn_status;

typedef enum tsyn_difficulty {
  TSYN_DIFFICULTY_EASY = 0,
  TSYN_DIFFICULTY_MEDIUM = 1,
  TSYN_DIFFICULTY_HARD = 2
} tsyn_difficulty;

typedef struct tsyn_task tsyn_task;
typedef struct tsyn_program tsyn_program;
typedef struct tsyn_report tsyn_report;

/* Message for the most recent failure on this thread; "" if none. The
 * pointer stays valid until the next failing call on the same thread. */
const char* tsyn_last_error(void);

void tsyn_string_free(char* s);

/* ---- tasks ---- */

tsyn_status tsyn_task_from_json(const char* json_text, tsyn_task** out);
tsyn_status tsyn_task_to_json(const tsyn_task* task, char** out_json);
void tsyn_task_free(tsyn_task* task);

/* ---- programs ---- */

tsyn_status tsyn_program_parse(const char* text, tsyn_program** out);
tsyn_status tsyn_program_print(const tsyn_program* program, char** out_text);
void tsyn_program_free(tsyn_program* program);

/* ---- execution checks ---- */

typedef struct tsyn_check_result {
  int goal_met;
  int constraints_met;
  int crashed;
  const char* crash_reason; /* "off_grid", "wall", "forbidden", or NULL; static storage */
} tsyn_check_result;

tsyn_status tsyn_check(const tsyn_task* task, const tsyn_program* program,
                       tsyn_check_result* out);

/* ---- synthesis ---- */

typedef struct tsyn_synth_options {
  int k;                            /* outputs requested, default 4 */
  uint64_t seed;                    /* default 0 */
  int64_t max_instantiations;       /* candidate codes examined, default 2000 */
  int max_worlds_per_instantiation; /* default 3 */
  double time_budget_seconds;       /* default 60 */
  double weight_trajectory;         /* default 0.4 */
  double weight_visual;             /* default 0.3 */
  double weight_dissimilarity;      /* default 0.3 */
  double tau;                       /* acceptance threshold, default 0.6 */
} tsyn_synth_options;

/* Fills every field with its default. */
void tsyn_synth_options_init(tsyn_synth_options* options);

/* Generates up to options->k practice tasks. options may be NULL for all
 * defaults. Fails with TSYN_ERR_UNSOLVED_REFERENCE when code does not
 * solve reference. An empty result is TSYN_OK with a zero-output report. */
tsyn_status tsyn_synthesize(const tsyn_task* reference, const tsyn_program* code,
                            tsyn_difficulty difficulty, const tsyn_synth_options* options,
                            tsyn_report** out);

size_t tsyn_report_count(const tsyn_report* report);
tsyn_status tsyn_report_task_json(const tsyn_report* report, size_t index, char** out_json);
tsyn_status tsyn_report_code_text(const tsyn_report* report, size_t index, char** out_text);
/* Per-output component scores, total, and content hash as a JSON object. */
tsyn_status tsyn_report_scores_json(const tsyn_report* report, size_t index, char** out_json);
/* Search counters for the whole run as a JSON object. */
tsyn_status tsyn_report_counters_json(const tsyn_report* report, char** out_json);
double tsyn_report_elapsed_seconds(const tsyn_report* report);
void tsyn_report_free(tsyn_report* report);

/* ---- geometric baseline ---- */

/* Rotates (easy), mirrors (medium), or rotates-then-mirrors (hard) the
 * reference task, adjusting turn commands in the code where needed. */
tsyn_status tsyn_rotate_flip(const tsyn_task* reference, const tsyn_program* code,
                             tsyn_difficulty difficulty, tsyn_task** out_task,
                             tsyn_program** out_code);

/* ---- rendering ---- */

/* Deterministic SVG picture of the task; pass a program to overlay its
 * execution trajectory, or NULL for the bare task. */
tsyn_status tsyn_render_svg(const tsyn_task* task, const tsyn_program* code_or_null,
                            char** out_svg);

#ifdef __cplusplus
}
#endif

#endif /* TURTLESYN_H */
