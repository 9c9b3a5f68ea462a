#pragma once

#include <cstdint>
#include <vector>

#include "turtlesyn/model.hpp"
#include "turtlesyn/scoring.hpp"

namespace tsyn {

struct SynthBudgets {
  int max_instantiations = 2000;
  int max_worlds_per_instantiation = 3;
  double time_budget_seconds = 60.0;
};

struct SynthRequest {
  Task reference_task;
  Program reference_code;
  Difficulty difficulty = Difficulty::Easy;
  int k = 4;
  uint64_t seed = 0;
  SynthBudgets budgets;
  ScoringConfig scoring;
};

struct SynthCounters {
  int64_t instantiations_tried = 0;
  int64_t worlds_built = 0;
  int64_t hard_gate_rejections = 0;
  int64_t dedup_hits = 0;
};

struct SynthReport {
  std::vector<ScoredCandidate> outputs;  // sorted by total descending
  SynthCounters counters;
  double elapsed_seconds = 0.0;
};

// Three-stage pipeline: abstract the reference into a template and stream
// difficulty-conforming instantiations (stage 1), build up to
// max_worlds_per_instantiation worlds around each candidate code (stage 2),
// score everything against the reference and keep the best k above tau
// (stage 3). Generation stops early once k distinct candidates clear tau;
// the final ranking still runs over everything scored. All randomness is
// derived from req.seed (see rng.hpp), so equal requests give equal reports
// as long as the wall-clock budget does not intervene.
//
// Throws std::invalid_argument when the reference pair is not itself a valid
// solution.
SynthReport synthesize(const SynthRequest& req);

}  // namespace tsyn
