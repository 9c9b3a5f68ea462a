#pragma once

#include <string>
#include <vector>

#include "turtlesyn/model.hpp"

namespace tsyn {

struct ScoringConfig {
  double weight_trajectory = 0.4;
  double weight_visual = 0.3;
  double weight_dissimilarity = 0.3;
  double tau = 0.6;  // emission threshold used by top_k callers
};

struct ComponentScores {
  double validity = 0.0;
  double minimality = 0.0;
  double trajectory_quality = 0.0;
  double visual_quality = 0.0;
  double dissimilarity = 0.0;
  bool minimality_unknown = false;  // search budget exceeded; gate passed as 1
};

struct ScoredCandidate {
  Task task;
  Program code;
  ComponentScores components;
  double total = 0.0;
  std::string hash;
};

enum class MinimalityResult { Minimal, NotMinimal, BudgetExceeded };

// True minimality check: no program that executes fewer than max_len tokens
// (loop bodies counted per iteration) solves the task. A witness must meet
// the goal without crashing and satisfy every code constraint on its written
// form; the search enumerates flat command sequences and single-repeat forms
// over the task's available vocabulary (allowed_blocks minus forbidden
// blocks). Repeat forms matter exactly when written-length or usage
// constraints bind, since a loop never shortens the executed work. Pen color
// commands are skipped when they provably cannot matter (navigation goals,
// all-black patterns, no setpencolor usage requirement). BudgetExceeded when
// the space tops 10^6 programs or max_len exceeds 8.
MinimalityResult minimality_oracle(const Task& task, int max_len);

// Validity and minimality gate the score: either failing pins the total to
// exactly 0. Otherwise the total is the weighted mean of the three soft
// components, each in [0, 1].
ScoredCandidate score(const Task& task, const Program& code, const Task& ref_task,
                      const Program& ref_code, const ScoringConfig& cfg = {});

// Highest-total candidates with total >= tau, deduplicated by content hash,
// ties broken by lexicographic hash order. At most k results, sorted by
// total descending.
std::vector<ScoredCandidate> top_k(std::vector<ScoredCandidate> candidates, int k, double tau);

}  // namespace tsyn
