#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "turtlesyn/rng.hpp"

namespace tsyn {

// Finite-domain constraint problems over small integer domains.
//
// A constraint names the variables it reads (its scope) and is evaluated once
// all of them are assigned; `values` is the full assignment vector indexed by
// variable position, with unassigned slots undefined outside the scope.
struct FdVariable {
  std::string id;
  std::vector<int> domain;
};

struct FdConstraint {
  std::string name;
  std::vector<int> scope;  // variable indices
  std::function<bool(const std::vector<int>& values)> pred;
};

struct Csp {
  std::vector<FdVariable> variables;
  std::vector<FdConstraint> constraints;

  int add_variable(std::string id, std::vector<int> domain) {
    variables.push_back(FdVariable{std::move(id), std::move(domain)});
    return static_cast<int>(variables.size()) - 1;
  }
  void add_constraint(std::string name, std::vector<int> scope,
                      std::function<bool(const std::vector<int>&)> pred) {
    constraints.push_back(FdConstraint{std::move(name), std::move(scope), std::move(pred)});
  }
};

// Lazy backtracking search with forward checking. Variables are assigned in
// declaration order; each variable's values are tried in a seeded-random
// order fixed at construction. Every satisfying assignment is produced
// exactly once; next() returns nothing when the space is exhausted.
class SolutionStream {
 public:
  SolutionStream(Csp csp, uint64_t seed);

  std::optional<std::vector<int>> next();

 private:
  bool consistent_after_assign(int var);
  bool forward_check(int var);
  void undo_prunes(int depth);

  Csp csp_;
  std::vector<std::vector<int>> order_;    // per-variable shuffled domains
  std::vector<std::vector<char>> alive_;   // per-variable value liveness
  std::vector<int> cursor_;                // per-depth position in order_
  std::vector<int> assignment_;
  std::vector<std::vector<std::pair<int, int>>> trail_;  // prunes per depth
  std::vector<std::vector<int>> watch_;    // var -> constraint indices
  int depth_ = 0;
  bool yielded_ = false;
  bool done_ = false;
};

// Number of solutions, capped at `cap`. Enumeration order does not affect the
// count, so a fixed seed is used internally.
int64_t count_solutions(const Csp& csp, int64_t cap);

}  // namespace tsyn
