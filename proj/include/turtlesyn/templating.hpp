#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "turtlesyn/fdsolver.hpp"
#include "turtlesyn/model.hpp"

namespace tsyn {

// Roles a placeholder can play when re-materializing a program from an
// assignment. Integer encodings per role:
//   BasicLeaf / ExtraSlot: 0..3 = forward/back/left/right, 4 = absent (optional slots)
//   PenColorArg:           0..5 = pen colors
//   RepeatCount:           literal count 2..5
//   GoalItem:              0..3 = item kinds
//   GoalType:              0 = find, 1 = collect_all
//   ExtraConstraint:       0 = must_use(repeat), 1 = max_occurrences(most
//                          frequent basic, its count), 2+b = forbid(basic b)
enum class SlotRole : uint8_t {
  BasicLeaf,
  PenColorArg,
  RepeatCount,
  ExtraSlot,
  GoalItem,
  GoalType,
  ExtraConstraint,
};

struct Placeholder {
  std::string id;
  SlotRole role = SlotRole::BasicLeaf;
  std::vector<int> domain;
  bool optional = false;
  int stmt_index = -1;  // location inside the skeleton, when applicable
  int body_index = -1;  // -1 for top-level leaves and repeat counts
};

// A reference pair abstracted into a skeleton plus placeholders. The skeleton
// keeps the reference's statement kinds and repeat structure; placeholders
// range over command choices, pen colors, repeat counts, goal details and, at
// medium/hard difficulty, two command slots inserted at seeded-random
// top-level positions (optional at medium, mandatory at hard).
struct TemplateSet {
  Program skeleton;
  Difficulty difficulty = Difficulty::Easy;
  int ref_length = 0;
  std::vector<CodeConstraint> ref_constraints;
  Goal ref_goal;
  std::vector<Placeholder> placeholders;
  std::vector<int> extra_gaps;  // top-level insertion positions, ascending
};

struct Instantiation {
  Program code;
  std::vector<CodeConstraint> constraints;
  Goal goal;
};

TemplateSet templatize(const Program& ref_code, const std::vector<CodeConstraint>& ref_constraints,
                       const Goal& ref_goal, Difficulty difficulty, uint64_t seed);

// Finite-domain problem whose solutions are exactly the admissible
// assignments of the template's placeholders (declaration order matches
// `placeholders`).
Csp template_csp(const TemplateSet& ts);

Instantiation instantiate(const TemplateSet& ts, const std::vector<int>& assignment);

// Difficulty acceptance rules relative to the reference:
//   easy:   same written length, constraint set derived 1:1, same goal type
//   medium: one or two commands longer, constraint set derived 1:1, same goal type
//   hard:   exactly two commands longer, one extra constraint drawn from
//           { must_use(repeat), max_occurrences(most frequent basic, its
//           count), forbid(an unused basic) }, goal type free among the
//           navigation goals (draw stays draw)
// Numeric bounds in derived constraints are re-expressed against the
// candidate's own length and occurrence counts.
std::function<bool(const Instantiation&)> difficulty_predicate(const TemplateSet& ts);

// Reference constraints re-derived against a concrete output program
// (at_most/exactly bounds from its length, max_occurrences caps from its
// counts, name constraints copied). Returned in canonical order.
std::vector<CodeConstraint> derive_base_constraints(const std::vector<CodeConstraint>& ref,
                                                    const Program& out);

}  // namespace tsyn
