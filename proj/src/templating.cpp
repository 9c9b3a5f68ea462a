#include "turtlesyn/templating.hpp"

#include <algorithm>
#include <array>

#include "turtlesyn/emulator.hpp"
#include "turtlesyn/rng.hpp"

namespace tsyn {

namespace {

std::vector<int> allowed_basic_values(const std::vector<CodeConstraint>& constraints) {
  std::vector<int> values;
  for (int b = 0; b < kBasicCmdCount; ++b) {
    BlockKind kind = block_of(static_cast<BasicCmd>(b));
    bool ok = true;
    for (const CodeConstraint& c : constraints) {
      if (c.type == ConstraintType::AllowedBlocks && !c.blocks.count(kind)) ok = false;
      if (c.type == ConstraintType::Forbid && c.block == kind) ok = false;
    }
    if (ok) values.push_back(b);
  }
  return values;
}

bool has_repeat(const Program& code) {
  for (const Stmt& s : code.statements)
    if (s.kind == Stmt::Kind::Repeat) return true;
  return false;
}

bool ref_has(const std::vector<CodeConstraint>& cs, ConstraintType type, BlockKind block) {
  for (const CodeConstraint& c : cs)
    if (c.type == type && c.block == block) return true;
  return false;
}

// Most frequent basic command, ties broken toward the lower enum value.
// Returns {cmd, count}; count is 0 when the program has no basic command.
std::pair<BasicCmd, int> most_frequent_basic(const Program& code) {
  BasicCmd best = BasicCmd::Forward;
  int best_count = 0;
  for (int b = 0; b < kBasicCmdCount; ++b) {
    auto cmd = static_cast<BasicCmd>(b);
    int count = block_occurrences(code, block_of(cmd));
    if (count > best_count) {
      best = cmd;
      best_count = count;
    }
  }
  return {best, best_count};
}

}  // namespace

std::vector<CodeConstraint> derive_base_constraints(const std::vector<CodeConstraint>& ref,
                                                    const Program& out) {
  std::vector<CodeConstraint> derived;
  derived.reserve(ref.size());
  for (const CodeConstraint& c : ref) {
    switch (c.type) {
      case ConstraintType::AtMostCommands:
        derived.push_back(CodeConstraint::at_most(code_length(out)));
        break;
      case ConstraintType::ExactlyCommands:
        derived.push_back(CodeConstraint::exactly(code_length(out)));
        break;
      case ConstraintType::MaxOccurrences:
        derived.push_back(
            CodeConstraint::max_occurrences(c.block, std::max(1, block_occurrences(out, c.block))));
        break;
      default:
        derived.push_back(c);
        break;
    }
  }
  canonicalize_constraints(derived);
  return derived;
}

TemplateSet templatize(const Program& ref_code, const std::vector<CodeConstraint>& ref_constraints,
                       const Goal& ref_goal, Difficulty difficulty, uint64_t seed) {
  TemplateSet ts;
  ts.skeleton = ref_code;
  ts.difficulty = difficulty;
  ts.ref_length = code_length(ref_code);
  ts.ref_constraints = ref_constraints;
  canonicalize_constraints(ts.ref_constraints);
  ts.ref_goal = ref_goal;

  const std::vector<int> basics = allowed_basic_values(ts.ref_constraints);

  // The solver enumerates in declaration order with the last variable cycling
  // fastest, so placeholders are declared least-influential first: goal fields,
  // the extra-constraint pick, extra slots, repeat counts, pen colors, and the
  // basic-command slots last. Early instantiations then sweep trajectory shape
  // and pen color instead of burning the budget on one frozen command sequence.
  if (ref_goal.type != GoalType::Draw) {
    ts.placeholders.push_back(
        Placeholder{"fruit_type", SlotRole::GoalItem, {0, 1, 2, 3}, false, -1, -1});
    if (difficulty == Difficulty::Hard) {
      ts.placeholders.push_back(
          Placeholder{"goal_type", SlotRole::GoalType, {0, 1}, false, -1, -1});
    }
  }

  if (difficulty == Difficulty::Hard) {
    std::vector<int> menu;
    if (has_repeat(ref_code) && !ref_has(ts.ref_constraints, ConstraintType::MustUse, BlockKind::Repeat))
      menu.push_back(0);
    menu.push_back(1);
    for (int b = 0; b < kBasicCmdCount; ++b) {
      BlockKind kind = block_of(static_cast<BasicCmd>(b));
      if (ref_has(ts.ref_constraints, ConstraintType::Forbid, kind)) continue;
      if (ref_has(ts.ref_constraints, ConstraintType::MustUse, kind)) continue;
      menu.push_back(2 + b);
    }
    ts.placeholders.push_back(
        Placeholder{"extra_constraint", SlotRole::ExtraConstraint, menu, false, -1, -1});
  }

  int n_basic = 0, n_color = 0, n_count = 0;
  std::vector<Placeholder> counts, colors, leaves;
  for (size_t si = 0; si < ref_code.statements.size(); ++si) {
    const Stmt& s = ref_code.statements[si];
    if (s.kind == Stmt::Kind::Leaf) {
      if (s.leaf.kind == LeafStmt::Kind::Basic) {
        leaves.push_back(Placeholder{"B" + std::to_string(++n_basic), SlotRole::BasicLeaf, basics,
                                     false, static_cast<int>(si), -1});
      } else {
        colors.push_back(Placeholder{"C" + std::to_string(++n_color), SlotRole::PenColorArg,
                                     {0, 1, 2, 3, 4, 5}, false, static_cast<int>(si), -1});
      }
    } else {
      counts.push_back(Placeholder{"N" + std::to_string(++n_count), SlotRole::RepeatCount,
                                   {2, 3, 4, 5}, false, static_cast<int>(si), -1});
      for (size_t bi = 0; bi < s.body.size(); ++bi) {
        const LeafStmt& l = s.body[bi];
        if (l.kind == LeafStmt::Kind::Basic) {
          leaves.push_back(Placeholder{"B" + std::to_string(++n_basic), SlotRole::BasicLeaf, basics,
                                       false, static_cast<int>(si), static_cast<int>(bi)});
        } else {
          colors.push_back(Placeholder{"C" + std::to_string(++n_color), SlotRole::PenColorArg,
                                       {0, 1, 2, 3, 4, 5}, false, static_cast<int>(si),
                                       static_cast<int>(bi)});
        }
      }
    }
  }

  Rng rng(seed);
  if (difficulty != Difficulty::Easy) {
    const int gap_count = static_cast<int>(ref_code.statements.size()) + 1;
    std::vector<int> gaps = {rng.range(0, gap_count - 1), rng.range(0, gap_count - 1)};
    std::sort(gaps.begin(), gaps.end());
    ts.extra_gaps = gaps;
    for (int k = 0; k < 2; ++k) {
      std::vector<int> domain = basics;
      bool optional = difficulty == Difficulty::Medium;
      if (optional) domain.push_back(4);
      ts.placeholders.push_back(
          Placeholder{"X" + std::to_string(k + 1), SlotRole::ExtraSlot, domain, optional, -1, -1});
    }
  }

  for (Placeholder& p : counts) ts.placeholders.push_back(std::move(p));
  for (Placeholder& p : colors) ts.placeholders.push_back(std::move(p));
  for (Placeholder& p : leaves) ts.placeholders.push_back(std::move(p));

  return ts;
}

namespace {

// Occurrence counts of each basic command implied by an assignment, without
// materializing the program.
std::array<int, 4> basic_counts(const TemplateSet& ts, const std::vector<int>& values) {
  std::array<int, 4> counts{0, 0, 0, 0};
  for (size_t i = 0; i < ts.placeholders.size(); ++i) {
    const Placeholder& p = ts.placeholders[i];
    if (p.role != SlotRole::BasicLeaf && p.role != SlotRole::ExtraSlot) continue;
    int v = values[i];
    if (v >= 0 && v < 4) counts[static_cast<size_t>(v)]++;
  }
  return counts;
}

}  // namespace

Csp template_csp(const TemplateSet& ts) {
  Csp csp;
  std::vector<int> code_vars;   // BasicLeaf and ExtraSlot variables
  std::vector<int> slot_vars;
  int extra_var = -1;

  for (const Placeholder& p : ts.placeholders) {
    int v = csp.add_variable(p.id, p.domain);
    if (p.role == SlotRole::BasicLeaf || p.role == SlotRole::ExtraSlot) code_vars.push_back(v);
    if (p.role == SlotRole::ExtraSlot) slot_vars.push_back(v);
    if (p.role == SlotRole::ExtraConstraint) extra_var = v;
  }

  if (ts.difficulty == Difficulty::Medium && slot_vars.size() == 2) {
    int a = slot_vars[0], b = slot_vars[1];
    csp.add_constraint("slot_activity", {a, b}, [a, b](const std::vector<int>& values) {
      return values[static_cast<size_t>(a)] != 4 || values[static_cast<size_t>(b)] != 4;
    });
  }

  for (const CodeConstraint& c : ts.ref_constraints) {
    if (c.type != ConstraintType::MustUse) continue;
    if (c.block == BlockKind::SetPenColor || c.block == BlockKind::Repeat) continue;  // structural
    int want = static_cast<int>(c.block);
    csp.add_constraint("must_use_" + std::string(block_name(c.block)), code_vars,
                       [code_vars, want](const std::vector<int>& values) {
                         for (int v : code_vars)
                           if (values[static_cast<size_t>(v)] == want) return true;
                         return false;
                       });
  }

  if (extra_var >= 0) {
    std::vector<int> scope = code_vars;
    scope.push_back(extra_var);
    TemplateSet ts_copy = ts;  // owned by the closure; the Csp may outlive ts
    csp.add_constraint(
        "extra_constraint_valid", scope,
        [ts_copy, extra_var](const std::vector<int>& values) {
          int choice = values[static_cast<size_t>(extra_var)];
          auto counts = basic_counts(ts_copy, values);
          if (choice == 0) return true;  // must_use(repeat); domain ensured presence
          if (choice == 1) {
            int best = 0;
            for (int b = 1; b < 4; ++b)
              if (counts[static_cast<size_t>(b)] > counts[static_cast<size_t>(best)]) best = b;
            int count = counts[static_cast<size_t>(best)];
            if (count == 0) return false;
            // Reject when it would duplicate a re-derived reference bound.
            for (const CodeConstraint& rc : ts_copy.ref_constraints) {
              if (rc.type == ConstraintType::MaxOccurrences &&
                  rc.block == block_of(static_cast<BasicCmd>(best)))
                return false;
            }
            return true;
          }
          int b = choice - 2;
          return counts[static_cast<size_t>(b)] == 0;
        });
  }

  return csp;
}

Instantiation instantiate(const TemplateSet& ts, const std::vector<int>& assignment) {
  Instantiation inst;
  inst.code = ts.skeleton;
  inst.goal = ts.ref_goal;

  std::vector<std::pair<int, LeafStmt>> slots;  // (gap, command), slot declaration order
  int slot_seen = 0;
  int extra_choice = -1;

  for (size_t i = 0; i < ts.placeholders.size(); ++i) {
    const Placeholder& p = ts.placeholders[i];
    int v = assignment[i];
    switch (p.role) {
      case SlotRole::BasicLeaf: {
        Stmt& s = inst.code.statements[static_cast<size_t>(p.stmt_index)];
        LeafStmt& leaf = p.body_index < 0 ? s.leaf : s.body[static_cast<size_t>(p.body_index)];
        leaf = LeafStmt::basic(static_cast<BasicCmd>(v));
        break;
      }
      case SlotRole::PenColorArg: {
        Stmt& s = inst.code.statements[static_cast<size_t>(p.stmt_index)];
        LeafStmt& leaf = p.body_index < 0 ? s.leaf : s.body[static_cast<size_t>(p.body_index)];
        leaf = LeafStmt::pen(static_cast<PenColor>(v));
        break;
      }
      case SlotRole::RepeatCount:
        inst.code.statements[static_cast<size_t>(p.stmt_index)].count = v;
        break;
      case SlotRole::ExtraSlot: {
        int gap = ts.extra_gaps[static_cast<size_t>(slot_seen++)];
        if (v != 4) slots.push_back({gap, LeafStmt::basic(static_cast<BasicCmd>(v))});
        break;
      }
      case SlotRole::GoalItem:
        inst.goal.item = static_cast<ItemKind>(v);
        break;
      case SlotRole::GoalType:
        inst.goal.type = v == 0 ? GoalType::Find : GoalType::CollectAll;
        break;
      case SlotRole::ExtraConstraint:
        extra_choice = v;
        break;
    }
  }

  // Insert back to front so recorded gap positions stay valid.
  for (auto it = slots.rbegin(); it != slots.rend(); ++it) {
    inst.code.statements.insert(inst.code.statements.begin() + it->first,
                                Stmt::from_leaf(it->second));
  }

  inst.constraints = derive_base_constraints(ts.ref_constraints, inst.code);
  if (extra_choice >= 0) {
    if (extra_choice == 0) {
      inst.constraints.push_back(CodeConstraint::must_use(BlockKind::Repeat));
    } else if (extra_choice == 1) {
      auto [cmd, count] = most_frequent_basic(inst.code);
      inst.constraints.push_back(CodeConstraint::max_occurrences(block_of(cmd), count));
    } else {
      inst.constraints.push_back(
          CodeConstraint::forbid(block_of(static_cast<BasicCmd>(extra_choice - 2))));
    }
    canonicalize_constraints(inst.constraints);
  }
  return inst;
}

std::function<bool(const Instantiation&)> difficulty_predicate(const TemplateSet& ts) {
  TemplateSet t = ts;
  return [t](const Instantiation& inst) {
    const int len = code_length(inst.code);
    std::vector<CodeConstraint> base = derive_base_constraints(t.ref_constraints, inst.code);

    auto same_goal_type = inst.goal.type == t.ref_goal.type;

    switch (t.difficulty) {
      case Difficulty::Easy:
        // An easy task must stay solvable under the original constraint set,
        // original numeric bounds included.
        return len == t.ref_length && inst.constraints == base && same_goal_type &&
               check_constraints(t.ref_constraints, inst.code);
      case Difficulty::Medium:
        return len > t.ref_length && len <= t.ref_length + 2 && inst.constraints == base &&
               same_goal_type;
      case Difficulty::Hard: {
        if (len != t.ref_length + 2) return false;
        if (t.ref_goal.type == GoalType::Draw) {
          if (inst.goal.type != GoalType::Draw) return false;
        } else {
          if (inst.goal.type == GoalType::Draw) return false;
        }
        if (inst.constraints.size() != base.size() + 1) return false;
        // The candidate set must be the derived base plus exactly one menu pick.
        std::vector<CodeConstraint> extra;
        size_t bi = 0;
        for (const CodeConstraint& c : inst.constraints) {
          if (bi < base.size() && base[bi] == c) {
            ++bi;
          } else {
            extra.push_back(c);
          }
        }
        if (bi != base.size() || extra.size() != 1) return false;
        const CodeConstraint& e = extra[0];
        if (e.type == ConstraintType::MustUse && e.block == BlockKind::Repeat)
          return block_occurrences(inst.code, BlockKind::Repeat) > 0;
        if (e.type == ConstraintType::MaxOccurrences) {
          auto [cmd, count] = most_frequent_basic(inst.code);
          return count > 0 && e.block == block_of(cmd) && e.n == count;
        }
        if (e.type == ConstraintType::Forbid) {
          bool is_basic = e.block == BlockKind::Forward || e.block == BlockKind::Back ||
                          e.block == BlockKind::Left || e.block == BlockKind::Right;
          return is_basic && block_occurrences(inst.code, e.block) == 0;
        }
        return false;
      }
    }
    return false;
  };
}

}  // namespace tsyn
