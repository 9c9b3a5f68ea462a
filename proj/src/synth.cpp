#include "turtlesyn/synth.hpp"

#include <chrono>
#include <set>
#include <stdexcept>

#include "turtlesyn/emulator.hpp"
#include "turtlesyn/fdsolver.hpp"
#include "turtlesyn/rng.hpp"
#include "turtlesyn/templating.hpp"
#include "turtlesyn/worldgen.hpp"

namespace tsyn {

SynthReport synthesize(const SynthRequest& req) {
  if (!is_solution(req.reference_task, req.reference_code))
    throw std::invalid_argument("reference code does not solve the reference task");

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  SynthReport report;

  TemplateSet ts = templatize(req.reference_code, req.reference_task.constraints,
                              req.reference_task.goal, req.difficulty, derive_seed(req.seed, 1, 0));
  auto accepts = difficulty_predicate(ts);
  SolutionStream stream(template_csp(ts), derive_seed(req.seed, 1, 1));

  WorldGenOptions world_opts;
  world_opts.forbidden_cells = static_cast<int>(req.reference_task.world.forbidden.size());
  const int rows = req.reference_task.world.rows;
  const int cols = req.reference_task.world.cols;
  const int max_worlds = req.budgets.max_worlds_per_instantiation;

  std::vector<ScoredCandidate> pool;
  std::set<std::string> seen;
  int64_t accepted = 0;  // distinct candidates at or above tau

  for (int64_t index = 0; index < req.budgets.max_instantiations; ++index) {
    if (elapsed() > req.budgets.time_budget_seconds) break;
    auto assignment = stream.next();
    if (!assignment) break;
    ++report.counters.instantiations_tried;

    Instantiation inst = instantiate(ts, *assignment);
    if (!accepts(inst)) continue;

    for (int w = 0; w < max_worlds && accepted < req.k; ++w) {
      auto world = generate_world(inst.code, inst.goal, rows, cols,
                                  derive_seed(req.seed, 2, static_cast<uint64_t>(index) *
                                                               static_cast<uint64_t>(max_worlds) +
                                                           static_cast<uint64_t>(w)),
                                  world_opts);
      if (!world) continue;
      ++report.counters.worlds_built;

      Task task{inst.goal, inst.constraints, *world};
      ScoredCandidate cand = score(task, inst.code, req.reference_task, req.reference_code,
                                   req.scoring);
      if (cand.total == 0.0) {
        ++report.counters.hard_gate_rejections;
        continue;
      }
      if (!seen.insert(cand.hash).second) {
        ++report.counters.dedup_hits;
        continue;
      }
      if (cand.total >= req.scoring.tau) ++accepted;
      pool.push_back(std::move(cand));
    }
    if (accepted >= req.k) break;
  }

  report.outputs = top_k(std::move(pool), req.k, req.scoring.tau);
  report.elapsed_seconds = elapsed();
  return report;
}

}  // namespace tsyn
