#include "turtlesyn/fdsolver.hpp"

namespace tsyn {

SolutionStream::SolutionStream(Csp csp, uint64_t seed) : csp_(std::move(csp)) {
  const size_t n = csp_.variables.size();
  order_.resize(n);
  alive_.resize(n);
  cursor_.assign(n, 0);
  assignment_.assign(n, 0);
  trail_.resize(n);
  watch_.resize(n);

  Rng rng(seed);
  for (size_t v = 0; v < n; ++v) {
    order_[v] = csp_.variables[v].domain;
    rng.shuffle(order_[v]);
    alive_[v].assign(order_[v].size(), 1);
  }
  for (size_t c = 0; c < csp_.constraints.size(); ++c) {
    const auto& scope = csp_.constraints[c].scope;
    if (scope.empty()) {
      // Constant constraints are decided up front.
      if (!csp_.constraints[c].pred(assignment_)) done_ = true;
      continue;
    }
    for (int v : scope) watch_[static_cast<size_t>(v)].push_back(static_cast<int>(c));
  }
}

bool SolutionStream::consistent_after_assign(int var) {
  for (int ci : watch_[static_cast<size_t>(var)]) {
    const FdConstraint& c = csp_.constraints[static_cast<size_t>(ci)];
    bool ready = true;
    for (int v : c.scope) {
      if (v > depth_) {
        ready = false;
        break;
      }
    }
    if (ready && !c.pred(assignment_)) return false;
  }
  return true;
}

bool SolutionStream::forward_check(int var) {
  for (int ci : watch_[static_cast<size_t>(var)]) {
    const FdConstraint& c = csp_.constraints[static_cast<size_t>(ci)];
    int unassigned = -1;
    bool single = true;
    for (int v : c.scope) {
      if (v > depth_) {
        if (unassigned != -1) {
          single = false;
          break;
        }
        unassigned = v;
      }
    }
    if (!single || unassigned == -1) continue;

    size_t w = static_cast<size_t>(unassigned);
    int alive_left = 0;
    for (size_t i = 0; i < order_[w].size(); ++i) {
      if (!alive_[w][i]) continue;
      assignment_[unassigned] = order_[w][i];
      if (c.pred(assignment_)) {
        ++alive_left;
      } else {
        alive_[w][i] = 0;
        trail_[static_cast<size_t>(depth_)].push_back({unassigned, static_cast<int>(i)});
      }
    }
    if (alive_left == 0) return false;
  }
  return true;
}

void SolutionStream::undo_prunes(int depth) {
  auto& t = trail_[static_cast<size_t>(depth)];
  for (auto& [v, i] : t) alive_[static_cast<size_t>(v)][static_cast<size_t>(i)] = 1;
  t.clear();
}

std::optional<std::vector<int>> SolutionStream::next() {
  if (done_) return std::nullopt;
  const int n = static_cast<int>(csp_.variables.size());

  if (n == 0) {
    done_ = true;
    return assignment_;  // empty assignment; constant constraints already checked
  }

  if (yielded_) {
    yielded_ = false;
    --depth_;
    undo_prunes(depth_);
  }

  while (true) {
    if (depth_ == n) {
      yielded_ = true;
      return assignment_;
    }
    const size_t var = static_cast<size_t>(depth_);
    bool descended = false;
    while (cursor_[var] < static_cast<int>(order_[var].size())) {
      int idx = cursor_[var]++;
      if (!alive_[var][static_cast<size_t>(idx)]) continue;
      assignment_[depth_] = order_[var][static_cast<size_t>(idx)];
      if (!consistent_after_assign(depth_)) continue;
      if (!forward_check(depth_)) {
        undo_prunes(depth_);
        continue;
      }
      ++depth_;
      if (depth_ < n) cursor_[static_cast<size_t>(depth_)] = 0;
      descended = true;
      break;
    }
    if (descended) continue;
    if (depth_ == 0) {
      done_ = true;
      return std::nullopt;
    }
    --depth_;
    undo_prunes(depth_);
  }
}

int64_t count_solutions(const Csp& csp, int64_t cap) {
  SolutionStream stream(csp, 0);
  int64_t n = 0;
  while (n < cap && stream.next()) ++n;
  return n;
}

}  // namespace tsyn
