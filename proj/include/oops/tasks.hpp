#ifndef OOPS_TASKS_HPP
#define OOPS_TASKS_HPP

#include <utility>
#include <vector>

#include "oops/state.hpp"

namespace oops {

// hanoi environment block: env[0..2] = top counters of pegs 1..3, then n+1
// cells per peg holding disk sizes bottom-up
inline int hanoi_top_cell(const Layout &lay, int peg) {
  return lay.env(peg - 1);
}
inline int hanoi_disk_cell(const Layout &lay, int n, int peg, int level) {
  return lay.env(3 + (peg - 1) * (n + 1) + (level - 1));
}

struct SolveCheck {
  bool solved;
  std::int64_t cost;
};

// writes the task's inputs and initial pattern (with boosts) onto a fresh
// tape; records the number of cells written in tape.init_writes
void init_task(TaskTape &tape, Suite suite, int n,
               const std::vector<int> &boost_opcodes,
               const std::vector<int> &planted_goal = {});

SolveCheck test_solved(const TaskTape &tape);

// pattern boosting: numerator and denominator gain n_q per listed opcode;
// the same deltas reversed exactly by undo_boosts
void apply_boosts(TaskTape &tape, const std::vector<int> &opcodes,
                  bool journaled);
void undo_boosts(TaskTape &tape, const std::vector<int> &opcodes,
                 bool journaled);

// classic recursive solution, oracle for replay tests: list of (from, to)
std::vector<std::pair<int, int>> reference_hanoi(int n);

// moves the top disk between pegs with legality checks; journaled writes
void hanoi_move(TaskTape &tape, int from, int to);

} // namespace oops

#endif
