#ifndef OOPS_INTERP_HPP
#define OOPS_INTERP_HPP

#include <cstdint>
#include <vector>

#include "oops/state.hpp"
#include "oops/table.hpp"

namespace oops {

struct StepOut {
  enum Kind { Ran, Solved, Halted, TokenRequest } kind;
  std::int64_t cost;
};

// per-branch accounting used by the budget-discipline checks
struct RunStats {
  std::int64_t executed = 0;    // charged steps
  std::int64_t max_single = 0;  // largest single charge
  std::int64_t max_t = 0;       // largest path time at a charge boundary
  std::int64_t abandon_bad = 0; // abandonments with t <= budget (must be 0)
};

// one fetch-decode-execute step for one task, including the solution test
StepOut step(TaskTape &tape, CodeStore &store, const OpcodeTable &table);

// dispatch of a single instruction without fetch/advance bookkeeping;
// exposed for direct unit testing of instruction semantics
struct ExecCtx {
  TaskTape &tp;
  CodeStore &store;
  const OpcodeTable &tab;
  std::int64_t cost = 0;
  bool ip_set = false; // control flow handled by the instruction
  std::int64_t ip0 = 0;
  int cp0 = 0;
};
void exec_instr(ExecCtx &ctx, int tok);

struct RingOut {
  enum Kind { AllSolved, Halted, TokenRequest, Budget } kind;
  std::uint32_t req_tape = 0; // id of the requesting tape
};

// round-robin execution under an exact budget: continue while t <= limit,
// one instruction per unsolved task per turn; solved tasks leave the ring
RingOut run_ring(std::vector<TaskTape *> &ring, std::size_t &cursor,
                 CodeStore &store, const OpcodeTable &table, std::int64_t &t,
                 std::int64_t limit, RunStats *stats);

} // namespace oops

#endif
