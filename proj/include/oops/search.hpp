#ifndef OOPS_SEARCH_HPP
#define OOPS_SEARCH_HPP

#include <cstdint>
#include <gmpxx.h>
#include <utility>
#include <vector>

#include "oops/interp.hpp"
#include "oops/state.hpp"
#include "oops/table.hpp"

namespace oops {

// exact time ceiling floor(P * T) as int64, clamped at the type maximum
std::int64_t budget_limit(const mpq_class &P, std::int64_t T);

struct TryResult {
  bool success = false;
  Program extent{0, 0};     // tokens kept in q on success (may be empty)
  std::int64_t charged = 0; // total time charged across all explored branches
};

// forced replay of a fixed token sequence: at every prolongation request the
// next listed token is supplied and its probability under the requester's
// current pattern is multiplied in
struct ForcedOut {
  mpq_class prob = 1;
  std::size_t consumed = 0;
  bool all_solved = false;
  bool halted = false;
  std::int64_t t = 0;
};

class Searcher {
public:
  Searcher(CodeStore &store, const OpcodeTable &table, Journal &journal,
           std::vector<TaskTape> &tapes)
      : store_(store), tab_(table), jr_(journal), tapes_(tapes) {}

  // depth-first backtracking over prolongations of the code at q[qp+1..]:
  // runs the ring from its current state, branching on every token request,
  // abandoning a branch exactly when t exceeds floor(P * T); restores all
  // tape state afterwards, keeps the written tokens only on success
  TryResult try_search(const std::vector<std::uint32_t> &ring_ids,
                       std::int64_t t0, const mpq_class &P0, std::int64_t T,
                       RunStats &stats);

  ForcedOut forced_run(const std::vector<std::uint32_t> &ring_ids,
                       std::int64_t t0, const std::vector<int> &tokens,
                       std::int64_t step_cap);

  // exclude the search-bias editing opcodes from enumeration (the
  // no-incremental-learning reference searcher uses this)
  bool filter_bias_ops = false;

  std::int64_t abandoned = 0; // branches dropped at the budget boundary

private:
  std::vector<std::pair<int, mpq_class>> enumerate(const TaskTape &req) const;

  CodeStore &store_;
  const OpcodeTable &tab_;
  Journal &jr_;
  std::vector<TaskTape> &tapes_;
};

} // namespace oops

#endif
