#ifndef OOPS_DRIVER_HPP
#define OOPS_DRIVER_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "oops/search.hpp"
#include "oops/tasks.hpp"

namespace oops {

// default boost sets applied to the initial pattern of each suite
std::vector<int> suite_boosts(Suite s);
const char *suite_name(Suite s);
bool suite_from_name(const std::string &name, Suite &out);

struct PhaseRec {
  Suite suite = Suite::onetwon;
  int n = 0;
  int branch = 0; // 1 = prolonged the open program, 2 = fresh start, 0 = no
  std::int64_t T_final = 0;
  std::int64_t charged = 0; // time charged to this task's whole search
  RunStats stats;
  Program prog{0, 0};      // solver extent in q (frozen searches only)
  std::vector<int> tokens; // the solver's tokens
};

struct ReplayOut {
  bool solved = false;
  std::int64_t steps = 0;
  std::int64_t t = 0;
  std::int64_t mvdsk = 0;
};

// owns the code, the tapes and the searcher; tasks are added per suite and
// solved strictly in order
class Engine {
public:
  Engine();

  // drops the previous suite's ring; instance tapes keep their ids
  void begin_suite(Suite s, const std::vector<int> &boosts);
  std::uint32_t add_instance(int n, const std::vector<int> &goal = {});

  // budget-doubling driver for the newest instance: per doubling, first try
  // to prolong the open program on the new task alone, then a fresh program
  // over the whole current ring, each with half the probability mass
  PhaseRec solve_next(std::int64_t T_cap);

  // non-incremental reference: newest task only, full probability mass,
  // nothing frozen, bias-editing opcodes excluded
  PhaseRec lsearch_single(std::int64_t T_cap);

  // runs stored code on one instance tape from p.start until it solves,
  // halts, asks for tokens, or exceeds the cap; tape state restored
  ReplayOut replay(const Program &p, std::uint32_t tape_id, std::int64_t cap);

  bool reduced = false;            // fresh-start ring = newest task only
  std::int64_t total_charged = 0;  // cumulative over all searches
  std::int64_t ceiling = 0;        // stop doubling when exceeded; 0 = none
  const volatile int *stop_flag = nullptr; // external interrupt request
  std::function<void(const PhaseRec &)> on_phase; // trace sink

  CodeStore store;
  OpcodeTable table;
  Layout lay;
  Journal jr;
  std::vector<TaskTape> tapes;
  std::vector<std::uint32_t> cur_ring; // current suite's instance ids
  Suite cur_suite = Suite::onetwon;
  Searcher searcher;

private:
  std::vector<int> cur_boosts_;
  std::vector<int> extract_tokens(const Program &p) const;
};

} // namespace oops

#endif
