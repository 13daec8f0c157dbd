#ifndef OOPS_TEST_HELPERS_HPP
#define OOPS_TEST_HELPERS_HPP

#include <sstream>
#include <string>
#include <vector>

#include "oops/driver.hpp"
#include "oops/presets.hpp"

namespace oops::testing {

// one engine plus one instance tape; the planted default never solves from
// plain data-stack work, so interpreter tests can run any code safely
struct Fixture {
  Engine e;
  std::uint32_t id;

  explicit Fixture(Suite s = Suite::planted, int n = 1,
                   std::vector<int> goal = {9, 9, 9, 9},
                   std::vector<int> boosts = {}, bool with_solvers = false) {
    if (with_solvers)
      preload_solvers(e);
    e.begin_suite(s, boosts);
    id = e.add_instance(n, goal);
  }

  TaskTape &tp() { return e.tapes[id]; }

  std::vector<int> toks(const std::string &names) const {
    std::istringstream in(names);
    std::string w;
    std::vector<int> out;
    while (in >> w)
      out.push_back(e.table.opcode_of(w));
    return out;
  }

  std::int64_t last_t = 0; // charged time of the last run

  // appends the tokens as scratch code and runs the instance from its first
  // token; state is left in place for inspection
  RingOut::Kind run(const std::vector<int> &tokens,
                    std::int64_t cap = 10000000) {
    std::int64_t start = e.store.qp + 1;
    for (int tok : tokens)
      e.store.poke(e.store.qp + 1, std::int32_t(tok));
    tp().wr(e.lay.cs_ip(0), start);
    std::vector<TaskTape *> ring{&tp()};
    std::size_t cursor = 0;
    std::int64_t t = 0;
    RingOut::Kind k = run_ring(ring, cursor, e.store, e.table, t, cap, nullptr).kind;
    last_t = t;
    return k;
  }

  RingOut::Kind run(const std::string &names, std::int64_t cap = 10000000) {
    return run(toks(names), cap);
  }

  std::vector<std::int64_t> stack() {
    std::vector<std::int64_t> out;
    for (int j = 1; j <= int(tp().dp()); ++j)
      out.push_back(tp().rd(e.lay.ds(j)));
    return out;
  }

  void push_inputs(const std::vector<std::int64_t> &vals) {
    for (std::int64_t v : vals) {
      std::int64_t dp = tp().dp();
      tp().wr(e.lay.ds(int(dp) + 1), v);
      tp().wr(C_DP, dp + 1);
    }
  }
};

// store as a finished two-suite run leaves it: the two list solvers plus the
// recursive disk-moving program, all frozen
inline Program preload_all_solvers(Engine &e) {
  preload_solvers(e);
  e.store.note_a_last(e.store.a_frozen + 1);
  Program p{e.store.qp + 1, 0};
  for (int tok : hanoi_solver_tokens())
    e.store.poke(e.store.qp + 1, std::int32_t(tok));
  e.store.freeze(e.store.qp);
  p.end = e.store.qp;
  return p;
}

} // namespace oops::testing

#endif
