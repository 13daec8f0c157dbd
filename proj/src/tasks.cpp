#include "oops/tasks.hpp"

namespace oops {

void init_task(TaskTape &tape, Suite suite, int n,
               const std::vector<int> &boost_opcodes,
               const std::vector<int> &planted_goal) {
  const Layout &lay = *tape.lay;
  std::int64_t writes = 0;
  auto w = [&](int c, std::int64_t v) {
    tape.wr_raw(c, v);
    ++writes;
  };

  tape.suite = suite;
  tape.inst_n = n;
  tape.planted_goal = planted_goal;
  tape.mvdsk_count = 0;

  // main frame
  w(lay.cs_ip(0), 0);
  w(lay.cs_base(0), 0);
  w(lay.cs_out(0), 0);
  w(C_TASK, tape.id);

  // maximum-entropy pattern 0 over the searchable tokens
  w(lay.pat_sum(0), lay.nq);
  for (int i = 1; i <= lay.nq; ++i)
    w(lay.pat_num(0, i), 1);
  for (int opc : boost_opcodes) {
    w(lay.pat_num(0, opc), tape.rd(lay.pat_num(0, opc)) + lay.nq);
    w(lay.pat_sum(0), tape.rd(lay.pat_sum(0)) + lay.nq);
  }

  switch (suite) {
  case Suite::onetwon:
    w(lay.ds(1), n);
    w(C_DP, 1);
    break;
  case Suite::hanoi: {
    w(lay.ds(1), 1);
    w(lay.ds(2), 2);
    w(lay.ds(3), 3);
    w(lay.ds(4), n);
    w(C_DP, 4);
    w(hanoi_top_cell(lay, 1), n);
    w(hanoi_top_cell(lay, 2), 0);
    w(hanoi_top_cell(lay, 3), 0);
    for (int level = 1; level <= n; ++level)
      w(hanoi_disk_cell(lay, n, 1, level), n - level + 1);
    break;
  }
  case Suite::planted: {
    w(lay.env(0), std::int64_t(planted_goal.size()));
    for (std::size_t j = 0; j < planted_goal.size(); ++j)
      w(lay.env(1 + int(j)), planted_goal[j]);
    break;
  }
  }
  tape.init_writes = writes;
}

SolveCheck test_solved(const TaskTape &tape) {
  const Layout &lay = *tape.lay;
  switch (tape.suite) {
  case Suite::hanoi:
    return {tape.rd(hanoi_top_cell(lay, 1)) == 0 &&
                tape.rd(hanoi_top_cell(lay, 2)) == 0,
            1};
  case Suite::onetwon: {
    int n = tape.inst_n;
    std::int64_t Dp = tape.Dp();
    if (Dp < 2 * n)
      return {false, 1};
    // top n cells must be 2's, the n below them 1's; cost counts the
    // inspected cells with early exit
    for (int j = 0; j < 2 * n; ++j) {
      std::int64_t want = j < n ? 2 : 1;
      if (tape.rd(lay.Ds(int(Dp) - j)) != want)
        return {false, j + 1};
    }
    return {true, 2 * n};
  }
  case Suite::planted: {
    int len = int(tape.planted_goal.size());
    std::int64_t Dp = tape.Dp();
    if (Dp < len)
      return {false, 1};
    for (int j = 0; j < len; ++j) {
      if (tape.rd(lay.Ds(int(Dp) - j)) != tape.planted_goal[len - 1 - j])
        return {false, j + 1};
    }
    return {true, len > 0 ? len : 1};
  }
  }
  return {false, 1};
}

static void pattern_delta(TaskTape &tape, const std::vector<int> &opcodes,
                          int sign, bool journaled) {
  const Layout &lay = *tape.lay;
  auto w = [&](int c, std::int64_t v) {
    if (journaled)
      tape.wr(c, v);
    else
      tape.wr_raw(c, v);
  };
  for (int opc : opcodes) {
    w(lay.pat_num(0, opc), tape.rd(lay.pat_num(0, opc)) + sign * lay.nq);
    w(lay.pat_sum(0), tape.rd(lay.pat_sum(0)) + sign * lay.nq);
  }
}

void apply_boosts(TaskTape &tape, const std::vector<int> &opcodes,
                  bool journaled) {
  pattern_delta(tape, opcodes, +1, journaled);
}

void undo_boosts(TaskTape &tape, const std::vector<int> &opcodes,
                 bool journaled) {
  pattern_delta(tape, opcodes, -1, journaled);
}

static void ref_hanoi(int n, int s, int a, int d,
                      std::vector<std::pair<int, int>> &out) {
  if (n == 0)
    return;
  ref_hanoi(n - 1, s, d, a, out);
  out.emplace_back(s, d);
  ref_hanoi(n - 1, a, s, d, out);
}

std::vector<std::pair<int, int>> reference_hanoi(int n) {
  std::vector<std::pair<int, int>> out;
  ref_hanoi(n, 1, 2, 3, out);
  return out;
}

void hanoi_move(TaskTape &tape, int from, int to) {
  const Layout &lay = *tape.lay;
  int n = tape.inst_n;
  if (from < 1 || from > 3 || to < 1 || to > 3)
    throw HaltPrefix{};
  std::int64_t tf = tape.rd(hanoi_top_cell(lay, from));
  if (tf < 1)
    throw HaltPrefix{}; // nothing to move
  std::int64_t disk = tape.rd(hanoi_disk_cell(lay, n, from, int(tf)));
  if (from == to) { // picking up and putting back
    ++tape.mvdsk_count;
    return;
  }
  std::int64_t tt = tape.rd(hanoi_top_cell(lay, to));
  if (tt > 0 && tape.rd(hanoi_disk_cell(lay, n, to, int(tt))) < disk)
    throw HaltPrefix{}; // larger onto smaller
  tape.wr(hanoi_disk_cell(lay, n, to, int(tt) + 1), disk);
  tape.wr(hanoi_top_cell(lay, to), tt + 1);
  tape.wr(hanoi_top_cell(lay, from), tf - 1);
  ++tape.mvdsk_count;
}

} // namespace oops
