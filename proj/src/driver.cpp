#include "oops/driver.hpp"

namespace oops {

std::vector<int> suite_boosts(Suite s) {
  switch (s) {
  case Suite::onetwon:
    return {op::kC1, op::kC2, op::kBy2, op::kDec, op::kBoostq};
  case Suite::hanoi:
    return {op::kC3, op::kC4, op::kC5, op::kBy2, op::kDec, op::kBoostq};
  case Suite::planted:
    return {};
  }
  return {};
}

const char *suite_name(Suite s) {
  switch (s) {
  case Suite::onetwon:
    return "onetwon";
  case Suite::hanoi:
    return "hanoi";
  case Suite::planted:
    return "planted";
  }
  return "?";
}

bool suite_from_name(const std::string &name, Suite &out) {
  if (name == "onetwon")
    out = Suite::onetwon;
  else if (name == "hanoi")
    out = Suite::hanoi;
  else if (name == "planted")
    out = Suite::planted;
  else
    return false;
  return true;
}

Engine::Engine()
    : table(make_standard_table(store)), lay(table.n_q),
      searcher(store, table, jr, tapes) {}

void Engine::begin_suite(Suite s, const std::vector<int> &boosts) {
  cur_suite = s;
  cur_boosts_ = boosts;
  cur_ring.clear();
}

std::uint32_t Engine::add_instance(int n, const std::vector<int> &goal) {
  std::uint32_t id = std::uint32_t(tapes.size());
  tapes.emplace_back();
  tapes.back().attach(lay, &jr, id);
  init_task(tapes.back(), cur_suite, n, cur_boosts_, goal);
  cur_ring.push_back(id);
  return id;
}

std::vector<int> Engine::extract_tokens(const Program &p) const {
  std::vector<int> out;
  for (std::int64_t a = p.start; a <= p.end; ++a)
    out.push_back(store.at(a));
  return out;
}

PhaseRec Engine::solve_next(std::int64_t T_cap) {
  PhaseRec rec;
  rec.suite = cur_suite;
  std::uint32_t newest = cur_ring.back();
  rec.n = tapes[newest].inst_n;

  std::int64_t init_all = 0;
  for (std::uint32_t id : cur_ring)
    init_all += tapes[id].init_writes;
  std::vector<std::uint32_t> ring2 =
      reduced ? std::vector<std::uint32_t>{newest} : cur_ring;
  std::int64_t init2 = reduced ? tapes[newest].init_writes : init_all;

  const mpq_class half(1, 2);
  const std::int64_t prev_a_frozen = store.a_frozen;

  for (std::int64_t T = 2; T_cap <= 0 || T <= T_cap; T *= 2) {
    if (stop_flag && *stop_flag)
      break;
    rec.T_final = T;

    { // prolong the open program on the new task alone
      std::size_t wm = jr.mark();
      tapes[newest].wr(lay.cs_ip(0), store.a_last);
      TryResult r = searcher.try_search({newest}, 0, half, T, rec.stats);
      jr.rollback(wm, tapes);
      rec.charged += r.charged;
      total_charged += r.charged;
      if (r.success) {
        store.freeze(store.qp);
        rec.branch = 1;
        rec.prog = Program{store.a_last, store.a_frozen};
        rec.tokens = extract_tokens(rec.prog);
        if (on_phase)
          on_phase(rec);
        return rec;
      }
    }

    if (init2 <= T) { // fresh program over the whole ring
      std::size_t wm = jr.mark();
      for (std::uint32_t id : ring2)
        tapes[id].wr(lay.cs_ip(0), store.a_frozen + 1);
      TryResult r = searcher.try_search(ring2, init2, half, T, rec.stats);
      jr.rollback(wm, tapes);
      rec.charged += r.charged;
      total_charged += r.charged;
      if (r.success) {
        store.note_a_last(prev_a_frozen + 1);
        store.freeze(store.qp);
        rec.branch = 2;
        rec.prog = Program{store.a_last, store.a_frozen};
        rec.tokens = extract_tokens(rec.prog);
        if (on_phase)
          on_phase(rec);
        return rec;
      }
    }

    if (ceiling > 0 && total_charged > ceiling)
      break;
  }
  rec.branch = 0;
  if (on_phase)
    on_phase(rec);
  return rec;
}

PhaseRec Engine::lsearch_single(std::int64_t T_cap) {
  PhaseRec rec;
  rec.suite = cur_suite;
  std::uint32_t newest = cur_ring.back();
  rec.n = tapes[newest].inst_n;

  const std::int64_t qp_entry = store.qp;
  searcher.filter_bias_ops = true;
  for (std::int64_t T = 2; T_cap <= 0 || T <= T_cap; T *= 2) {
    if (stop_flag && *stop_flag)
      break;
    rec.T_final = T;
    std::size_t wm = jr.mark();
    tapes[newest].wr(lay.cs_ip(0), store.a_frozen + 1);
    TryResult r = searcher.try_search({newest}, 0, mpq_class(1), T, rec.stats);
    jr.rollback(wm, tapes);
    rec.charged += r.charged;
    total_charged += r.charged;
    if (r.success) {
      rec.branch = 2;
      rec.tokens = extract_tokens(r.extent);
      store.qp = qp_entry; // nothing is kept or frozen here
      break;
    }
    if (ceiling > 0 && total_charged > ceiling)
      break;
  }
  searcher.filter_bias_ops = false;
  return rec;
}

ReplayOut Engine::replay(const Program &p, std::uint32_t tape_id,
                         std::int64_t cap) {
  ReplayOut out;
  std::size_t wm = jr.mark();
  TaskTape &tp = tapes[tape_id];
  std::int64_t mv0 = tp.mvdsk_count;
  tp.wr(lay.cs_ip(0), p.start);
  std::vector<TaskTape *> ring{&tp};
  std::size_t cursor = 0;
  std::int64_t t = 0;
  RunStats st;
  RingOut r = run_ring(ring, cursor, store, table, t, cap, &st);
  out.solved = r.kind == RingOut::AllSolved;
  out.steps = st.executed;
  out.t = t;
  out.mvdsk = tp.mvdsk_count - mv0;
  jr.rollback(wm, tapes);
  return out;
}

} // namespace oops
