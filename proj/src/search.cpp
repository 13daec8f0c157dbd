#include "oops/search.hpp"

#include <algorithm>
#include <limits>

namespace oops {

std::int64_t budget_limit(const mpq_class &P, std::int64_t T) {
  mpz_class lim = (P.get_num() * T) / P.get_den(); // P, T > 0 so this floors
  if (!lim.fits_slong_p())
    return std::numeric_limits<std::int64_t>::max();
  return lim.get_si();
}

static bool is_bias_op(int tok) {
  return tok == op::kBoostq || tok == op::kIncQ || tok == op::kDecQ ||
         tok == op::kPupat || tok == op::kSetpat;
}

std::vector<std::pair<int, mpq_class>>
Searcher::enumerate(const TaskTape &req) const {
  const Layout &lay = *req.lay;
  int row = int(req.curp());
  std::int64_t sum = req.rd(lay.pat_sum(row));
  std::vector<std::pair<int, mpq_class>> out;
  if (sum <= 0)
    return out;
  for (int tok = 1; tok <= tab_.n_q; ++tok) {
    if (filter_bias_ops && is_bias_op(tok))
      continue;
    std::int64_t num = req.rd(lay.pat_num(row, tok));
    if (num <= 0)
      continue;
    mpq_class p(num, sum);
    p.canonicalize();
    out.emplace_back(tok, std::move(p));
  }
  // most probable first, ties broken by the lower opcode (stable sort over
  // the ascending opcode order)
  std::stable_sort(out.begin(), out.end(),
                   [](const std::pair<int, mpq_class> &a,
                      const std::pair<int, mpq_class> &b) {
                     return a.second > b.second;
                   });
  return out;
}

TryResult Searcher::try_search(const std::vector<std::uint32_t> &ring_ids,
                               std::int64_t t0, const mpq_class &P0,
                               std::int64_t T, RunStats &stats) {
  TryResult res;
  const std::size_t root_wm = jr_.mark();
  const std::int64_t qp_entry = store_.qp;

  std::vector<TaskTape *> ring;
  for (std::uint32_t id : ring_ids)
    ring.push_back(&tapes_[id]);
  std::size_t cursor = 0;
  std::int64_t t = t0;
  mpq_class P = P0;
  std::int64_t limit = budget_limit(P, T);

  // one entry per pending prolongation point along the current path
  struct Node {
    mpq_class P;
    std::size_t wm = 0;
    std::int64_t t_req = 0, qp_req = 0;
    std::vector<TaskTape *> ring;
    std::size_t cursor = 0;
    std::vector<std::pair<int, mpq_class>> order;
    std::size_t next = 0;
  };
  std::vector<Node> nodes;

  bool descending = true;
  while (true) {
    if (descending) {
      std::int64_t t_before = t;
      RingOut out = run_ring(ring, cursor, store_, tab_, t, limit, &stats);
      res.charged += t - t_before;
      if (out.kind == RingOut::AllSolved) {
        res.success = true;
        res.extent = Program{qp_entry + 1, store_.qp};
        jr_.rollback(root_wm, tapes_); // state restored even on success
        return res;
      }
      if (out.kind == RingOut::TokenRequest) {
        Node nd;
        nd.P = P;
        nd.wm = jr_.mark();
        nd.t_req = t;
        nd.qp_req = store_.qp;
        nd.ring = ring;
        nd.cursor = cursor;
        nd.order = enumerate(tapes_[out.req_tape]);
        nodes.push_back(std::move(nd));
      } else if (out.kind == RingOut::Budget) {
        ++abandoned;
        if (t <= limit)
          ++stats.abandon_bad; // must never happen
      }
      descending = false;
      continue;
    }

    // resume the deepest prolongation point that still has untried tokens
    while (!nodes.empty()) {
      Node &nd = nodes.back();
      jr_.rollback(nd.wm, tapes_);
      store_.qp = nd.qp_req;
      while (nd.next < nd.order.size()) {
        const auto &cand = nd.order[nd.next++];
        mpq_class cP = nd.P * cand.second;
        std::int64_t climit = budget_limit(cP, T);
        if (climit < nd.t_req) {
          ++abandoned; // would exceed its ceiling before running at all
          continue;
        }
        store_.poke(nd.qp_req + 1, std::int32_t(cand.first));
        ring = nd.ring;
        cursor = nd.cursor;
        t = nd.t_req;
        P = std::move(cP);
        limit = climit;
        descending = true;
        break;
      }
      if (descending)
        break;
      nodes.pop_back();
    }
    if (!descending && nodes.empty()) {
      jr_.rollback(root_wm, tapes_);
      store_.qp = qp_entry;
      return res;
    }
  }
}

ForcedOut Searcher::forced_run(const std::vector<std::uint32_t> &ring_ids,
                               std::int64_t t0, const std::vector<int> &tokens,
                               std::int64_t step_cap) {
  ForcedOut out;
  const std::size_t root_wm = jr_.mark();
  const std::int64_t qp_entry = store_.qp;

  std::vector<TaskTape *> ring;
  for (std::uint32_t id : ring_ids)
    ring.push_back(&tapes_[id]);
  std::size_t cursor = 0;
  std::int64_t t = t0;

  while (true) {
    RingOut r = run_ring(ring, cursor, store_, tab_, t, step_cap, nullptr);
    if (r.kind == RingOut::AllSolved) {
      out.all_solved = true;
      break;
    }
    if (r.kind == RingOut::Halted) {
      out.halted = true;
      break;
    }
    if (r.kind == RingOut::Budget)
      break;
    if (out.consumed >= tokens.size())
      break;
    const TaskTape &req = tapes_[r.req_tape];
    const Layout &lay = *req.lay;
    int row = int(req.curp());
    int tok = tokens[out.consumed++];
    mpq_class p(req.rd(lay.pat_num(row, tok)), req.rd(lay.pat_sum(row)));
    p.canonicalize();
    out.prob *= p;
    store_.poke(store_.qp + 1, std::int32_t(tok));
  }
  out.t = t;
  jr_.rollback(root_wm, tapes_);
  store_.qp = qp_entry;
  return out;
}

} // namespace oops
