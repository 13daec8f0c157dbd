#include "oops/presets.hpp"

namespace oops {

std::vector<int> onetwon_starter_tokens() { return {op::kDefnp, op::k2toD}; }

std::vector<int> onetwon_solver_tokens() {
  return {op::kDefnp, op::kC1, op::kCalltp, op::kC2, op::kEndnp};
}

std::vector<int> hanoi_solver_tokens() {
  return {op::kC3,     op::kDec, op::kBoostq, op::kDefnp, op::kC4,
          op::kCalltp, op::kC3,  op::kC5,     op::kCalltp, op::kEndnp};
}

std::vector<int> hanoi_suffix_tokens() {
  std::vector<int> full = hanoi_solver_tokens();
  return std::vector<int>(full.begin() + 3, full.end());
}

void preload_solvers(Engine &e) {
  CodeStore &st = e.store;
  for (int tok : onetwon_starter_tokens())
    st.poke(st.qp + 1, std::int32_t(tok));
  st.freeze(st.qp);
  st.note_a_last(st.a_frozen + 1);
  for (int tok : onetwon_solver_tokens())
    st.poke(st.qp + 1, std::int32_t(tok));
  st.freeze(st.qp);
}

ForcedOut forced_probability(Engine &e, Suite s, int n,
                             const std::vector<int> &boosts,
                             const std::vector<int> &tokens) {
  e.begin_suite(s, boosts);
  std::uint32_t id = e.add_instance(n);
  std::size_t wm = e.jr.mark();
  e.tapes[id].wr(e.lay.cs_ip(0), e.store.qp + 1);
  ForcedOut out = e.searcher.forced_run({id}, 0, tokens, 1LL << 40);
  e.jr.rollback(wm, e.tapes);
  return out;
}

} // namespace oops
