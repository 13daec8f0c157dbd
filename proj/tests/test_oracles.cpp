#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "helpers.hpp"
#include "oops/io.hpp"
#include "oops/search.hpp"

using namespace oops;

// canonical token numbering, restated independently of the table builder
static const char *kNumbering[] = {
    "",      "1toD", "2toD",  "mvdsk", "xAD",     "xSA",    "bsf",
    "boostq", "add",  "mul",   "powr",  "sub",     "div",    "inc",
    "dec",   "by2",  "getq",  "insq",  "findb",   "incQ",   "decQ",
    "pupat", "setpat", "insn", "mvn",   "deln",    "intpf",  "def",
    "topf",  "dof",  "oldf",  "bsjmp", "ret",     "rt0",    "neg",
    "eq",    "grt",  "clear", "del",   "up",      "ex",     "jmp1",
    "outn",  "inn",  "cpn",   "xmn",   "outb",    "inb",    "cpnb",
    "xmnb",  "ip2ds", "pip",  "pushdp", "dp2ds",  "toD",    "fromD",
    "delD",  "tsk",  "c0",    "c1",    "c2",      "c3",     "c4",
    "c5",    "exec", "qot",   "nop",   "fak",     "fak2",   "c999",
    "testexp", "defnp", "calltp", "endnp"};

TEST_CASE("token numbering matches the canonical list") {
  Engine e;
  REQUIRE(e.table.n_q == 73);
  for (int opc = 1; opc <= 73; ++opc)
    CHECK(e.table.names[std::size_t(opc)] == kNumbering[opc]);
  for (int opc = 67; opc <= 73; ++opc)
    CHECK(e.table.is_user(opc));
  CHECK_FALSE(e.table.is_user(66));
}

TEST_CASE("declaration bodies land where the numbering needs them") {
  Engine e;
  // body lengths 10+14+11+10+14+7+12 fill addresses 1..78
  CHECK(e.store.a_frozen == 78);
  CHECK(e.store.a_last == 79);
  CHECK(e.store.qp == 78);
  std::int64_t lens[] = {10, 14, 11, 10, 14, 7, 12};
  REQUIRE(e.store.decl_progs.size() == 7);
  for (std::size_t i = 0; i < 7; ++i)
    CHECK(e.store.decl_progs[i].size() == lens[i]);
  // each declared token's binding points at its own body
  for (int opc = 67; opc <= 73; ++opc)
    CHECK(e.table.user.at(opc).start ==
          e.store.decl_progs[std::size_t(opc - 67)].start);
}

TEST_CASE("aliases resolve") {
  Engine e;
  CHECK(e.table.opcode_of("pushpat") == op::kPupat);
  CHECK(e.table.opcode_of("not") == op::kNeg);
  CHECK(e.table.opcode_of("oldq") == op::kOldf);
  CHECK(e.table.opcode_of("ins") == op::kInsn);
  CHECK(e.table.opcode_of("innb") == op::kInb);
  CHECK(e.table.opcode_of("intopf") == op::kIntpf);
  CHECK_THROWS_AS((void)e.table.opcode_of("bogus"), InternalFault);
}

// independent closed-form recursion oracle for the disk-moving task
namespace {
struct Pegs {
  std::vector<int> peg[4];
};
} // namespace

TEST_CASE("reference move list is legal, optimal and complete") {
  for (int n = 1; n <= 8; ++n) {
    auto moves = reference_hanoi(n);
    CHECK(std::int64_t(moves.size()) == (std::int64_t(1) << n) - 1);
    Pegs st;
    for (int d = n; d >= 1; --d)
      st.peg[1].push_back(d);
    for (auto [from, to] : moves) {
      REQUIRE(!st.peg[from].empty());
      int disk = st.peg[from].back();
      REQUIRE((st.peg[to].empty() || st.peg[to].back() > disk));
      st.peg[from].pop_back();
      st.peg[to].push_back(disk);
    }
    CHECK(st.peg[1].empty());
    CHECK(st.peg[2].empty());
    CHECK(std::int64_t(st.peg[3].size()) == n);
  }
}

// the three probability anchors, exact rational arithmetic on both sides
static mpq_class qpow(const mpq_class &b, int e) {
  mpq_class r = 1;
  for (int i = 0; i < e; ++i)
    r *= b;
  return r;
}

TEST_CASE("probability anchors are exactly the closed-form products") {
  mpq_class a_pre(74, 511), a_post(74, 876);
  mpq_class anchorA = qpow(a_pre, 3) * qpow(a_post, 7);
  mpq_class anchorB = qpow(a_pre, 3) * qpow(mpq_class(1, 511), 4);
  mpq_class anchorC = qpow(mpq_class(1, 73), 7);

  {
    Engine e;
    preload_solvers(e);
    ForcedOut f = forced_probability(e, Suite::hanoi, 1,
                                     suite_boosts(Suite::hanoi),
                                     hanoi_solver_tokens());
    CHECK(f.consumed == 10);
    CHECK(f.all_solved);
    CHECK(f.prob == anchorA);
    CHECK(std::abs(f.prob.get_d() - 9.3e-11) / 9.3e-11 < 0.01);
  }
  {
    Engine e;
    preload_solvers(e);
    ForcedOut f = forced_probability(e, Suite::hanoi, 1,
                                     suite_boosts(Suite::hanoi),
                                     hanoi_suffix_tokens());
    CHECK(f.consumed == 7);
    CHECK(f.prob == anchorB);
    // the published rounding sits just over 1% from the exact value; the
    // acceptance gate reports this one as an expected miss
    double rel = std::abs(f.prob.get_d() - 4.5e-14) / 4.5e-14;
    CHECK(rel < 0.011);
    CHECK(rel > 0.01);
  }
  {
    Engine e;
    preload_solvers(e);
    ForcedOut f =
        forced_probability(e, Suite::hanoi, 1, {}, hanoi_suffix_tokens());
    CHECK(f.consumed == 7);
    CHECK(f.prob == anchorC);
    CHECK(std::abs(f.prob.get_d() - 9e-14) / 9e-14 < 0.01);
  }
}

TEST_CASE("initial boost sums") {
  Engine e;
  e.begin_suite(Suite::onetwon, suite_boosts(Suite::onetwon));
  std::uint32_t a = e.add_instance(1);
  CHECK(e.tapes[a].rd(e.lay.pat_sum(0)) == 73 + 5 * 73); // 438
  e.begin_suite(Suite::hanoi, suite_boosts(Suite::hanoi));
  std::uint32_t b = e.add_instance(1);
  CHECK(e.tapes[b].rd(e.lay.pat_sum(0)) == 73 + 6 * 73); // 511
  for (int tok : suite_boosts(Suite::hanoi))
    CHECK(e.tapes[b].rd(e.lay.pat_num(0, tok)) == 74);
}

TEST_CASE("budget ceiling is the exact floor of P*T") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(1, 1000000000000LL);
  for (int i = 0; i < 5000; ++i) {
    std::int64_t n = num(rng), d = num(rng), T = num(rng) % 100000000 + 1;
    mpq_class P(n, d);
    P.canonicalize();
    std::int64_t lim = budget_limit(P, T);
    // floor property: lim <= P*T < lim + 1
    mpq_class PT = P * T;
    CHECK(mpq_class(lim) <= PT);
    CHECK(PT < mpq_class(lim + 1));
  }
}

TEST_CASE("doubling schedule") {
  // the driver's budgets are exactly 2, 4, 8, ... and abandonment happens
  // strictly beyond floor(P*T)
  Engine e;
  e.begin_suite(Suite::planted, {});
  e.add_instance(1, {9, 9, 9, 9});
  PhaseRec rec = e.solve_next(16); // unsolvable goal at tiny budget
  CHECK(rec.branch == 0);
  CHECK(rec.T_final == 16);
  CHECK(rec.stats.abandon_bad == 0);
}
