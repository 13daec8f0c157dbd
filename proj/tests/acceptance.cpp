// acceptance gate: one line per criterion, nonzero exit if any hard
// criterion fails; the one documented expected miss is reported but does
// not fail the gate
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oops/io.hpp"
#include "oops/presets.hpp"

using namespace oops;

namespace {

int g_failures = 0;

void report(const std::string &name, bool pass, const std::string &detail) {
  std::printf("%-52s %s  %s\n", name.c_str(), pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass)
    ++g_failures;
}

void note(const std::string &name, const std::string &detail) {
  std::printf("%-52s XFAIL %s\n", name.c_str(), detail.c_str());
}

double secs_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// ---- criterion 1: token numbering -----------------------------------------

const char *kNumbering[] = {
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

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  Engine e;
  bool ok = e.table.n_q == 73;
  for (int opc = 1; ok && opc <= 73; ++opc)
    ok = e.table.names[std::size_t(opc)] == kNumbering[opc];
  double dt = secs_since(t0);
  report("1 token numbering matches the canonical list", ok && dt < 1.0,
         "73 tokens, " + std::to_string(dt) + "s");
}

// ---- criterion 2: probability anchors -------------------------------------

mpq_class frac(long n, long d) {
  mpq_class r(n, d);
  r.canonicalize();
  return r;
}

mpq_class qpow(const mpq_class &b, int e) {
  mpq_class r = 1;
  for (int i = 0; i < e; ++i)
    r *= b;
  return r;
}

void criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  mpq_class wantA = qpow(frac(74, 511), 3) * qpow(frac(74, 876), 7);
  mpq_class wantB = qpow(frac(74, 511), 3) * qpow(frac(1, 511), 4);
  mpq_class wantC = qpow(frac(1, 73), 7);

  Engine ea;
  preload_solvers(ea);
  ForcedOut fa = forced_probability(ea, Suite::hanoi, 1,
                                    suite_boosts(Suite::hanoi),
                                    hanoi_solver_tokens());
  Engine eb;
  preload_solvers(eb);
  ForcedOut fb = forced_probability(eb, Suite::hanoi, 1,
                                    suite_boosts(Suite::hanoi),
                                    hanoi_suffix_tokens());
  Engine ec;
  preload_solvers(ec);
  ForcedOut fc =
      forced_probability(ec, Suite::hanoi, 1, {}, hanoi_suffix_tokens());

  double relA = std::abs(fa.prob.get_d() - 9.3e-11) / 9.3e-11;
  double relB = std::abs(fb.prob.get_d() - 4.5e-14) / 4.5e-14;
  double relC = std::abs(fc.prob.get_d() - 9e-14) / 9e-14;
  bool ok = fa.prob == wantA && relA < 0.01 && fb.prob == wantB &&
            fc.prob == wantC && relC < 0.01;
  double dt = secs_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.4e / %.4e / %.4e, %.2fs",
                fa.prob.get_d(), fb.prob.get_d(), fc.prob.get_d(), dt);
  report("2 probability anchors, exact rationals", ok && dt < 1.0, buf);
  std::snprintf(buf, sizeof buf,
                "second anchor: exact value is %.2f%% from the rounded "
                "4.5e-14, outside the 1%% window for any implementation",
                relB * 100);
  note("2x second anchor inside 1% of its rounding", buf);
}

// ---- criterion 3: solver replay -------------------------------------------

void criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  Engine e;
  Program hp = oops::testing::preload_all_solvers(e);
  Program solver = e.store.closed_progs[1];

  bool ok = true;
  std::string detail;
  e.begin_suite(Suite::onetwon, suite_boosts(Suite::onetwon));
  for (int n = 1; n <= 30 && ok; ++n) {
    std::uint32_t id = e.add_instance(n);
    ok = e.replay(solver, id, 1 << 26).solved;
    if (!ok)
      detail = "list solver failed at n=" + std::to_string(n);
  }
  e.begin_suite(Suite::hanoi, suite_boosts(Suite::hanoi));
  for (int n = 1; n <= 8 && ok; ++n) {
    std::uint32_t id = e.add_instance(n);
    ReplayOut r = e.replay(hp, id, 1 << 28);
    ok = r.solved && r.mvdsk == (std::int64_t(1) << n) - 1;
    if (!ok)
      detail = "disk solver failed at n=" + std::to_string(n);
  }
  double dt = secs_since(t0);
  if (ok)
    detail = "list n<=30, disks n<=8 with 2^n-1 moves, " +
             std::to_string(dt) + "s";
  report("3 frozen solvers replay on both suites", ok && dt < 60.0, detail);
}

// ---- criteria 4 and 7: search from scratch, budget discipline -------------

void criteria4and7() {
  auto t0 = std::chrono::steady_clock::now();
  Engine e1;
  e1.begin_suite(Suite::onetwon, suite_boosts(Suite::onetwon));
  e1.add_instance(1);
  PhaseRec r1 = e1.solve_next(1LL << 26);
  bool ok1 = r1.branch != 0 && r1.charged <= 5000000 &&
             e1.replay(r1.prog, e1.cur_ring.back(), 1 << 22).solved;

  Engine e2;
  e2.begin_suite(Suite::hanoi, suite_boosts(Suite::hanoi));
  e2.add_instance(1);
  PhaseRec r2 = e2.solve_next(1LL << 26);
  bool ok2 = r2.branch != 0 && r2.charged <= 1000000 &&
             e2.replay(r2.prog, e2.cur_ring.back(), 1 << 22).solved;

  double dt = secs_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "charged %lld and %lld steps, %.2fs",
                (long long)r1.charged, (long long)r2.charged, dt);
  report("4 first instances solved from scratch in budget",
         ok1 && ok2 && dt < 300.0, buf);

  bool disc = true;
  for (const PhaseRec *r : {&r1, &r2}) {
    if (r->stats.abandon_bad != 0)
      disc = false;
    // no path ever runs past its ceiling by more than one instruction
    if (r->stats.max_t > r->T_final / 2 + r->stats.max_single)
      disc = false;
  }
  std::snprintf(buf, sizeof buf,
                "max path t %lld / %lld vs T/2+c %lld / %lld, bad abandons 0",
                (long long)r1.stats.max_t, (long long)r2.stats.max_t,
                (long long)(r1.T_final / 2 + r1.stats.max_single),
                (long long)(r2.T_final / 2 + r2.stats.max_single));
  report("7 budget discipline in the scratch runs", disc, buf);
}

// ---- criterion 5: restoration ----------------------------------------------

void criterion5() {
  auto t0 = std::chrono::steady_clock::now();
  Engine e;
  e.begin_suite(Suite::onetwon, suite_boosts(Suite::onetwon));
  std::uint32_t a = e.add_instance(2);
  e.begin_suite(Suite::hanoi, suite_boosts(Suite::hanoi));
  std::uint32_t b = e.add_instance(3);
  e.begin_suite(Suite::planted, {});
  std::uint32_t c = e.add_instance(1, {2, 1, 2});

  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<int> tok(1, e.table.n_q);
  std::uniform_int_distribution<int> len(1, 8);
  std::uint32_t ids[] = {a, b, c};
  int good = 0, trials = 10000;
  std::int64_t qp0 = e.store.qp;
  for (int i = 0; i < trials; ++i) {
    std::uint32_t id = ids[rng() % 3];
    std::vector<std::int64_t> before = e.tapes[id].cells;
    std::size_t wm = e.jr.mark();
    int L = len(rng);
    for (int j = 0; j < L; ++j)
      e.store.poke(e.store.qp + 1, std::int32_t(tok(rng)));
    e.tapes[id].wr(e.lay.cs_ip(0), qp0 + 1);
    std::vector<TaskTape *> ring{&e.tapes[id]};
    std::size_t cursor = 0;
    std::int64_t t = 0;
    run_ring(ring, cursor, e.store, e.table, t, 500, nullptr);
    e.jr.rollback(wm, e.tapes);
    e.store.qp = qp0;
    if (e.tapes[id].cells == before)
      ++good;
  }
  double dt = secs_since(t0);
  report("5 rollback restores tapes bit-exactly",
         good == trials && dt < 60.0,
         std::to_string(good) + "/" + std::to_string(trials) + " trials, " +
             std::to_string(dt) + "s");
}

// ---- criterion 6: bias-optimality accounting ------------------------------

void criterion6() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(7);
  bool ok = true;
  std::string detail;
  for (int trial = 0; trial < 100 && ok; ++trial) {
    int L = 1 + int(rng() % 2);
    std::vector<int> goal;
    for (int j = 0; j < L; ++j)
      goal.push_back(1 + int(rng() % 2));

    Engine e;
    e.begin_suite(Suite::planted, {});
    std::uint32_t id = e.add_instance(1, goal);

    // the planted program and its exact prior and running cost
    std::int64_t start = e.store.qp + 1;
    for (int g : goal)
      e.store.poke(e.store.qp + 1, g == 1 ? op::k1toD : op::k2toD);
    ReplayOut planted = e.replay(Program{start, e.store.qp}, id, 1 << 20);
    e.store.qp = start - 1;
    if (!planted.solved) {
      ok = false;
      detail = "planted program did not solve its own task";
      break;
    }
    mpq_class P = qpow(frac(1, 73), L);

    PhaseRec r = e.solve_next(1LL << 30);
    if (r.branch == 0) {
      ok = false;
      detail = "task unsolved";
      break;
    }
    int phases = 0;
    for (std::int64_t T = 2; T <= r.T_final; T *= 2)
      ++phases;
    mpq_class bound = 8 * mpq_class(planted.t) / P + 64 * phases;
    if (mpq_class(r.charged) > bound) {
      ok = false;
      detail = "trial " + std::to_string(trial) + ": charged " +
               std::to_string(r.charged) + " above bound";
    }
  }
  double dt = secs_since(t0);
  if (ok)
    detail = "100 planted tasks within 8k/P + 64*phases, " +
             std::to_string(dt) + "s";
  report("6 near-bias-optimal totals on planted tasks", ok && dt < 300.0,
         detail);
}

} // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criteria4and7();
  criterion5();
  criterion6();
  std::printf("%s\n", g_failures == 0 ? "acceptance: all hard criteria pass"
                                      : "acceptance: FAILURES present");
  return g_failures == 0 ? 0 : 1;
}
