#ifndef OOPS_STATE_HPP
#define OOPS_STATE_HPP

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace oops {

// thrown when the running prefix does something illegal; the stepper turns
// it into a halted outcome, never a process fault
struct HaltPrefix {};

// internal programming errors (bad watermark, frozen-code write from the
// engine itself); not part of the search semantics
struct InternalFault {
  const char *what;
};

constexpr std::int64_t kMaxCellValue = 1000000000; // |s_i| bound
constexpr int kMaxDp = 200;
constexpr int kMaxDDp = 200; // Ds
constexpr int kMaxCp = 100;
constexpr int kMaxFnp = 100;
constexpr int kMaxPatp = 20;
constexpr int kEnvCap = 104;

// scalar registers, one markable cell each
enum ScalarCell {
  C_DP = 0,
  C_DDP = 1, // Dp
  C_CP = 2,
  C_FNP = 3,
  C_PATP = 4,
  C_CURP = 5,
  C_QUOTE = 6,
  C_TASK = 7,
  C_SOLVED = 8,
  C_IDLE = 9,
  kNumScalars = 10
};

// dense cell layout of one task tape, parameterized by the token-set size
// (pattern rows store nq numerators plus the cached sum)
struct Layout {
  int nq = 0;
  int off_cs = 0, off_fns = 0, off_pats = 0, off_Ds = 0, off_env = 0,
      off_ds = 0;
  int ncells = 0;

  Layout() = default;
  explicit Layout(int n_q) : nq(n_q) {
    off_cs = kNumScalars;
    off_fns = off_cs + 3 * (kMaxCp + 1);
    off_pats = off_fns + 3 * kMaxFnp;
    off_Ds = off_pats + (kMaxPatp + 1) * (nq + 1);
    off_env = off_Ds + kMaxDDp + 1;
    off_ds = off_env + kEnvCap;
    ncells = off_ds + kMaxDp + 1;
  }

  int cs_ip(int k) const { return off_cs + 3 * k; }
  int cs_base(int k) const { return off_cs + 3 * k + 1; }
  int cs_out(int k) const { return off_cs + 3 * k + 2; }
  // self-made function entries, 1-based name
  int fn_code(int k) const { return off_fns + 3 * (k - 1); }
  int fn_in(int k) const { return off_fns + 3 * (k - 1) + 1; }
  int fn_out(int k) const { return off_fns + 3 * (k - 1) + 2; }
  int pat_sum(int i) const { return off_pats + i * (nq + 1); }
  int pat_num(int i, int tok) const { return off_pats + i * (nq + 1) + tok; }
  int Ds(int j) const { return off_Ds + j; }
  int env(int j) const { return off_env + j; }
  int ds(int j) const { return off_ds + j; }

  // tape address space: address 0 is the last cell, negative addresses reach
  // deeper cells; the ds block sits last so ds[j] has address j - kMaxDp
  int addr_of_cell(int c) const { return c - (ncells - 1); }
  int cell_of_addr(int a) const { return a + (ncells - 1); }
};

class TaskTape;

// global trail of (tape, cell, old value); marks are epoch stamps per tape
// so clearing all marks is a counter bump
struct Journal {
  struct Entry {
    std::uint32_t tape;
    std::uint32_t cell;
    std::int64_t old;
  };
  std::vector<Entry> trail;
  std::uint64_t epoch = 1;

  std::size_t watermark() const { return trail.size(); }
  void unmark() { ++epoch; }
  // a restore point: cells dirtied before it must journal again after it
  std::size_t mark() {
    ++epoch;
    return trail.size();
  }
  void rollback(std::size_t to, std::vector<TaskTape> &tapes);
};

enum class Suite { onetwon, hanoi, planted };

// one task's whole mutable state as a flat cell vector
class TaskTape {
public:
  const Layout *lay = nullptr;
  std::vector<std::int64_t> cells;
  std::vector<std::uint64_t> stamps;
  Journal *jr = nullptr;
  std::uint32_t id = 0;

  Suite suite = Suite::onetwon;
  int inst_n = 0;                  // instance size
  std::vector<int> planted_goal;   // planted suite target sequence
  std::int64_t mvdsk_count = 0;    // replay reporting only, not journaled
  std::int64_t init_writes = 0;    // cells written by init_task

  void attach(const Layout &l, Journal *j, std::uint32_t tape_id) {
    lay = &l;
    jr = j;
    id = tape_id;
    cells.assign(l.ncells, 0);
    stamps.assign(l.ncells, 0);
  }

  std::int64_t rd(int c) const { return cells[std::size_t(c)]; }

  // journaled, range-checked write: every mutation during a prefix run goes
  // through here
  void wr(int c, std::int64_t v) {
    if (v > kMaxCellValue || v < -kMaxCellValue)
      throw HaltPrefix{};
    auto uc = std::size_t(c);
    if (stamps[uc] != jr->epoch) {
      jr->trail.push_back({id, std::uint32_t(c), cells[uc]});
      stamps[uc] = jr->epoch;
    }
    cells[uc] = v;
  }

  // init path: permanent writes below every future watermark
  void wr_raw(int c, std::int64_t v) { cells[std::size_t(c)] = v; }

  bool solved() const { return cells[C_SOLVED] != 0; }
  bool idle() const { return cells[C_IDLE] != 0; }
  std::int64_t dp() const { return cells[C_DP]; }
  std::int64_t Dp() const { return cells[C_DDP]; }
  std::int64_t cp() const { return cells[C_CP]; }
  std::int64_t fnp() const { return cells[C_FNP]; }
  std::int64_t patp() const { return cells[C_PATP]; }
  std::int64_t curp() const { return cells[C_CURP]; }
  std::int64_t ip() const { return cells[std::size_t(lay->cs_ip(int(cp())))]; }
};

inline void Journal::rollback(std::size_t to, std::vector<TaskTape> &tapes) {
  if (to > trail.size())
    throw InternalFault{"rollback above trail top"};
  for (std::size_t i = trail.size(); i > to; --i) {
    const Entry &e = trail[i - 1];
    tapes[e.tape].cells[e.cell] = e.old;
  }
  trail.resize(to);
  ++epoch;
}

// frozen or in-progress program extent in q, inclusive addresses
struct Program {
  std::int64_t start = 0;
  std::int64_t end = 0; // inclusive
  std::int64_t size() const { return end - start + 1; }
};

// the append-only global code q with the freezing bookkeeping
struct CodeStore {
  std::vector<std::int32_t> q; // q[0] unused
  std::int64_t qp = 0;         // highest used address
  std::int64_t a_frozen = 0;   // top frozen address
  std::int64_t a_last = 1;     // start of most recent all-task solver

  std::vector<Program> decl_progs;   // user-declared bodies
  std::vector<Program> closed_progs; // self-discovered, closed by a_last moves

  CodeStore() : q(1, 0) {}

  std::int32_t at(std::int64_t i) const {
    return q[std::size_t(i)]; // caller guarantees 1 <= i <= qp
  }

  // scratch writes by the searcher, always above the frozen region
  void poke(std::int64_t i, std::int32_t tok) {
    if (i <= a_frozen)
      throw InternalFault{"write into frozen code"};
    if (std::size_t(i) >= q.size())
      q.resize(std::size_t(i) + 1, 0);
    q[std::size_t(i)] = tok;
    if (i > qp)
      qp = i;
  }

  void freeze(std::int64_t new_top) {
    if (new_top < a_frozen)
      throw InternalFault{"a_frozen may not decrease"};
    a_frozen = new_top;
    if (qp < a_frozen)
      qp = a_frozen;
  }

  // self-discovered program list: closed extents plus the open one
  std::int64_t self_count() const {
    return std::int64_t(closed_progs.size()) + (a_last <= a_frozen ? 1 : 0);
  }
  Program self_prog(std::int64_t n) const { // 1-based
    if (n >= 1 && n <= std::int64_t(closed_progs.size()))
      return closed_progs[std::size_t(n - 1)];
    if (n == std::int64_t(closed_progs.size()) + 1 && a_last <= a_frozen)
      return Program{a_last, a_frozen};
    throw HaltPrefix{};
  }

  // combined index: user-declared first, then self-discovered
  std::int64_t combined_count() const {
    return std::int64_t(decl_progs.size()) + self_count();
  }
  Program combined_prog(std::int64_t n) const {
    if (n >= 1 && n <= std::int64_t(decl_progs.size()))
      return decl_progs[std::size_t(n - 1)];
    return self_prog(n - std::int64_t(decl_progs.size()));
  }

  // driver bookkeeping when a fresh-start solver is found: close the open
  // program and start the next one at new_start
  void note_a_last(std::int64_t new_start) {
    if (a_last < new_start)
      closed_progs.push_back(Program{a_last, new_start - 1});
    a_last = new_start;
  }
};

} // namespace oops

#endif
