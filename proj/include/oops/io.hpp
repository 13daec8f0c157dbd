#ifndef OOPS_IO_HPP
#define OOPS_IO_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "oops/driver.hpp"

namespace oops {

struct RunConfig {
  std::vector<std::pair<Suite, int>> schedule;
  std::int64_t t_cap = 1LL << 40; // per-task budget-doubling limit
  std::int64_t ceiling = 0;       // total charged-step ceiling, 0 = none
  bool reduced = false;
};

std::vector<std::pair<Suite, int>> default_schedule();

// key = value lines, '#' comments; `schedule` names a file of `suite n` lines
bool parse_config(const std::string &text, const std::string &base_dir,
                  RunConfig &out, std::string &err);
bool parse_schedule(const std::string &text,
                    std::vector<std::pair<Suite, int>> &out, std::string &err);

// versioned text dump of the learned code and its bookkeeping plus the
// schedule position; loading verifies the token-set size
struct Snapshot {
  int version = 1;
  int nq = 0;
  std::int64_t qp = 0, a_frozen = 0, a_last = 0;
  std::vector<std::int32_t> q; // addresses 1..qp
  std::vector<Program> closed;
  std::size_t next_task = 0;
  std::int64_t total_charged = 0;
};

Snapshot take_snapshot(const Engine &e, std::size_t next_task);
void apply_snapshot(const Snapshot &s, Engine &e);
std::string format_snapshot(const Snapshot &s);
bool parse_snapshot(const std::string &text, Snapshot &out, std::string &err);
bool write_snapshot_file(const std::string &path, const Snapshot &s);
bool read_snapshot_file(const std::string &path, Snapshot &out,
                        std::string &err);

struct CurriculumOut {
  std::vector<PhaseRec> phases; // the tasks attempted in this run
  bool completed = false;
  std::size_t next_task = 0; // schedule index to resume from
};

// walks the schedule from start_task; earlier tasks of each suite are
// re-instantiated so fresh-start rings see the full current suite
CurriculumOut run_curriculum(Engine &e, const RunConfig &cfg,
                             std::size_t start_task);

} // namespace oops

#endif
