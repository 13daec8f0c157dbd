#include "oops/io.hpp"

#include <fstream>
#include <sstream>

namespace oops {

std::vector<std::pair<Suite, int>> default_schedule() {
  std::vector<std::pair<Suite, int>> s;
  for (int n = 1; n <= 30; ++n)
    s.emplace_back(Suite::onetwon, n);
  for (int n = 1; n <= 30; ++n)
    s.emplace_back(Suite::hanoi, n);
  return s;
}

bool parse_schedule(const std::string &text,
                    std::vector<std::pair<Suite, int>> &out,
                    std::string &err) {
  std::istringstream lines(text);
  std::string line;
  int lno = 0;
  while (std::getline(lines, line)) {
    ++lno;
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.resize(hash);
    std::istringstream in(line);
    std::string name;
    int n;
    if (!(in >> name))
      continue;
    Suite s;
    if (!suite_from_name(name, s) || !(in >> n) || n < 1) {
      err = "schedule line " + std::to_string(lno) + ": bad entry";
      return false;
    }
    out.emplace_back(s, n);
  }
  if (out.empty()) {
    err = "schedule: empty";
    return false;
  }
  return true;
}

bool parse_config(const std::string &text, const std::string &base_dir,
                  RunConfig &out, std::string &err) {
  std::istringstream lines(text);
  std::string line;
  int lno = 0;
  while (std::getline(lines, line)) {
    ++lno;
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.resize(hash);
    auto eq = line.find('=');
    std::string bad = "config line " + std::to_string(lno);
    std::istringstream probe(line);
    std::string first;
    if (!(probe >> first))
      continue;
    if (eq == std::string::npos) {
      err = bad + ": expected key = value";
      return false;
    }
    std::istringstream kin(line.substr(0, eq)), vin(line.substr(eq + 1));
    std::string key, value;
    kin >> key;
    vin >> value;
    if (key.empty() || value.empty()) {
      err = bad + ": expected key = value";
      return false;
    }
    if (key == "schedule") {
      std::string path = value;
      if (!path.empty() && path[0] != '/' && !base_dir.empty())
        path = base_dir + "/" + path;
      std::ifstream f(path);
      if (!f) {
        err = bad + ": cannot open schedule file " + path;
        return false;
      }
      std::stringstream buf;
      buf << f.rdbuf();
      out.schedule.clear();
      if (!parse_schedule(buf.str(), out.schedule, err))
        return false;
    } else if (key == "t_cap") {
      out.t_cap = std::stoll(value);
    } else if (key == "ceiling") {
      out.ceiling = std::stoll(value);
    } else if (key == "reduced") {
      out.reduced = value != "0";
    } else {
      err = bad + ": unknown key " + key;
      return false;
    }
  }
  if (out.schedule.empty())
    out.schedule = default_schedule();
  return true;
}

Snapshot take_snapshot(const Engine &e, std::size_t next_task) {
  Snapshot s;
  s.nq = e.table.n_q;
  s.qp = e.store.qp;
  s.a_frozen = e.store.a_frozen;
  s.a_last = e.store.a_last;
  for (std::int64_t a = 1; a <= e.store.qp; ++a)
    s.q.push_back(e.store.at(a));
  s.closed = e.store.closed_progs;
  s.next_task = next_task;
  s.total_charged = e.total_charged;
  return s;
}

void apply_snapshot(const Snapshot &s, Engine &e) {
  if (s.nq != e.table.n_q)
    throw InternalFault{"snapshot token-set size mismatch"};
  e.store.q.assign(1, 0);
  e.store.q.insert(e.store.q.end(), s.q.begin(), s.q.end());
  e.store.qp = s.qp;
  e.store.a_frozen = s.a_frozen;
  e.store.a_last = s.a_last;
  e.store.closed_progs = s.closed;
  e.total_charged = s.total_charged;
}

std::string format_snapshot(const Snapshot &s) {
  std::ostringstream out;
  out << "oops-snapshot " << s.version << "\n";
  out << "nq " << s.nq << "\n";
  out << "qp " << s.qp << "\n";
  out << "a_frozen " << s.a_frozen << "\n";
  out << "a_last " << s.a_last << "\n";
  out << "next_task " << s.next_task << "\n";
  out << "total_charged " << s.total_charged << "\n";
  out << "q";
  for (std::int32_t tok : s.q)
    out << ' ' << tok;
  out << "\n";
  out << "closed " << s.closed.size() << "\n";
  for (const Program &p : s.closed)
    out << "prog " << p.start << ' ' << p.end << "\n";
  return out.str();
}

bool parse_snapshot(const std::string &text, Snapshot &out, std::string &err) {
  std::istringstream in(text);
  std::string kw;
  auto want = [&](const char *k) {
    if (!(in >> kw) || kw != k) {
      err = std::string("snapshot: expected ") + k;
      return false;
    }
    return true;
  };
  if (!want("oops-snapshot") || !(in >> out.version))
    return false;
  if (out.version != 1) {
    err = "snapshot: unsupported version";
    return false;
  }
  if (!want("nq") || !(in >> out.nq))
    return false;
  if (!want("qp") || !(in >> out.qp))
    return false;
  if (!want("a_frozen") || !(in >> out.a_frozen))
    return false;
  if (!want("a_last") || !(in >> out.a_last))
    return false;
  if (!want("next_task") || !(in >> out.next_task))
    return false;
  if (!want("total_charged") || !(in >> out.total_charged))
    return false;
  if (!want("q"))
    return false;
  out.q.clear();
  for (std::int64_t i = 0; i < out.qp; ++i) {
    std::int32_t tok;
    if (!(in >> tok)) {
      err = "snapshot: truncated code";
      return false;
    }
    out.q.push_back(tok);
  }
  std::size_t nclosed;
  if (!want("closed") || !(in >> nclosed))
    return false;
  out.closed.clear();
  for (std::size_t i = 0; i < nclosed; ++i) {
    Program p;
    if (!want("prog") || !(in >> p.start >> p.end))
      return false;
    out.closed.push_back(p);
  }
  return true;
}

bool write_snapshot_file(const std::string &path, const Snapshot &s) {
  std::ofstream f(path);
  if (!f)
    return false;
  f << format_snapshot(s);
  return bool(f);
}

bool read_snapshot_file(const std::string &path, Snapshot &out,
                        std::string &err) {
  std::ifstream f(path);
  if (!f) {
    err = "cannot open snapshot " + path;
    return false;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_snapshot(buf.str(), out, err);
}

CurriculumOut run_curriculum(Engine &e, const RunConfig &cfg,
                             std::size_t start_task) {
  CurriculumOut out;
  e.reduced = cfg.reduced;
  e.ceiling = cfg.ceiling;
  Suite cur{};
  bool have_suite = false;
  for (std::size_t i = 0; i < cfg.schedule.size(); ++i) {
    auto [s, n] = cfg.schedule[i];
    if (!have_suite || s != cur) {
      e.begin_suite(s, suite_boosts(s));
      cur = s;
      have_suite = true;
    }
    e.add_instance(n);
    if (i < start_task)
      continue; // context only, solved in an earlier run
    out.next_task = i;
    PhaseRec rec = e.solve_next(cfg.t_cap);
    out.phases.push_back(rec);
    if (rec.branch == 0)
      return out; // budget exhausted here
    if (cfg.ceiling > 0 && e.total_charged > cfg.ceiling) {
      out.next_task = i + 1;
      return out;
    }
  }
  out.completed = true;
  out.next_task = cfg.schedule.size();
  return out;
}

} // namespace oops
