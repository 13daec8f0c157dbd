#include "oops/table.hpp"

#include <sstream>

namespace oops {

int OpcodeTable::opcode_of(const std::string &name) const {
  auto it = by_name.find(name);
  if (it == by_name.end())
    throw InternalFault{"unknown mnemonic"};
  return it->second;
}

OpcodeTable make_primitive_table() {
  OpcodeTable t;
  t.names.assign(op::kMaxOpcode + 1, "");
  auto put = [&](int opc, const char *name) {
    t.names[std::size_t(opc)] = name;
    t.by_name[name] = opc;
  };
  put(op::k1toD, "1toD");
  put(op::k2toD, "2toD");
  put(op::kMvdsk, "mvdsk");
  put(op::kXAD, "xAD");
  put(op::kXSA, "xSA");
  put(op::kBsf, "bsf");
  put(op::kBoostq, "boostq");
  put(op::kAdd, "add");
  put(op::kMul, "mul");
  put(op::kPowr, "powr");
  put(op::kSub, "sub");
  put(op::kDiv, "div");
  put(op::kInc, "inc");
  put(op::kDec, "dec");
  put(op::kBy2, "by2");
  put(op::kGetq, "getq");
  put(op::kInsq, "insq");
  put(op::kFindb, "findb");
  put(op::kIncQ, "incQ");
  put(op::kDecQ, "decQ");
  put(op::kPupat, "pupat");
  put(op::kSetpat, "setpat");
  put(op::kInsn, "insn");
  put(op::kMvn, "mvn");
  put(op::kDeln, "deln");
  put(op::kIntpf, "intpf");
  put(op::kDef, "def");
  put(op::kTopf, "topf");
  put(op::kDof, "dof");
  put(op::kOldf, "oldf");
  put(op::kBsjmp, "bsjmp");
  put(op::kRet, "ret");
  put(op::kRt0, "rt0");
  put(op::kNeg, "neg");
  put(op::kEq, "eq");
  put(op::kGrt, "grt");
  put(op::kClear, "clear");
  put(op::kDel, "del");
  put(op::kUp, "up");
  put(op::kEx, "ex");
  put(op::kJmp1, "jmp1");
  put(op::kOutn, "outn");
  put(op::kInn, "inn");
  put(op::kCpn, "cpn");
  put(op::kXmn, "xmn");
  put(op::kOutb, "outb");
  put(op::kInb, "inb");
  put(op::kCpnb, "cpnb");
  put(op::kXmnb, "xmnb");
  put(op::kIp2ds, "ip2ds");
  put(op::kPip, "pip");
  put(op::kPushdp, "pushdp");
  put(op::kDp2ds, "dp2ds");
  put(op::kToD, "toD");
  put(op::kFromD, "fromD");
  put(op::kDelD, "delD");
  put(op::kTsk, "tsk");
  put(op::kC0, "c0");
  put(op::kC1, "c1");
  put(op::kC2, "c2");
  put(op::kC3, "c3");
  put(op::kC4, "c4");
  put(op::kC5, "c5");
  put(op::kExec, "exec");
  put(op::kQot, "qot");
  put(op::kNop, "nop");
  // extended, outside the searchable numbering
  put(op::kGeq, "geq");
  put(op::kAnd, "and");
  put(op::kOr, "or");
  put(op::kBase, "base");
  put(op::kSetdp, "setdp");
  put(op::kPopf, "popf");
  put(op::kOutopf, "outopf");
  put(op::kPoppat, "poppat");
  put(op::kFind, "find");
  // prose aliases
  t.by_name["pushpat"] = op::kPupat;
  t.by_name["not"] = op::kNeg;
  t.by_name["oldq"] = op::kOldf;
  t.by_name["ins"] = op::kInsn;
  t.by_name["innb"] = op::kInb;
  t.by_name["intopf"] = op::kIntpf;
  t.n_q = 66;
  return t;
}

int declare_user_token(CodeStore &store, OpcodeTable &table,
                       const Declaration &d) {
  int opc = table.n_q + 1;
  std::int64_t start = store.qp + 1;
  for (const std::string &tok : d.body) {
    auto it = table.by_name.find(tok);
    int num;
    if (it != table.by_name.end()) {
      num = it->second;
    } else if (tok == d.name) {
      num = opc; // the single allowed forward reference
    } else {
      throw InternalFault{"unresolvable declaration token"};
    }
    store.poke(store.qp + 1, std::int32_t(num));
  }
  store.freeze(store.qp);
  store.decl_progs.push_back(Program{start, store.qp});
  table.names[std::size_t(opc)] = d.name;
  table.by_name[d.name] = opc;
  table.user[opc] = UserTok{d.m, d.n, start, d.name};
  table.n_q = opc;
  return opc;
}

static Declaration mk(int m, int n, const char *name, const char *body) {
  Declaration d;
  d.m = m;
  d.n = n;
  d.name = name;
  std::istringstream in(body);
  std::string tok;
  while (in >> tok)
    d.body.push_back(tok);
  return d;
}

std::vector<Declaration> stock_declarations() {
  // load order pins the canonical numbering 67..73
  return {
      mk(1, 1, "fak", "up c1 ex rt0 del up dec fak mul ret"),
      mk(1, 1, "fak2", "c1 c1 def up c1 ex rt0 del up dec topf dof mul ret"),
      mk(0, 1, "c999", "c5 c5 mul c5 c4 c2 mul mul mul dec ret"),
      mk(2, 1, "testexp", "by2 by2 dec c3 by2 mul mul up mul ret"),
      mk(-1, -1, "defnp",
         "c0 toD pushdp dec toD qot def up rt0 dec intpf cpn qot ret"),
      mk(-1, -1, "calltp", "qot topf dof intpf cpn qot ret"),
      mk(-1, -1, "endnp",
         "qot ret qot fromD cpnb fromD up delD fromD ex bsf ret"),
  };
}

OpcodeTable make_standard_table(CodeStore &store) {
  OpcodeTable t = make_primitive_table();
  for (const Declaration &d : stock_declarations())
    declare_user_token(store, t, d);
  store.a_last = store.a_frozen + 1;
  return t;
}

std::vector<Declaration> parse_declarations(const std::string &text) {
  std::vector<Declaration> out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.resize(hash);
    std::istringstream in(line);
    std::string kw;
    if (!(in >> kw))
      continue;
    if (kw != "decl")
      throw InternalFault{"declaration file: expected 'decl'"};
    Declaration d;
    std::string name;
    if (!(in >> d.m >> d.n >> name))
      throw InternalFault{"declaration file: bad header"};
    if (name.empty() || name.back() != ':')
      throw InternalFault{"declaration file: missing ':'"};
    d.name = name.substr(0, name.size() - 1);
    std::string tok;
    while (in >> tok)
      d.body.push_back(tok);
    out.push_back(std::move(d));
  }
  return out;
}

} // namespace oops
