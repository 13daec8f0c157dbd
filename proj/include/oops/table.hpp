#ifndef OOPS_TABLE_HPP
#define OOPS_TABLE_HPP

#include <map>
#include <string>
#include <vector>

#include "oops/state.hpp"

namespace oops {

// numbered tokens; 1..5 task-specific, 6..66 generic primitives, 67..73
// stock user declarations, above 73 extended primitives outside the
// searchable set
namespace op {
constexpr int k1toD = 1, k2toD = 2, kMvdsk = 3, kXAD = 4, kXSA = 5;
constexpr int kBsf = 6, kBoostq = 7, kAdd = 8, kMul = 9, kPowr = 10;
constexpr int kSub = 11, kDiv = 12, kInc = 13, kDec = 14, kBy2 = 15;
constexpr int kGetq = 16, kInsq = 17, kFindb = 18, kIncQ = 19, kDecQ = 20;
constexpr int kPupat = 21, kSetpat = 22, kInsn = 23, kMvn = 24, kDeln = 25;
constexpr int kIntpf = 26, kDef = 27, kTopf = 28, kDof = 29, kOldf = 30;
constexpr int kBsjmp = 31, kRet = 32, kRt0 = 33, kNeg = 34, kEq = 35;
constexpr int kGrt = 36, kClear = 37, kDel = 38, kUp = 39, kEx = 40;
constexpr int kJmp1 = 41, kOutn = 42, kInn = 43, kCpn = 44, kXmn = 45;
constexpr int kOutb = 46, kInb = 47, kCpnb = 48, kXmnb = 49, kIp2ds = 50;
constexpr int kPip = 51, kPushdp = 52, kDp2ds = 53, kToD = 54, kFromD = 55;
constexpr int kDelD = 56, kTsk = 57, kC0 = 58, kC1 = 59, kC2 = 60;
constexpr int kC3 = 61, kC4 = 62, kC5 = 63, kExec = 64, kQot = 65;
constexpr int kNop = 66, kFak = 67, kFak2 = 68, kC999 = 69, kTestexp = 70;
constexpr int kDefnp = 71, kCalltp = 72, kEndnp = 73;
// extended: described in the instruction prose but unnumbered in the
// canonical table; excluded from search patterns
constexpr int kGeq = 74, kAnd = 75, kOr = 76, kBase = 77, kSetdp = 78;
constexpr int kPopf = 79, kOutopf = 80, kPoppat = 81, kFind = 82;
constexpr int kMaxOpcode = 82;
} // namespace op

struct UserTok {
  int m = 0, n = 0;            // declared in/out counts, -1 = all above base
  std::int64_t start = 0;      // body start address in q
  std::string name;
};

struct Declaration {
  int m = 0, n = 0;
  std::string name;
  std::vector<std::string> body;
};

struct OpcodeTable {
  int n_q = 0; // searchable token count, fixed once declarations finish
  std::vector<std::string> names; // by opcode, [0] unused
  std::map<std::string, int> by_name; // canonical names and aliases
  std::map<int, UserTok> user; // opcode -> declaration binding

  bool is_user(int opc) const { return user.count(opc) != 0; }
  int opcode_of(const std::string &name) const; // throws InternalFault
};

// primitive numbering 1..66 plus extended names; no declarations loaded yet
OpcodeTable make_primitive_table();

// appends the declaration body to q, freezes it, binds the next free opcode
int declare_user_token(CodeStore &store, OpcodeTable &table,
                       const Declaration &d);

// the stock declaration set: fak fak2 c999 testexp defnp calltp endnp
// (load order puts them on opcodes 67..73); tailrec stays unloaded
std::vector<Declaration> stock_declarations();

// primitive table + stock declarations; sets n_q = 73 and a_last = a_frozen+1
OpcodeTable make_standard_table(CodeStore &store);

// `decl m n name: tok tok ...` lines, '#' comments
std::vector<Declaration> parse_declarations(const std::string &text);

} // namespace oops

#endif
