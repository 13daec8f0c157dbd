#include "oops/interp.hpp"

#include <algorithm>

#include "oops/tasks.hpp"

namespace oops {

// ds helpers; every write is journaled and range-checked by TaskTape::wr

static std::int64_t pop(ExecCtx &c) {
  std::int64_t dp = c.tp.dp();
  if (dp < 1)
    throw HaltPrefix{};
  std::int64_t v = c.tp.rd(c.tp.lay->ds(int(dp)));
  c.tp.wr(C_DP, dp - 1);
  return v;
}

static void push(ExecCtx &c, std::int64_t v) {
  std::int64_t dp = c.tp.dp();
  if (dp >= kMaxDp)
    throw HaltPrefix{};
  c.tp.wr(c.tp.lay->ds(int(dp) + 1), v);
  c.tp.wr(C_DP, dp + 1);
}

static std::int64_t cur_base(const ExecCtx &c) {
  return c.tp.rd(c.tp.lay->cs_base(int(c.tp.cp())));
}

// push a callframe: m < 0 inherits the caller's base, otherwise the callee
// sees the m topmost entries; the caller's ip advances past the call token
static void call_frame(ExecCtx &c, std::int64_t start, std::int64_t m,
                       std::int64_t out) {
  const Layout &lay = *c.tp.lay;
  int cp = int(c.tp.cp());
  if (cp >= kMaxCp)
    throw HaltPrefix{};
  std::int64_t base;
  if (m < 0) {
    base = c.tp.rd(lay.cs_base(cp));
  } else {
    base = c.tp.dp() - m;
    if (base < 0)
      throw HaltPrefix{};
  }
  c.tp.wr(lay.cs_ip(cp), c.ip0 + 1);
  int ncp = cp + 1;
  c.tp.wr(lay.cs_ip(ncp), start);
  c.tp.wr(lay.cs_base(ncp), base);
  c.tp.wr(lay.cs_out(ncp), out);
  c.tp.wr(C_CP, ncp);
  c.ip_set = true;
}

// out >= 0: copy the out topmost down to base, drop the rest; out < 0:
// leave ds untouched; returning from the bottom frame idles the task
static void ret_impl(ExecCtx &c) {
  const Layout &lay = *c.tp.lay;
  int cp = int(c.tp.cp());
  if (cp == 0) {
    c.tp.wr(C_IDLE, 1);
    c.ip_set = true;
    return;
  }
  std::int64_t out = c.tp.rd(lay.cs_out(cp));
  std::int64_t base = c.tp.rd(lay.cs_base(cp));
  if (out >= 0) {
    std::int64_t dp = c.tp.dp();
    if (dp - out < base)
      throw HaltPrefix{};
    for (std::int64_t j = 1; j <= out; ++j)
      c.tp.wr(lay.ds(int(base + j)), c.tp.rd(lay.ds(int(dp - out + j))));
    c.tp.wr(C_DP, base + out);
    c.cost += out;
  }
  c.tp.wr(C_CP, cp - 1);
  c.ip_set = true;
}

static void swap_ds(ExecCtx &c, std::int64_t i, std::int64_t j) {
  const Layout &lay = *c.tp.lay;
  std::int64_t a = c.tp.rd(lay.ds(int(i)));
  std::int64_t b = c.tp.rd(lay.ds(int(j)));
  c.tp.wr(lay.ds(int(i)), b);
  c.tp.wr(lay.ds(int(j)), a);
}

// push the tokens of a stored program bottom-first
static void push_prog(ExecCtx &c, const Program &p) {
  for (std::int64_t a = p.start; a <= p.end; ++a)
    push(c, c.store.at(a));
  c.cost += std::max<std::int64_t>(0, p.size() - 1);
}

static std::int64_t floordiv(std::int64_t x, std::int64_t y) {
  std::int64_t q = x / y;
  if (x % y != 0 && ((x < 0) != (y < 0)))
    --q;
  return q;
}

static std::int64_t power(ExecCtx &c, std::int64_t x, std::int64_t y) {
  if (y < 0)
    throw HaltPrefix{};
  c.cost += std::max<std::int64_t>(0, y - 1);
  if (y == 0)
    return 1; // including 0^0
  if (x == 0)
    return 0;
  if (x == 1)
    return 1;
  if (x == -1)
    return (y % 2 == 0) ? 1 : -1;
  std::int64_t acc = 1;
  for (std::int64_t i = 0; i < y; ++i) {
    acc *= x; // |x| <= 1e9 so one step stays within int64
    if (acc > kMaxCellValue || acc < -kMaxCellValue)
      throw HaltPrefix{};
  }
  return acc;
}

// pattern row edits keep the cached sum consistent with the numerators
static void pat_add(ExecCtx &c, int row, int tok, std::int64_t delta) {
  const Layout &lay = *c.tp.lay;
  c.tp.wr(lay.pat_num(row, tok), c.tp.rd(lay.pat_num(row, tok)) + delta);
  c.tp.wr(lay.pat_sum(row), c.tp.rd(lay.pat_sum(row)) + delta);
}

void exec_instr(ExecCtx &c, int tok) {
  TaskTape &tp = c.tp;
  const Layout &lay = *tp.lay;
  c.cost += 1;

  if (c.tab.is_user(tok)) {
    const UserTok &u = c.tab.user.at(tok);
    call_frame(c, u.start, u.m, u.n);
    return;
  }

  switch (tok) {
  // task-specific
  case op::k1toD:
  case op::k2toD: {
    std::int64_t Dp = tp.Dp();
    if (Dp >= kMaxDDp)
      throw HaltPrefix{};
    tp.wr(lay.Ds(int(Dp) + 1), tok == op::k1toD ? 1 : 2);
    tp.wr(C_DDP, Dp + 1);
    break;
  }
  case op::kMvdsk: {
    if (tp.suite != Suite::hanoi)
      throw HaltPrefix{};
    std::int64_t dp = tp.dp();
    if (dp < 4)
      throw HaltPrefix{};
    std::int64_t from = tp.rd(lay.ds(int(dp) - 3));
    std::int64_t to = tp.rd(lay.ds(int(dp) - 1));
    hanoi_move(tp, int(from), int(to));
    break;
  }
  case op::kXAD: { // swap the auxiliary and destination peg slots
    std::int64_t dp = tp.dp();
    if (dp < 3)
      throw HaltPrefix{};
    swap_ds(c, dp - 2, dp - 1);
    break;
  }
  case op::kXSA: { // swap the source and auxiliary peg slots
    std::int64_t dp = tp.dp();
    if (dp < 4)
      throw HaltPrefix{};
    swap_ds(c, dp - 3, dp - 2);
    break;
  }

  // arithmetic
  case op::kAdd: {
    std::int64_t y = pop(c), x = pop(c);
    push(c, x + y);
    break;
  }
  case op::kMul: {
    std::int64_t y = pop(c), x = pop(c);
    push(c, x * y);
    break;
  }
  case op::kSub: {
    std::int64_t y = pop(c), x = pop(c);
    push(c, x - y);
    break;
  }
  case op::kDiv: {
    std::int64_t y = pop(c), x = pop(c);
    if (y == 0)
      throw HaltPrefix{};
    push(c, floordiv(x, y));
    break;
  }
  case op::kPowr: {
    std::int64_t y = pop(c), x = pop(c);
    push(c, power(c, x, y));
    break;
  }
  case op::kInc:
    push(c, pop(c) + 1);
    break;
  case op::kDec:
    push(c, pop(c) - 1);
    break;
  case op::kBy2:
    push(c, pop(c) * 2);
    break;

  // booleans (positive = true)
  case op::kNeg:
    push(c, pop(c) > 0 ? 0 : 1);
    break;
  case op::kEq: {
    std::int64_t y = pop(c), x = pop(c);
    push(c, x == y ? 1 : 0);
    break;
  }
  case op::kGrt: {
    std::int64_t y = pop(c), x = pop(c);
    push(c, x > y ? 1 : 0);
    break;
  }
  case op::kGeq: {
    std::int64_t y = pop(c), x = pop(c);
    push(c, x >= y ? 1 : 0);
    break;
  }
  case op::kAnd: {
    std::int64_t y = pop(c), x = pop(c);
    push(c, (x > 0 && y > 0) ? 1 : 0);
    break;
  }
  case op::kOr: {
    std::int64_t y = pop(c), x = pop(c);
    push(c, (x > 0 || y > 0) ? 1 : 0);
    break;
  }

  // constants
  case op::kC0:
  case op::kC1:
  case op::kC2:
  case op::kC3:
  case op::kC4:
  case op::kC5:
    push(c, tok - op::kC0);
    break;

  // plain stack manipulation
  case op::kDel:
    pop(c);
    break;
  case op::kClear:
    tp.wr(C_DP, 0);
    break;
  case op::kUp: {
    std::int64_t dp = tp.dp();
    if (dp < 1)
      throw HaltPrefix{};
    push(c, tp.rd(lay.ds(int(dp))));
    break;
  }
  case op::kEx: {
    std::int64_t dp = tp.dp();
    if (dp < 2)
      throw HaltPrefix{};
    swap_ds(c, dp - 1, dp);
    break;
  }
  case op::kDp2ds:
    push(c, tp.dp());
    break;
  case op::kPushdp: { // stack depth above base, measured after the push
    std::int64_t v = tp.dp() + 1 - cur_base(c);
    push(c, v);
    break;
  }
  case op::kSetdp: {
    std::int64_t x = pop(c);
    if (x < 0 || x > kMaxDp)
      throw HaltPrefix{};
    tp.wr(C_DP, x);
    break;
  }
  case op::kBase:
    push(c, cur_base(c));
    break;
  case op::kIp2ds:
    push(c, c.ip0);
    break;
  case op::kTsk:
    push(c, tp.rd(C_TASK));
    break;

  // indexed stack access, (m, n) pushed in that order so n is topmost
  case op::kOutn: {
    std::int64_t n = pop(c);
    std::int64_t dp = tp.dp();
    if (n < 1 || n > dp)
      throw HaltPrefix{};
    push(c, tp.rd(lay.ds(int(dp - n + 1))));
    break;
  }
  case op::kOutb: {
    std::int64_t n = pop(c);
    std::int64_t i = cur_base(c) + n;
    if (i < 1 || i > tp.dp())
      throw HaltPrefix{};
    push(c, tp.rd(lay.ds(int(i))));
    break;
  }
  case op::kInn: { // move the top into depth n
    std::int64_t n = pop(c);
    std::int64_t dp = tp.dp();
    if (dp < 1 || n < 1 || n > dp)
      throw HaltPrefix{};
    tp.wr(lay.ds(int(dp - n + 1)), tp.rd(lay.ds(int(dp))));
    tp.wr(C_DP, dp - 1);
    break;
  }
  case op::kInb: { // move the top into ds[base + n]
    std::int64_t n = pop(c);
    std::int64_t dp = tp.dp();
    std::int64_t i = cur_base(c) + n;
    if (dp < 1 || i < 1 || i > dp)
      throw HaltPrefix{};
    tp.wr(lay.ds(int(i)), tp.rd(lay.ds(int(dp))));
    tp.wr(C_DP, dp - 1);
    break;
  }
  case op::kXmn: {
    std::int64_t n = pop(c), m = pop(c);
    std::int64_t dp = tp.dp();
    if (m < 1 || m > dp || n < 1 || n > dp)
      throw HaltPrefix{};
    swap_ds(c, dp - m + 1, dp - n + 1);
    break;
  }
  case op::kXmnb: {
    std::int64_t n = pop(c), m = pop(c);
    std::int64_t base = cur_base(c), dp = tp.dp();
    if (base + m < 1 || base + m > dp || base + n < 1 || base + n > dp)
      throw HaltPrefix{};
    swap_ds(c, base + m, base + n);
    break;
  }
  case op::kCpn: {
    std::int64_t n = pop(c);
    std::int64_t dp = tp.dp();
    if (n < 0 || n > dp || dp + n > kMaxDp)
      throw HaltPrefix{};
    for (std::int64_t j = 1; j <= n; ++j)
      tp.wr(lay.ds(int(dp + j)), tp.rd(lay.ds(int(dp - n + j))));
    tp.wr(C_DP, dp + n);
    c.cost += std::max<std::int64_t>(0, n - 1);
    break;
  }
  case op::kCpnb: {
    std::int64_t n = pop(c);
    std::int64_t base = cur_base(c), dp = tp.dp();
    if (n < 0 || base + n > dp || dp + n > kMaxDp)
      throw HaltPrefix{};
    for (std::int64_t j = 1; j <= n; ++j)
      tp.wr(lay.ds(int(dp + j)), tp.rd(lay.ds(int(base + j))));
    tp.wr(C_DP, dp + n);
    c.cost += std::max<std::int64_t>(0, n - 1);
    break;
  }
  case op::kMvn: { // copy n entries starting at ds[base+a] onto ds[base+b..]
    std::int64_t n = pop(c), b = pop(c), a = pop(c);
    std::int64_t base = cur_base(c), dp = tp.dp();
    if (n < 0)
      throw HaltPrefix{};
    std::int64_t src = base + a, dst = base + b;
    if (n > 0 && (src < 1 || src + n - 1 > dp || dst < 1 ||
                  dst > dp + 1 || dst + n - 1 > kMaxDp))
      throw HaltPrefix{};
    std::vector<std::int64_t> tmp;
    for (std::int64_t j = 0; j < n; ++j)
      tmp.push_back(tp.rd(lay.ds(int(src + j))));
    for (std::int64_t j = 0; j < n; ++j)
      tp.wr(lay.ds(int(dst + j)), tmp[std::size_t(j)]);
    if (dst + n - 1 > dp)
      tp.wr(C_DP, dst + n - 1);
    c.cost += std::max<std::int64_t>(0, n - 1);
    break;
  }
  case op::kInsn: { // insert the n entries above ds[base+a] after ds[base+b]
    std::int64_t n = pop(c), b = pop(c), a = pop(c);
    std::int64_t base = cur_base(c), dp = tp.dp();
    std::int64_t src = base + a, at = base + b;
    if (n < 0 || src < 0 || src + n > dp || at < 0 || at > dp ||
        dp + n > kMaxDp)
      throw HaltPrefix{};
    std::vector<std::int64_t> tmp;
    for (std::int64_t j = 1; j <= n; ++j)
      tmp.push_back(tp.rd(lay.ds(int(src + j))));
    for (std::int64_t j = dp; j > at; --j)
      tp.wr(lay.ds(int(j + n)), tp.rd(lay.ds(int(j))));
    for (std::int64_t j = 1; j <= n; ++j)
      tp.wr(lay.ds(int(at + j)), tmp[std::size_t(j - 1)]);
    tp.wr(C_DP, dp + n);
    c.cost += std::max<std::int64_t>(0, n + (dp - at) - 1);
    break;
  }
  case op::kDeln: { // delete the n entries above ds[base+a]
    std::int64_t n = pop(c), a = pop(c);
    std::int64_t base = cur_base(c), dp = tp.dp();
    std::int64_t at = base + a;
    if (n < 0 || at < 0 || at + n > dp)
      throw HaltPrefix{};
    for (std::int64_t j = at + n + 1; j <= dp; ++j)
      tp.wr(lay.ds(int(j - n)), tp.rd(lay.ds(int(j))));
    tp.wr(C_DP, dp - n);
    c.cost += std::max<std::int64_t>(0, n + (dp - at - n) - 1);
    break;
  }
  case op::kFind: { // absolute index of the topmost match, scanning down
    std::int64_t x = pop(c);
    std::int64_t dp = tp.dp();
    for (std::int64_t j = dp; j >= 1; --j) {
      c.cost += (j == dp) ? 0 : 1;
      if (tp.rd(lay.ds(int(j))) == x) {
        push(c, j);
        return;
      }
    }
    throw HaltPrefix{};
  }
  case op::kFindb: { // base-relative index of the deepest match above base
    std::int64_t x = pop(c);
    std::int64_t base = cur_base(c), dp = tp.dp();
    for (std::int64_t k = 1; base + k <= dp; ++k) {
      c.cost += (k == 1) ? 0 : 1;
      if (tp.rd(lay.ds(int(base + k))) == x) {
        push(c, k);
        return;
      }
    }
    throw HaltPrefix{};
  }

  // auxiliary stack
  case op::kToD: {
    std::int64_t dp = tp.dp(), Dp = tp.Dp();
    if (dp < 1 || Dp >= kMaxDDp)
      throw HaltPrefix{};
    tp.wr(lay.Ds(int(Dp) + 1), tp.rd(lay.ds(int(dp))));
    tp.wr(C_DDP, Dp + 1);
    tp.wr(C_DP, dp - 1);
    break;
  }
  case op::kFromD: {
    std::int64_t Dp = tp.Dp();
    if (Dp < 1)
      throw HaltPrefix{};
    push(c, tp.rd(lay.Ds(int(Dp))));
    break;
  }
  case op::kDelD: {
    std::int64_t Dp = tp.Dp();
    if (Dp < 1)
      throw HaltPrefix{};
    tp.wr(C_DDP, Dp - 1);
    break;
  }

  // functions and control
  case op::kDef: { // bind the code right after this token as function fnp+1
    std::int64_t n = pop(c), m = pop(c);
    std::int64_t fnp = tp.fnp();
    if (fnp >= kMaxFnp || m < -1 || m > kMaxDp || n < -1 || n > kMaxDp)
      throw HaltPrefix{};
    int k = int(fnp) + 1;
    tp.wr(lay.fn_code(k), c.ip0 + 1);
    tp.wr(lay.fn_in(k), m);
    tp.wr(lay.fn_out(k), n);
    tp.wr(C_FNP, k);
    break;
  }
  case op::kTopf: {
    if (tp.fnp() < 1)
      throw HaltPrefix{};
    push(c, tp.fnp());
    break;
  }
  case op::kIntpf: {
    if (tp.fnp() < 1)
      throw HaltPrefix{};
    push(c, tp.rd(lay.fn_in(int(tp.fnp()))));
    break;
  }
  case op::kOutopf: {
    if (tp.fnp() < 1)
      throw HaltPrefix{};
    push(c, tp.rd(lay.fn_out(int(tp.fnp()))));
    break;
  }
  case op::kPopf: {
    std::int64_t fnp = tp.fnp();
    if (fnp < 1)
      throw HaltPrefix{};
    tp.wr(C_FNP, fnp - 1);
    push(c, fnp);
    break;
  }
  case op::kDof: {
    std::int64_t f = pop(c);
    if (f < 1 || f > tp.fnp())
      throw HaltPrefix{};
    call_frame(c, tp.rd(lay.fn_code(int(f))), tp.rd(lay.fn_in(int(f))),
               tp.rd(lay.fn_out(int(f))));
    break;
  }
  case op::kOldf: { // run a stored program on the current frame's data
    std::int64_t n = pop(c);
    Program p = c.store.combined_prog(n);
    call_frame(c, p.start, -1, -1);
    break;
  }
  case op::kRet:
    ret_impl(c);
    break;
  case op::kRt0: {
    std::int64_t x = pop(c);
    if (x <= 0)
      ret_impl(c);
    break;
  }
  case op::kJmp1: {
    std::int64_t a = pop(c), cond = pop(c);
    if (cond > 0) {
      tp.wr(lay.cs_ip(int(tp.cp())), a);
      c.ip_set = true;
    }
    break;
  }
  case op::kPip: {
    std::int64_t x = pop(c);
    tp.wr(lay.cs_ip(int(tp.cp())), x);
    c.ip_set = true;
  } break;
  case op::kBsjmp: { // jump into the code sitting on ds above ds[base+n]
    std::int64_t n = pop(c);
    std::int64_t i = cur_base(c) + n;
    if (i < 1 || i > tp.dp())
      throw HaltPrefix{};
    tp.wr(lay.cs_ip(int(tp.cp())), lay.addr_of_cell(lay.ds(int(i))) + 1);
    c.ip_set = true;
    break;
  }
  case op::kBsf: { // call the code on ds as a function, stack left as is
    std::int64_t n = pop(c);
    std::int64_t i = cur_base(c) + n;
    if (i < 1 || i > tp.dp())
      throw HaltPrefix{};
    call_frame(c, lay.addr_of_cell(lay.ds(int(i))) + 1, -1, -1);
    break;
  }
  case op::kExec: {
    std::int64_t n = pop(c);
    if (n < 1 || n > c.tab.n_q)
      throw HaltPrefix{};
    exec_instr(c, int(n));
    break;
  }
  case op::kQot:
    tp.wr(C_QUOTE, tp.rd(C_QUOTE) != 0 ? 0 : 1);
    break;
  case op::kNop:
    break;

  // stored-code access
  case op::kGetq: {
    std::int64_t n = pop(c);
    push_prog(c, c.store.combined_prog(n));
    break;
  }
  case op::kInsq: { // insert program n's tokens above ds[base+a]
    std::int64_t a = pop(c), n = pop(c);
    Program p = c.store.combined_prog(n);
    std::int64_t base = cur_base(c), dp = tp.dp();
    std::int64_t at = base + a, L = p.size();
    if (at < 0 || at > dp || dp + L > kMaxDp)
      throw HaltPrefix{};
    for (std::int64_t j = dp; j > at; --j)
      tp.wr(lay.ds(int(j + L)), tp.rd(lay.ds(int(j))));
    for (std::int64_t j = 0; j < L; ++j)
      tp.wr(lay.ds(int(at + 1 + j)), c.store.at(p.start + j));
    tp.wr(C_DP, dp + L);
    c.cost += std::max<std::int64_t>(0, L + (dp - at) - 1);
    break;
  }

  // search-bias editing
  case op::kIncQ: {
    std::int64_t dp = tp.dp();
    if (dp < 1)
      throw HaltPrefix{};
    std::int64_t i = tp.rd(lay.ds(int(dp)));
    if (i < 1 || i > lay.nq)
      throw HaltPrefix{};
    pat_add(c, int(tp.curp()), int(i), 1);
    break;
  }
  case op::kDecQ: {
    std::int64_t dp = tp.dp();
    if (dp < 1)
      throw HaltPrefix{};
    std::int64_t i = tp.rd(lay.ds(int(dp)));
    if (i < 1 || i > lay.nq)
      throw HaltPrefix{};
    int row = int(tp.curp());
    if (tp.rd(lay.pat_num(row, int(i))) < 1)
      throw HaltPrefix{};
    pat_add(c, row, int(i), -1);
    if (tp.rd(lay.pat_num(row, int(i))) == 0) {
      int positive = 0;
      for (int j = 1; j <= lay.nq && positive < 2; ++j)
        if (tp.rd(lay.pat_num(row, j)) > 0)
          ++positive;
      if (positive < 2)
        throw HaltPrefix{}; // would starve the distribution
    }
    break;
  }
  case op::kBoostq: { // boost every token of the n-th self-made program
    std::int64_t n = pop(c);
    Program p = c.store.self_prog(n);
    int row = int(tp.curp());
    for (std::int64_t a = p.start; a <= p.end; ++a) {
      std::int32_t t = c.store.at(a);
      if (t >= 1 && t <= lay.nq)
        pat_add(c, row, t, lay.nq);
    }
    c.cost += std::max<std::int64_t>(0, p.size() - 1);
    break;
  }
  case op::kPupat: { // copy the current pattern to the top and switch to it
    std::int64_t patp = tp.patp();
    if (patp >= kMaxPatp)
      throw HaltPrefix{};
    int src = int(tp.curp()), dst = int(patp) + 1;
    tp.wr(lay.pat_sum(dst), tp.rd(lay.pat_sum(src)));
    for (int j = 1; j <= lay.nq; ++j)
      tp.wr(lay.pat_num(dst, j), tp.rd(lay.pat_num(src, j)));
    tp.wr(C_PATP, dst);
    tp.wr(C_CURP, dst);
    c.cost += lay.nq;
    break;
  }
  case op::kSetpat: {
    std::int64_t x = pop(c);
    if (x < 0 || x > tp.patp())
      throw HaltPrefix{};
    tp.wr(C_CURP, x);
    break;
  }
  case op::kPoppat: {
    std::int64_t patp = tp.patp();
    if (patp < 1)
      throw HaltPrefix{};
    tp.wr(C_PATP, patp - 1);
    if (tp.curp() >= patp)
      tp.wr(C_CURP, patp - 1);
    push(c, patp);
    break;
  }

  default:
    throw HaltPrefix{}; // unknown token
  }
}

StepOut step(TaskTape &tape, CodeStore &store, const OpcodeTable &table) {
  const Layout &lay = *tape.lay;
  int cp = int(tape.cp());
  std::int64_t ip = tape.rd(lay.cs_ip(cp));
  if (ip == store.qp + 1)
    return {StepOut::TokenRequest, 0};
  std::int64_t tokv;
  if (ip >= 1 && ip <= store.qp)
    tokv = store.at(ip);
  else if (ip <= 0 && ip >= lay.addr_of_cell(0))
    tokv = tape.rd(lay.cell_of_addr(int(ip)));
  else
    return {StepOut::Halted, 1};
  if (tokv < 1 || tokv > table.n_q)
    return {StepOut::Halted, 1};

  ExecCtx c{tape, store, table};
  c.ip0 = ip;
  c.cp0 = cp;
  try {
    if (tape.rd(C_QUOTE) != 0 && int(tokv) != op::kQot) {
      push(c, tokv); // quoted tokens land on ds instead of executing
      c.cost += 1;
    } else {
      exec_instr(c, int(tokv));
    }
    if (!c.ip_set)
      tape.wr(lay.cs_ip(c.cp0), c.ip0 + 1);
    SolveCheck chk = test_solved(tape);
    c.cost += chk.cost;
    if (chk.solved) {
      tape.wr(C_SOLVED, 1);
      return {StepOut::Solved, c.cost};
    }
    return {StepOut::Ran, c.cost};
  } catch (HaltPrefix &) {
    return {StepOut::Halted, c.cost > 0 ? c.cost : 1};
  }
}

RingOut run_ring(std::vector<TaskTape *> &ring, std::size_t &cursor,
                 CodeStore &store, const OpcodeTable &table, std::int64_t &t,
                 std::int64_t limit, RunStats *stats) {
  std::size_t idle_streak = 0;
  while (true) {
    if (ring.empty())
      return {RingOut::AllSolved, 0};
    if (cursor >= ring.size())
      cursor = 0;
    TaskTape *tp = ring[cursor];
    if (tp->idle()) {
      if (++idle_streak >= ring.size())
        return {RingOut::Halted, 0}; // nothing left that can run
      ++cursor;
      continue;
    }
    if (t > limit)
      return {RingOut::Budget, 0};
    StepOut s = step(*tp, store, table);
    if (s.kind == StepOut::TokenRequest)
      return {RingOut::TokenRequest, tp->id}; // cursor stays on the requester
    t += s.cost;
    idle_streak = 0;
    if (stats) {
      stats->executed += 1;
      if (s.cost > stats->max_single)
        stats->max_single = s.cost;
      if (t > stats->max_t)
        stats->max_t = t;
    }
    if (s.kind == StepOut::Halted)
      return {RingOut::Halted, 0};
    if (s.kind == StepOut::Solved) {
      ring.erase(ring.begin() + std::ptrdiff_t(cursor));
      continue;
    }
    ++cursor;
  }
}

} // namespace oops
