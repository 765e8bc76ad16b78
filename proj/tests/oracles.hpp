#pragma once

// Brute-force reference implementations over machine integers, used to check
// the structural engines on small prefixes.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "densitylab/setalg/index_set.hpp"

namespace oracle {

using densitylab::setalg::BlockSpec;
using densitylab::setalg::BoundExpr;
using densitylab::setalg::IndexSequence;
using densitylab::setalg::IndexSet;
using densitylab::setalg::Kind;
using i128 = __int128;

inline constexpr i128 kHuge = static_cast<i128>(1) << 100;

inline i128 sat(i128 v) { return v > kHuge ? kHuge : (v < -kHuge ? -kHuge : v); }

inline i128 seq_at(const IndexSequence& s, i128 j) {
  const auto& p = s.prefix();
  if (p.empty()) return j;
  i128 len = static_cast<i128>(p.size());
  if (j <= len) return p[static_cast<std::size_t>(j - 1)].get_si();
  return p.back().get_si() + (j - len);
}

inline i128 eval(const BoundExpr::Node& n, i128 k, const IndexSequence& s) {
  using Op = BoundExpr::Op;
  switch (n.op) {
    case Op::Const: return n.value.get_si();
    case Op::K: return k;
    case Op::Seq: return seq_at(s, eval(*n.lhs, k, s));
    case Op::Fact: {
      i128 a = eval(*n.lhs, k, s), f = 1;
      for (i128 i = 2; i <= a && f < kHuge; ++i) f = sat(f * i);
      return f;
    }
    case Op::Add: return sat(eval(*n.lhs, k, s) + eval(*n.rhs, k, s));
    case Op::Sub: return sat(eval(*n.lhs, k, s) - eval(*n.rhs, k, s));
    case Op::Mul: return sat(eval(*n.lhs, k, s) * eval(*n.rhs, k, s));
    case Op::Div: {
      i128 a = eval(*n.lhs, k, s), b = eval(*n.rhs, k, s);
      i128 q = a / b;
      if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
      return q;
    }
  }
  return 0;
}

/// Membership of every t in [0, n] (index 0 unused).
inline std::vector<char> prefix(const IndexSet& s, std::uint64_t n) {
  std::vector<char> out(n + 1, 0);
  auto mark = [&](i128 lo, i128 hi) {
    lo = std::max<i128>(lo, 1);
    hi = std::min<i128>(hi, n);
    for (i128 t = lo; t <= hi; ++t) out[static_cast<std::size_t>(t)] = 1;
  };
  switch (s.kind()) {
    case Kind::Finite:
      for (const auto& e : s.elements())
        if (e <= n) out[e.get_ui()] = 1;
      break;
    case Kind::ArithProg:
      for (std::uint64_t t = s.ap_start().get_ui(); t <= n; t += s.ap_step().get_ui()) out[t] = 1;
      break;
    case Kind::Interval:
      if (s.lo() <= s.hi()) mark(s.lo().get_si(), s.hi().get_si());
      break;
    case Kind::FactorialPoints: {
      std::vector<char> base = prefix(s.lhs(), 40);
      std::uint64_t f = 1;
      for (std::uint64_t m = 1; m <= 40; ++m) {
        f *= m;
        if (f > n) break;
        if (base[m]) out[f] = 1;
      }
      break;
    }
    case Kind::FactorialIntervals: {
      const auto& spec = s.fi().spec();
      auto block = [&](const BlockSpec& b, i128 k) {
        i128 lo = eval(b.lo.root(), k, spec.seq) + (b.lo_open ? 1 : 0);
        i128 hi = eval(b.hi.root(), k, spec.seq) - (b.hi_open ? 1 : 0);
        mark(lo, hi);
        return lo;
      };
      for (const auto& b : spec.blocks) block(b, 0);
      if (spec.family) {
        for (i128 k = spec.family->k0;; ++k) {
          if (block(spec.family->block, k) > static_cast<i128>(n)) break;
        }
      }
      break;
    }
    case Kind::Union:
    case Kind::Inter:
    case Kind::Diff: {
      auto a = prefix(s.lhs(), n), b = prefix(s.rhs(), n);
      for (std::uint64_t t = 1; t <= n; ++t) {
        if (s.kind() == Kind::Union) out[t] = a[t] || b[t];
        if (s.kind() == Kind::Inter) out[t] = a[t] && b[t];
        if (s.kind() == Kind::Diff) out[t] = a[t] && !b[t];
      }
      break;
    }
    case Kind::Compl: {
      auto a = prefix(s.lhs(), n);
      for (std::uint64_t t = 1; t <= n; ++t) out[t] = !a[t];
      break;
    }
  }
  return out;
}

/// Running counts c[t] = |S ∩ [1, t]|.
inline std::vector<std::uint64_t> counts(const std::vector<char>& member) {
  std::vector<std::uint64_t> c(member.size(), 0);
  for (std::size_t t = 1; t < member.size(); ++t) c[t] = c[t - 1] + (member[t] ? 1 : 0);
  return c;
}

}  // namespace oracle
