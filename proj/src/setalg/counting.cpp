#include "densitylab/setalg/counting.hpp"

#include <algorithm>

#include "circuit.hpp"
#include "densitylab/error.hpp"
#include "densitylab/setalg/analysis.hpp"

namespace densitylab::setalg {

using detail::AtomClass;
using detail::Circuit;

namespace {

// m with m! == t, if t is a factorial (m >= 1).
std::optional<unsigned long> factorial_index(const Natural& t) {
  Natural f = 1;
  unsigned long m = 1;
  while (f < t) {
    ++m;
    f *= m;
  }
  if (f == t) return m;
  return std::nullopt;
}

Natural max_nat(const Natural& a, const Natural& b) { return a < b ? b : a; }
Natural min_nat(const Natural& a, const Natural& b) { return a < b ? a : b; }

Natural count_runs_in(const std::vector<Run>& rs, const Natural& lo, const Natural& hi) {
  Natural total = 0;
  for (const auto& r : rs) {
    Natural a = max_nat(r.first, lo), b = min_nat(r.last, hi);
    if (a <= b) total += b - a + 1;
  }
  return total;
}

// Factorial points m! in [lo, hi] with m in base.
std::vector<Natural> factorial_points_in(const IndexSet& base, const Natural& lo, const Natural& hi) {
  std::vector<Natural> out;
  Natural f = 1;
  for (unsigned long m = 1; f <= hi; ++m, f *= m) {
    if (f >= lo && member(base, Natural(m))) out.push_back(f);
  }
  return out;
}

struct Segment {
  Natural lo, hi;
  bool sparse_point = false;
};

// Splits [lo, hi] so that block atoms are constant on each piece, periodic
// atoms are either unstarted or started, and every sparse point stands alone.
std::vector<Segment> segments(const Circuit& c, const Natural& lo, const Natural& hi) {
  std::vector<Natural> cuts{lo, hi + 1};
  std::vector<Natural> points;
  auto cut = [&](const Natural& v) {
    if (v > lo && v <= hi) cuts.push_back(v);
  };
  for (const auto& atom : c.atoms) {
    switch (atom.kind()) {
      case Kind::Interval:
        cut(atom.lo());
        cut(atom.hi() + 1);
        break;
      case Kind::FactorialIntervals:
        for (const auto& r : atom.fi().blocks_upto(hi)) {
          cut(r.first);
          cut(r.last + 1);
        }
        break;
      case Kind::ArithProg: cut(atom.ap_start()); break;
      case Kind::Finite:
        for (const auto& e : atom.elements()) {
          if (e >= lo && e <= hi) points.push_back(e);
        }
        break;
      case Kind::FactorialPoints:
        for (auto& p : factorial_points_in(atom.lhs(), lo, hi)) points.push_back(std::move(p));
        break;
      default: break;
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (const auto& p : points) {
    cut(p);
    cut(p + 1);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Segment> out;
  std::size_t pi = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Segment seg{cuts[i], cuts[i + 1] - 1, false};
    while (pi < points.size() && points[pi] < seg.lo) ++pi;
    seg.sparse_point = pi < points.size() && points[pi] == seg.lo;
    out.push_back(std::move(seg));
  }
  return out;
}

std::vector<char> full_state(const Circuit& c, const Natural& t) {
  std::vector<char> st(c.atoms.size());
  for (std::size_t i = 0; i < c.atoms.size(); ++i) st[i] = member(c.atoms[i], t);
  return st;
}

// Evaluates a non-sparse segment: returns the membership pattern counts.
// Calls on_constant(value) when the formula is constant on the segment, or
// on_mixed(active periodic atoms, truth table) otherwise.
template <class Constant, class Mixed>
void evaluate_segment(const Circuit& c, const Segment& seg, Constant on_constant, Mixed on_mixed) {
  std::vector<char> st(c.atoms.size(), 0);
  std::vector<int> active;
  for (std::size_t i = 0; i < c.atoms.size(); ++i) {
    switch (detail::classify(c.atoms[i])) {
      case AtomClass::Sparse: st[i] = 0; break;
      case AtomClass::Block: st[i] = member(c.atoms[i], seg.lo); break;
      case AtomClass::Periodic:
        if (c.atoms[i].ap_start() <= seg.lo) active.push_back(static_cast<int>(i));
        break;
    }
  }
  if (active.empty()) {
    on_constant(c.eval(st));
    return;
  }
  if (active.size() > detail::kMaxPeriodicAtoms) {
    throw Error(ErrorCode::Unsupported, "too many arithmetic progressions in one formula");
  }
  std::size_t total = std::size_t{1} << active.size();
  std::vector<char> truth(total);
  bool all_true = true, all_false = true;
  for (std::size_t mask = 0; mask < total; ++mask) {
    for (std::size_t j = 0; j < active.size(); ++j) st[active[j]] = (mask >> j) & 1;
    truth[mask] = c.eval(st);
    all_true = all_true && truth[mask];
    all_false = all_false && !truth[mask];
  }
  if (all_true || all_false) {
    on_constant(all_true);
    return;
  }
  std::vector<IndexSet> aps;
  for (int i : active) aps.push_back(c.atoms[i]);
  on_mixed(aps, truth);
}

Natural count_general(const IndexSet& s, const Natural& lo, const Natural& hi) {
  Circuit c = detail::compile(s);
  Natural total = 0;
  for (const auto& seg : segments(c, lo, hi)) {
    if (seg.sparse_point) {
      if (c.eval(full_state(c, seg.lo))) total += 1;
      continue;
    }
    evaluate_segment(
        c, seg, [&](bool v) { if (v) total += seg.hi - seg.lo + 1; },
        [&](const std::vector<IndexSet>& aps, const std::vector<char>& truth) {
          auto counts = detail::pattern_counts(aps, seg.lo, seg.hi);
          for (std::size_t m = 0; m < truth.size(); ++m) {
            if (truth[m]) total += counts[m];
          }
        });
  }
  return total;
}

}  // namespace

bool member(const IndexSet& s, const Natural& t) {
  if (t < 1) return false;
  switch (s.kind()) {
    case Kind::Finite: return std::binary_search(s.elements().begin(), s.elements().end(), t);
    case Kind::ArithProg: {
      if (t < s.ap_start()) return false;
      Natural r;
      Natural diff = t - s.ap_start();
      mpz_fdiv_r(r.get_mpz_t(), diff.get_mpz_t(), s.ap_step().get_mpz_t());
      return r == 0;
    }
    case Kind::FactorialPoints: {
      auto m = factorial_index(t);
      return m && member(s.lhs(), Natural(*m));
    }
    case Kind::FactorialIntervals: return s.fi().contains(t);
    case Kind::Interval: return s.lo() <= t && t <= s.hi();
    case Kind::Union: return member(s.lhs(), t) || member(s.rhs(), t);
    case Kind::Inter: return member(s.lhs(), t) && member(s.rhs(), t);
    case Kind::Compl: return !member(s.lhs(), t);
    case Kind::Diff: return member(s.lhs(), t) && !member(s.rhs(), t);
  }
  return false;
}

Natural count_range(const IndexSet& s, const Natural& lo_in, const Natural& hi) {
  Natural lo = max_nat(lo_in, 1);
  if (hi < lo) return 0;
  switch (s.kind()) {
    case Kind::Finite: {
      const auto& e = s.elements();
      auto a = std::lower_bound(e.begin(), e.end(), lo);
      auto b = std::upper_bound(e.begin(), e.end(), hi);
      return Natural(static_cast<unsigned long>(b - a));
    }
    case Kind::ArithProg: {
      Natural from = max_nat(lo, s.ap_start());
      if (hi < from) return 0;
      detail::Congruence g;
      g.c = s.ap_start();
      g.m = s.ap_step();
      mpz_fdiv_r(g.c.get_mpz_t(), g.c.get_mpz_t(), g.m.get_mpz_t());
      return detail::count_congruent(from, hi, g);
    }
    case Kind::Interval: {
      Natural a = max_nat(lo, s.lo()), b = min_nat(hi, s.hi());
      return a <= b ? Natural(b - a + 1) : Natural(0);
    }
    case Kind::FactorialIntervals: return count_runs_in(s.fi().blocks_upto(hi), lo, hi);
    case Kind::FactorialPoints:
      return Natural(static_cast<unsigned long>(factorial_points_in(s.lhs(), lo, hi).size()));
    case Kind::Compl: return (hi - lo + 1) - count_range(s.lhs(), lo, hi);
    default: return count_general(s, lo, hi);
  }
}

Natural count(const IndexSet& s, const Natural& n) { return count_range(s, 1, n); }

Natural nth_element(const IndexSet& s, const Natural& m) {
  if (m < 1) throw Error(ErrorCode::Precondition, "nth_element requires m >= 1");
  auto not_enough = [&]() {
    return Error(ErrorCode::NotEnoughElements,
                 "set " + s.key() + " has fewer than " + m.get_str() + " elements");
  };
  switch (s.kind()) {
    case Kind::Finite:
      if (m > s.elements().size()) throw not_enough();
      return s.elements()[m.get_ui() - 1];
    case Kind::ArithProg: return s.ap_start() + (m - 1) * s.ap_step();
    case Kind::Interval:
      if (s.hi() < s.lo() || m > s.hi() - s.lo() + 1) throw not_enough();
      return s.lo() + m - 1;
    case Kind::FactorialPoints: {
      Natural base_m;
      try {
        base_m = nth_element(s.lhs(), m);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::NotEnoughElements) throw not_enough();
        throw;
      }
      if (base_m > kMaxFactorialArgument) throw Error(ErrorCode::HorizonExceeded, "factorial index too large");
      return factorial(base_m.get_ui());
    }
    default: break;
  }
  Natural hi;
  Finiteness fin = analyze_finiteness(s);
  if (fin.status == Finiteness::Status::Finite) {
    if (count(s, fin.bound) < m) throw not_enough();
    hi = fin.bound;
  } else {
    hi = m;
    while (count(s, hi) < m) {
      hi *= 2;
      if (mpz_sizeinbase(hi.get_mpz_t(), 2) > 4096) {
        throw Error(fin.status == Finiteness::Status::Unknown ? ErrorCode::Unsupported
                                                              : ErrorCode::NotEnoughElements,
                    "element search for " + s.key() + " exceeded the search bound");
      }
    }
  }
  Natural lo = 1;
  while (lo < hi) {
    Natural mid = (lo + hi) / 2;
    if (count(s, mid) >= m) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::optional<Natural> next_element(const IndexSet& s, const Natural& t) {
  Natural before = t <= 1 ? Natural(0) : count(s, t - 1);
  try {
    return nth_element(s, before + 1);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotEnoughElements) return std::nullopt;
    throw;
  }
}

std::optional<std::vector<Run>> runs(const IndexSet& s, const Natural& lo_in, const Natural& hi,
                                     std::size_t max_runs) {
  std::vector<Run> out;
  Natural lo = max_nat(lo_in, 1);
  if (hi < lo) return out;
  bool overflow = false;
  auto push = [&](const Natural& a, const Natural& b) {
    if (!out.empty() && out.back().last + 1 == a) {
      out.back().last = b;
    } else {
      out.push_back(Run{a, b});
      if (out.size() > max_runs) overflow = true;
    }
  };
  Circuit c = detail::compile(s);
  constexpr unsigned long kPointwiseLimit = 4096;
  for (const auto& seg : segments(c, lo, hi)) {
    if (overflow) return std::nullopt;
    if (seg.sparse_point) {
      if (c.eval(full_state(c, seg.lo))) push(seg.lo, seg.lo);
      continue;
    }
    bool bail = false;
    evaluate_segment(
        c, seg, [&](bool v) { if (v) push(seg.lo, seg.hi); },
        [&](const std::vector<IndexSet>&, const std::vector<char>&) {
          if (seg.hi - seg.lo >= kPointwiseLimit) {
            bail = true;
            return;
          }
          for (Natural t = seg.lo; t <= seg.hi; ++t) {
            if (member(s, t)) push(t, t);
          }
        });
    if (bail) return std::nullopt;
  }
  if (overflow) return std::nullopt;
  return out;
}

std::vector<char> membership_prefix(const IndexSet& s, std::size_t n) {
  std::vector<char> out(n + 1, 0);
  const Natural top(static_cast<unsigned long>(n));
  auto fill = [&](const Natural& lo, const Natural& hi) {
    if (lo > top || hi < lo) return;
    std::size_t a = lo.get_ui(), b = hi < top ? hi.get_ui() : n;
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(a), out.begin() + static_cast<std::ptrdiff_t>(b) + 1, 1);
  };
  switch (s.kind()) {
    case Kind::Finite:
      for (const Natural& e : s.elements()) {
        if (e > top) break;
        out[e.get_ui()] = 1;
      }
      break;
    case Kind::ArithProg:
      if (s.ap_start() <= top) {
        std::size_t d = s.ap_step() < top ? s.ap_step().get_ui() : n + 1;
        for (std::size_t t = s.ap_start().get_ui(); t <= n; t += d) out[t] = 1;
      }
      break;
    case Kind::Interval: fill(s.lo(), s.hi()); break;
    case Kind::FactorialPoints: {
      Natural f = 1;
      for (unsigned long m = 1;; ++m) {
        f *= m;
        if (f > top) break;
        if (member(s.lhs(), Natural(m))) out[f.get_ui()] = 1;
      }
      break;
    }
    case Kind::FactorialIntervals:
      for (const Run& r : s.fi().blocks_upto(top)) fill(r.first, r.last);
      break;
    case Kind::Compl: {
      out = membership_prefix(s.lhs(), n);
      for (std::size_t t = 1; t <= n; ++t) out[t] = !out[t];
      break;
    }
    case Kind::Union:
    case Kind::Inter:
    case Kind::Diff: {
      out = membership_prefix(s.lhs(), n);
      std::vector<char> b = membership_prefix(s.rhs(), n);
      for (std::size_t t = 1; t <= n; ++t) {
        if (s.kind() == Kind::Union) out[t] = out[t] | b[t];
        else if (s.kind() == Kind::Inter) out[t] = out[t] & b[t];
        else out[t] = out[t] & !b[t];
      }
      break;
    }
  }
  return out;
}

}  // namespace densitylab::setalg
