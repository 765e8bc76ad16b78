#include "densitylab/streams/profile.hpp"

#include <algorithm>

#include "densitylab/error.hpp"
#include "densitylab/setalg/analysis.hpp"
#include "densitylab/setalg/counting.hpp"

namespace densitylab::streams {

using setalg::Run;

namespace {

IndexSet first_match(const IndexSet& s, const IndexSet& earlier) {
  return earlier.is_empty_literal() ? s : IndexSet::difference(s, earlier);
}

IndexSet join(const IndexSet& a, const IndexSet& b) {
  if (a.is_empty_literal()) return b;
  if (b.is_empty_literal()) return a;
  return IndexSet::set_union(a, b);
}

IndexSet meet(const IndexSet& a, const IndexSet& b) {
  if (a.is_nat()) return b;
  if (b.is_nat()) return a;
  if (a.is_empty_literal() || b.is_empty_literal()) return IndexSet::empty();
  return IndexSet::set_inter(a, b);
}

struct Parts {
  IndexSet greater, less, unknown;
};

// Smallest t with count(r, t) >= j, if any.
std::optional<Natural> reach(const IndexSet& r, const Integer& j) {
  if (j <= 0) return Natural(1);
  try {
    return setalg::nth_element(r, j);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotEnoughElements) return std::nullopt;
    throw;
  }
}

IndexSet from(const Natural& t) { return IndexSet::at_least(t); }
IndexSet below(const Natural& t) { return t <= 1 ? IndexSet::empty() : IndexSet::interval(1, t - 1); }

Parts by_sign(const IndexSet& piece, int sign) {
  Parts p;
  if (sign > 0) p.greater = piece;
  if (sign < 0) p.less = piece;
  return p;
}

// x = count(r, t) + o against the constant c; flipped when x is the constant side.
Parts rank_vs_const(const IndexSet& piece, const IndexSet& r, const Rational& o, const Rational& c, bool flip) {
  Rational d = c - o;
  Parts p;
  auto up = reach(r, floor_of(d) + 1);   // count > d from here on
  auto down = reach(r, ceil_of(d));      // count < d before here
  IndexSet g = up ? meet(piece, from(*up)) : IndexSet::empty();
  IndexSet l = down ? meet(piece, below(*down)) : piece;
  p.greater = flip ? l : g;
  p.less = flip ? g : l;
  return p;
}

void add_run(std::vector<Run>& out, const Natural& a, const Natural& b) {
  if (b < a) return;
  if (!out.empty() && out.back().last + 1 == a) {
    out.back().last = b;
  } else {
    out.push_back({a, b});
  }
}

// x = count(r1, t) + o1 against y = count(r2, t) + o2.
Parts rank_vs_rank(const IndexSet& piece, const IndexSet& r1, const Rational& o1, const IndexSet& r2,
                   const Rational& o2, std::vector<std::string>& notes) {
  if (r1 == r2) return by_sign(piece, sgn(o1 - o2));
  setalg::SymDiffVerdict v = setalg::sym_diff_finite(r1, r2, Natural(0));
  Parts p;
  if (v.status != setalg::SymDiffVerdict::Status::Finite) {
    notes.push_back("rank sets " + r1.key() + " and " + r2.key() + " differ on an infinite or undecided set");
    p.unknown = piece;
    return p;
  }
  const Natural& b = v.bound;
  auto plus = setalg::runs(IndexSet::difference(r1, r2), 1, b, kMaxProfileRuns);
  auto minus = setalg::runs(IndexSet::difference(r2, r1), 1, b, kMaxProfileRuns);
  if (!plus || !minus) {
    notes.push_back("rank sets " + r1.key() + " and " + r2.key() + " differ on too many runs");
    p.unknown = piece;
    return p;
  }
  struct Event {
    Run run;
    int dir;
  };
  std::vector<Event> events;
  for (const Run& r : *plus) events.push_back({r, 1});
  for (const Run& r : *minus) events.push_back({r, -1});
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& c) { return a.run.first < c.run.first; });

  std::vector<Run> g, l;
  Rational delta = o1 - o2;  // x - y on the current constant stretch
  Natural pos = 1;
  auto constant_stretch = [&](const Natural& a, const Natural& z) {
    if (delta > 0) add_run(g, a, z);
    if (delta < 0) add_run(l, a, z);
  };
  for (const Event& e : events) {
    constant_stretch(pos, e.run.first - 1);
    Natural len = e.run.last - e.run.first + 1;
    // value at offset i in the run: delta + dir * (i + 1)
    Integer gi_lo = 0, gi_hi = len - 1, li_lo = 0, li_hi = len - 1;
    if (e.dir > 0) {
      gi_lo = std::max<Integer>(gi_lo, floor_of(-delta - 1) + 1);
      li_hi = std::min<Integer>(li_hi, ceil_of(-delta - 1) - 1);
    } else {
      gi_hi = std::min<Integer>(gi_hi, ceil_of(delta - 1) - 1);
      li_lo = std::max<Integer>(li_lo, floor_of(delta - 1) + 1);
    }
    if (gi_lo <= gi_hi) add_run(g, e.run.first + gi_lo, e.run.first + gi_hi);
    if (li_lo <= li_hi) add_run(l, e.run.first + li_lo, e.run.first + li_hi);
    delta += e.dir * Rational(len);
    pos = e.run.last + 1;
  }
  constant_stretch(pos, b);
  p.greater = join(meet(piece, IndexSet::from_runs(g)), delta > 0 ? meet(piece, from(b + 1)) : IndexSet::empty());
  p.less = join(meet(piece, IndexSet::from_runs(l)), delta < 0 ? meet(piece, from(b + 1)) : IndexSet::empty());
  return p;
}

}  // namespace

Decomposition decompose(const Stream& x) {
  Decomposition d;
  const Stream::Node& n = x.node();
  switch (n.kind) {
    case Stream::Kind::Piecewise: {
      IndexSet earlier = IndexSet::empty();
      for (const auto& c : n.clauses) {
        d.cells.push_back({first_match(c.set, earlier), Cell::Rule::Const, c.value, IndexSet::empty()});
        earlier = join(earlier, c.set);
      }
      IndexSet rest = earlier.is_empty_literal() ? IndexSet::nat() : IndexSet::complement(earlier);
      d.cells.push_back({rest, Cell::Rule::Const, n.value, IndexSet::empty()});
      break;
    }
    case Stream::Kind::RankFill: {
      IndexSet off = IndexSet::complement(n.set);
      d.cells.push_back({n.set, Cell::Rule::Const, n.value, IndexSet::empty()});
      d.cells.push_back({off, Cell::Rule::Rank, 1, off});
      break;
    }
    case Stream::Kind::Permuted: {
      d = decompose(x.base());
      d.head = std::max(d.head, n.perm.bound());
      break;
    }
  }
  return d;
}

Profile compare_profile(const Stream& x, const Stream& y) {
  Decomposition dx = decompose(x), dy = decompose(y);
  const std::uint64_t head = std::max(dx.head, dy.head);
  Profile out;
  out.greater = out.less = out.unknown = IndexSet::empty();

  if (head > 0) {
    std::vector<Run> g, l;
    for_each_pair(x, y, head, [&](std::uint64_t t, const Rational& a, const Rational& b) {
      Natural nt(static_cast<unsigned long>(t));
      if (a > b) add_run(g, nt, nt);
      if (a < b) add_run(l, nt, nt);
    });
    out.greater = IndexSet::from_runs(g);
    out.less = IndexSet::from_runs(l);
  }
  const IndexSet tail = head > 0 ? from(Natural(static_cast<unsigned long>(head + 1))) : IndexSet::nat();

  for (const Cell& cx : dx.cells) {
    for (const Cell& cy : dy.cells) {
      IndexSet piece = meet(meet(cx.region, cy.region), tail);
      if (setalg::is_empty(piece, Natural(1)) == setalg::Tri::Yes) continue;
      Parts p;
      try {
        if (cx.rule == Cell::Rule::Const && cy.rule == Cell::Rule::Const) {
          p = by_sign(piece, sgn(cx.value - cy.value));
        } else if (cx.rule == Cell::Rule::Rank && cy.rule == Cell::Rule::Const) {
          p = rank_vs_const(piece, cx.ranked, cx.value, cy.value, false);
        } else if (cx.rule == Cell::Rule::Const && cy.rule == Cell::Rule::Rank) {
          p = rank_vs_const(piece, cy.ranked, cy.value, cx.value, true);
        } else {
          p = rank_vs_rank(piece, cx.ranked, cx.value, cy.ranked, cy.value, out.notes);
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Unsupported && e.code() != ErrorCode::HorizonExceeded) throw;
        out.notes.push_back(e.what());
        p = Parts{};
        p.unknown = piece;
      }
      out.greater = join(out.greater, p.greater);
      out.less = join(out.less, p.less);
      out.unknown = join(out.unknown, p.unknown);
    }
  }
  return out;
}

Scan scan(const Stream& x, const Stream& y, std::uint64_t horizon) {
  Scan s;
  s.horizon = horizon;
  for_each_pair(x, y, horizon, [&](std::uint64_t t, const Rational& a, const Rational& b) {
    int c = cmp(a, b);
    if (c > 0) {
      ++s.greater;
      if (!s.first_greater) s.first_greater = t;
      s.last_greater = t;
    } else if (c < 0) {
      ++s.less;
      if (!s.first_less) s.first_less = t;
      s.last_less = t;
    } else {
      ++s.equal;
      if (!s.first_equal) s.first_equal = t;
      s.last_equal = t;
    }
    Rational gap = a - b;
    if (!s.min_gap || gap < *s.min_gap) s.min_gap = gap;
  });
  return s;
}

}  // namespace densitylab::streams
