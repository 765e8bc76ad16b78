#include "densitylab/setalg/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "densitylab/error.hpp"
#include "densitylab/setalg/asymptotic.hpp"
#include "densitylab/setalg/counting.hpp"
#include "densitylab/setalg/density.hpp"
#include "tail_model.hpp"

namespace densitylab::setalg {

namespace detail {

std::vector<char> TailModel::base_state(unsigned combo) const {
  std::vector<char> st(c.atoms.size(), 0);
  for (std::size_t j = 0; j < families.size(); ++j) {
    char v = (combo >> j) & 1;
    for (std::size_t i = 0; i < c.atoms.size(); ++i) {
      if (role[i] == Role::Family && rep[i] == families[j]) st[i] = v;
    }
  }
  return st;
}

Rational TailModel::periodic_density(unsigned combo) const {
  std::vector<char> st = base_state(combo);
  if (periodic.empty()) return c.eval(st) ? 1 : 0;
  std::vector<IndexSet> aps;
  for (int i : periodic) aps.push_back(c.atoms[i]);
  auto counts = pattern_counts(aps, start, start + period - 1);
  Natural hits = 0;
  for (std::size_t mask = 0; mask < counts.size(); ++mask) {
    if (counts[mask] == 0) continue;
    for (std::size_t j = 0; j < periodic.size(); ++j) st[periodic[j]] = (mask >> j) & 1;
    if (c.eval(st)) hits += counts[mask];
  }
  return ratio(hits, period);
}

TailModel build_tail_model(const IndexSet& s) {
  TailModel m;
  m.c = compile(s);
  const std::size_t n = m.c.atoms.size();
  m.role.assign(n, TailModel::Role::Eventual);
  m.rep.assign(n, -1);
  auto raise = [&](const Natural& v) {
    if (m.threshold < v) m.threshold = v;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const IndexSet& a = m.c.atoms[i];
    switch (a.kind()) {
      case Kind::Finite:
        if (!a.elements().empty()) raise(a.elements().back());
        break;
      case Kind::Interval: raise(a.hi()); break;
      case Kind::ArithProg:
        m.role[i] = TailModel::Role::Periodic;
        m.periodic.push_back(static_cast<int>(i));
        raise(a.ap_start());
        if (m.start < a.ap_start()) m.start = a.ap_start();
        m.period = lcm_of(m.period, a.ap_step());
        break;
      case Kind::FactorialPoints:
        m.role[i] = TailModel::Role::Sparse;
        m.sparse.push_back(static_cast<int>(i));
        break;
      case Kind::FactorialIntervals:
        if (!a.fi().has_family()) {
          if (!a.fi().explicit_blocks().empty()) raise(a.fi().explicit_blocks().back().last);
          break;
        }
        m.role[i] = TailModel::Role::Family;
        for (int r : m.families) {
          if (auto b = tail_equivalent(m.c.atoms[r], a)) {
            m.rep[i] = r;
            raise(*b);
            break;
          }
        }
        if (m.rep[i] < 0) {
          m.rep[i] = static_cast<int>(i);
          m.families.push_back(static_cast<int>(i));
        }
        break;
      default: break;
    }
  }
  if (m.periodic.size() > kMaxPeriodicAtoms) {
    throw Error(ErrorCode::Unsupported, "too many arithmetic progressions in one formula");
  }
  return m;
}

}  // namespace detail

namespace {

std::mutex g_family_mutex;
std::map<std::string, FamilyAsymptotics> g_family_cache;

FamilyAsymptotics compute_family(const FactorialIntervalsData& fi) {
  using namespace asym;
  FamilyAsymptotics out;
  const BlockFamily& fam = *fi.spec().family;
  const IndexSequence& seq = fi.spec().seq;
  auto first = [&](long shift) -> std::optional<Series> {
    auto s = from_bound(fam.block.lo.shift_k(shift), seq);
    if (!s) return std::nullopt;
    return *s + Series::constant(fam.block.lo_open ? 1 : 0);
  };
  auto last = [&](long shift) -> std::optional<Series> {
    auto s = from_bound(fam.block.hi.shift_k(shift), seq);
    if (!s) return std::nullopt;
    return *s - Series::constant(fam.block.hi_open ? 1 : 0);
  };
  auto l0 = first(0), l1 = first(1), lm = first(-1);
  auto h0 = last(0), hm = last(-1);
  if (!l0 || !l1 || !lm || !h0 || !hm) {
    out.note = "block bounds outside the factorial normal form";
    return out;
  }
  out.supported = true;
  Series one = Series::constant(1);
  Series size = *h0 - *l0 + one;
  Series size_prev = *hm - *lm + one;
  Series gap = *l1 - *h0 - one;

  auto is_inf = [](const std::optional<Limit>& l) { return l && l->kind == Limit::Kind::PlusInfinity; };
  out.long_blocks = is_inf(limit(size)) && is_inf(limit(gap));

  auto growth = ratio_limit(*hm, *h0);
  out.superexponential = growth && growth->kind == Limit::Kind::Value && growth->value == 0;
  if (!out.superexponential) {
    out.note = "block ends do not grow factorially";
    return out;
  }
  auto up = ratio_limit(size, *h0);
  auto low = ratio_limit(size_prev, *l0);
  if (up && up->kind == Limit::Kind::Value) out.upper = up->value;
  if (low && low->kind == Limit::Kind::Value) out.lower = low->value;
  if (!out.upper || !out.lower) out.note = "boundary ratio limits not decided";
  return out;
}

// Affine slope and offsets of every n(.) argument in a block template.
bool seq_arguments(const BoundExpr::Node& n, const IndexSequence& seq, long& slope, std::vector<long>& offsets) {
  using Op = BoundExpr::Op;
  if (n.op == Op::Seq) {
    BoundExpr arg = BoundExpr::from_node(n.lhs);
    if (arg.uses_seq()) return false;
    auto s = asym::from_bound(arg, seq);
    if (!s) return false;
    auto p = s->as_poly();
    if (!p || p->degree() != 1) return false;
    Rational a = p->c[1], b = p->c[0];
    if (a.get_den() != 1 || b.get_den() != 1 || a < 1) return false;
    long al = a.get_num().get_si();
    if (slope != 0 && slope != al) return false;
    slope = al;
    offsets.push_back(b.get_num().get_si());
    return true;
  }
  if (n.lhs && !seq_arguments(*n.lhs, seq, slope, offsets)) return false;
  if (n.rhs && !seq_arguments(*n.rhs, seq, slope, offsets)) return false;
  return true;
}

Natural explicit_max(const FactorialIntervalsData& fi) {
  return fi.explicit_blocks().empty() ? Natural(0) : fi.explicit_blocks().back().last;
}

}  // namespace

const FamilyAsymptotics& family_asymptotics(const FactorialIntervalsData& fi) {
  std::string key = fi.to_dsl();
  {
    std::lock_guard<std::mutex> lock(g_family_mutex);
    auto it = g_family_cache.find(key);
    if (it != g_family_cache.end()) return it->second;
  }
  FamilyAsymptotics value = compute_family(fi);
  std::lock_guard<std::mutex> lock(g_family_mutex);
  return g_family_cache.emplace(key, std::move(value)).first->second;
}

std::optional<Natural> tail_equivalent(const IndexSet& f1, const IndexSet& f2) {
  if (f1.kind() != Kind::FactorialIntervals || f2.kind() != Kind::FactorialIntervals) return std::nullopt;
  const auto& a = f1.fi();
  const auto& b = f2.fi();
  if (!a.has_family() || !b.has_family()) return std::nullopt;
  const BlockFamily& fa = *a.spec().family;
  const BlockFamily& fb = *b.spec().family;
  if (block_to_dsl(fa.block) != block_to_dsl(fb.block)) return std::nullopt;
  try {
    Natural bound = explicit_max(a);
    if (bound < explicit_max(b)) bound = explicit_max(b);
    bool uses_seq = fa.block.lo.uses_seq() || fa.block.hi.uses_seq();
    long p = 0;
    long kstar = std::max(fa.k0, fb.k0);
    if (uses_seq) {
      long slope = 0;
      std::vector<long> offsets;
      if (!seq_arguments(fa.block.lo.root(), b.spec().seq, slope, offsets) ||
          !seq_arguments(fa.block.hi.root(), b.spec().seq, slope, offsets)) {
        return std::nullopt;
      }
      Integer c1 = a.spec().seq.tail_offset(), c2 = b.spec().seq.tail_offset();
      Integer shift = c2 - c1;
      Integer rem;
      mpz_fdiv_r_ui(rem.get_mpz_t(), shift.get_mpz_t(), static_cast<unsigned long>(slope));
      if (rem != 0) return std::nullopt;
      long ap = shift.get_si();  // alpha * p
      p = ap / slope;
      long len1 = static_cast<long>(a.spec().seq.prefix().size());
      long len2 = static_cast<long>(b.spec().seq.prefix().size());
      long ibig = std::max(len1 - ap, len2) + 1;
      long lowest = std::max(1L, 1 - ap);
      long istar = std::max(ibig, lowest);
      for (long i = ibig - 1; i >= lowest; --i) {
        if (b.spec().seq.at(Integer(i)) != a.spec().seq.at(Integer(i + ap))) break;
        istar = i;
      }
      long bmin = *std::min_element(offsets.begin(), offsets.end());
      long need = istar - bmin;
      long kmin = need <= 0 ? 0 : (need + slope - 1) / slope;
      kstar = std::max({kmin, fb.k0, fa.k0 - p});
    }
    Run rb = b.family_block(kstar);
    Run ra = a.family_block(kstar + p);
    if (ra.first != rb.first || ra.last != rb.last) return std::nullopt;
    Natural x = rb.first - 1;
    if (bound < x) bound = x;
    return bound;
  } catch (const Error&) {
    return std::nullopt;
  }
}

Finiteness analyze_finiteness(const IndexSet& s) {
  using detail::TailModel;
  Finiteness out;
  TailModel m;
  try {
    m = detail::build_tail_model(s);
  } catch (const Error& e) {
    out.reason = e.what();
    return out;
  }
  if (m.families.size() > detail::kMaxTailFamilies) {
    out.reason = "too many independent block families";
    return out;
  }
  const unsigned combos = 1u << m.families.size();
  bool positive = false;
  for (unsigned combo = 0; combo < combos; ++combo) {
    if (m.periodic_density(combo) > 0) positive = true;
  }
  if (positive) {
    if (m.families.empty()) {
      out.status = Finiteness::Status::Infinite;
      out.reason = "periodic tail has positive density";
      return out;
    }
    if (m.families.size() == 1 && family_asymptotics(m.c.atoms[m.families[0]].fi()).long_blocks) {
      out.status = Finiteness::Status::Infinite;
      out.reason = "tail meets a block family with unbounded blocks and gaps";
      return out;
    }
    try {
      DensityResult d = density(s);
      if (d.exact && d.upper > 0) {
        out.status = Finiteness::Status::Infinite;
        out.reason = "positive upper density";
        return out;
      }
    } catch (const Error&) {
    }
    out.reason = "tail combines several block families";
    return out;
  }
  if (m.sparse.empty()) {
    out.status = Finiteness::Status::Finite;
    out.bound = m.threshold;
    out.reason = "tail above " + m.threshold.get_str() + " is empty";
    return out;
  }
  if (!m.families.empty()) {
    out.reason = "factorial points combined with block families";
    return out;
  }
  // At m! for large m every progression state is fixed (m! ≡ 0 mod d), and
  // factorial-point atoms reduce to membership of m in their bases.
  std::vector<IndexSet> subst;
  Natural max_step = 1;
  for (std::size_t i = 0; i < m.c.atoms.size(); ++i) {
    const IndexSet& a = m.c.atoms[i];
    switch (m.role[i]) {
      case TailModel::Role::Periodic: {
        Natural r;
        mpz_fdiv_r(r.get_mpz_t(), a.ap_start().get_mpz_t(), a.ap_step().get_mpz_t());
        subst.push_back(r == 0 ? IndexSet::nat() : IndexSet::empty());
        if (max_step < a.ap_step()) max_step = a.ap_step();
        break;
      }
      case TailModel::Role::Sparse: subst.push_back(a.lhs()); break;
      default: subst.push_back(IndexSet::empty()); break;
    }
  }
  IndexSet derived = m.c.rebuild(subst);
  Finiteness inner = analyze_finiteness(derived);
  if (inner.status == Finiteness::Status::Infinite) {
    out.status = Finiteness::Status::Infinite;
    out.reason = "infinitely many factorial points remain";
    return out;
  }
  if (inner.status == Finiteness::Status::Unknown) {
    out.reason = "factorial index set undecided: " + inner.reason;
    return out;
  }
  unsigned long m0 = 2;
  Natural f = 2;
  while (f <= m.threshold || Natural(m0) < max_step) {
    ++m0;
    f *= m0;
  }
  Natural top = inner.bound < m0 ? Natural(m0) : inner.bound;
  if (top > kMaxFactorialArgument) {
    out.reason = "factorial bound too large";
    return out;
  }
  out.status = Finiteness::Status::Finite;
  out.bound = factorial(top.get_ui());
  if (out.bound < m.threshold) out.bound = m.threshold;
  out.reason = "only finitely many factorial points remain";
  return out;
}

Tri is_empty(const IndexSet& s, const Natural& horizon) {
  Finiteness f = analyze_finiteness(s);
  if (f.status == Finiteness::Status::Infinite) return Tri::No;
  if (f.status == Finiteness::Status::Finite) return count(s, f.bound) == 0 ? Tri::Yes : Tri::No;
  return count(s, horizon) > 0 ? Tri::No : Tri::Unknown;
}

IndexSet sym_diff(const IndexSet& a, const IndexSet& b) {
  return IndexSet::set_union(IndexSet::difference(a, b), IndexSet::difference(b, a));
}

SymDiffVerdict sym_diff_finite(const IndexSet& a, const IndexSet& b, const Natural& horizon) {
  SymDiffVerdict v;
  v.horizon = horizon;
  if (a == b) {
    v.status = SymDiffVerdict::Status::Finite;
    v.structural = true;
    v.reason = "structurally equal";
    return v;
  }
  IndexSet d = sym_diff(a, b);
  Finiteness f = analyze_finiteness(d);
  v.reason = f.reason;
  if (f.status == Finiteness::Status::Finite) {
    v.status = SymDiffVerdict::Status::Finite;
    v.bound = f.bound;
    v.structural = true;
    return v;
  }
  if (f.status == Finiteness::Status::Infinite) {
    v.status = SymDiffVerdict::Status::Infinite;
    v.structural = true;
    return v;
  }
  Natural c = count(d, horizon);
  if (c > 0) v.last_witness = nth_element(d, c);
  return v;
}

}  // namespace densitylab::setalg

namespace densitylab::setalg {

std::optional<Periodicity> eventual_period(const IndexSet& s) {
  detail::TailModel m;
  try {
    m = detail::build_tail_model(s);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!m.families.empty() || !m.sparse.empty()) return std::nullopt;
  return Periodicity{m.threshold, m.period};
}

}  // namespace densitylab::setalg
