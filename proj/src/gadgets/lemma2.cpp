#include <algorithm>

#include "densitylab/error.hpp"
#include "densitylab/gadgets/gadgets.hpp"
#include "densitylab/setalg/counting.hpp"
#include "densitylab/setalg/parse.hpp"
#include "densitylab/streams/profile.hpp"

namespace densitylab::gadgets {

namespace {

using Seq = std::vector<std::uint64_t>;

Natural fact(const Seq& t, std::size_t j) { return factorial(seq_at(t, j)); }

// t_1..t_len with the step-1 continuation made explicit.
Seq extend(const Seq& t, std::size_t len) {
  Seq out;
  for (std::size_t j = 1; j <= std::max(len, t.size()); ++j) out.push_back(seq_at(t, j));
  return out;
}

Seq drop_front(const Seq& t, std::size_t k) { return Seq(t.begin() + static_cast<long>(std::min(k, t.size())), t.end()); }

Integer quotient(const Natural& a, const Natural& b) { return a / b; }

void check_horizon(std::uint64_t horizon) {
  if (horizon > axioms::kMaxHorizon) {
    throw Error(ErrorCode::HorizonExceeded, "horizon " + std::to_string(horizon) + " exceeds the maximum");
  }
}

}  // namespace

std::uint64_t seq_at(const std::vector<std::uint64_t>& t, std::size_t j) {
  if (j == 0) throw Error(ErrorCode::Precondition, "sequence index must be >= 1");
  if (t.empty()) return j;
  if (j <= t.size()) return t[j - 1];
  return t.back() + (j - t.size());
}

void check_increasing(const std::vector<std::uint64_t>& t) {
  if (t.empty()) throw Error(ErrorCode::InvalidStructure, "sequence is empty");
  if (t.front() == 0) throw Error(ErrorCode::InvalidStructure, "sequence terms must be >= 1");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] <= t[i - 1]) throw Error(ErrorCode::InvalidStructure, "sequence must be strictly increasing");
  }
}

L2E1Check check_L2E1(const std::vector<std::uint64_t>& t, std::size_t m) {
  if (m < 2) throw Error(ErrorCode::Precondition, "m must be >= 2");
  check_increasing(t);
  if (t.size() < 2 * m + 2) throw Error(ErrorCode::InvalidStructure, "sequence needs at least 2m+2 terms");
  if (t[2] < 3) throw Error(ErrorCode::InvalidStructure, "t_3 must be >= 3");
  L2E1Check c;
  c.lhs = quotient(fact(t, 2 * m + 2), fact(t, 3));
  c.rhs = 0;
  std::vector<Integer> terms;
  for (std::size_t j = m; j >= 1; --j) {
    terms.push_back(quotient(fact(t, 2 * j + 2), fact(t, 2 * j + 1)));
    c.rhs += terms.back();
  }
  c.holds = c.lhs > c.rhs;
  c.parentheses_positive = true;
  for (const Integer& term : terms) {
    c.parentheses.push_back(c.lhs - Integer(static_cast<unsigned long>(m)) * term);
    if (c.parentheses.back() <= 0) c.parentheses_positive = false;
  }
  return c;
}

IndexSet block_set(const std::vector<std::uint64_t>& n) {
  check_increasing(n);
  std::string text = "fintervals[k>=1:(n(2k-1)!,n(2k+1)!-n(2k+1)!/n(2k)!];n=";
  for (std::size_t i = 0; i < n.size(); ++i) text += (i ? "," : "") + std::to_string(n[i]);
  return setalg::parse_index_set(text + "]");
}

Integer block_size(const std::vector<std::uint64_t>& n, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::Precondition, "block index must be >= 1");
  Natural hi = fact(n, 2 * k + 1);
  return hi - hi / fact(n, 2 * k) - fact(n, 2 * k - 1);
}

BlockCertificate block_certificate(const std::vector<std::uint64_t>& n, std::size_t m) {
  if (m == 0) throw Error(ErrorCode::Precondition, "m must be >= 1");
  BlockCertificate c;
  c.m = m;
  c.checkpoint = fact(n, 2 * m + 1);
  c.closed_form = 0;
  for (std::size_t k = 1; k <= m; ++k) c.closed_form += block_size(n, k);
  c.structural = setalg::count(block_set(n), c.checkpoint);
  c.lower_bound = Rational(1) - ratio(1, fact(n, 2 * m)) - ratio(fact(n, 2 * m - 1), c.checkpoint);
  c.ratio = ratio(c.closed_form, c.checkpoint);
  return c;
}

Stream lemma2_stream(const std::vector<std::uint64_t>& n) {
  return Stream::rank_fill(IndexSet::complement(block_set(n)));
}

bool lemma2_condition(const std::vector<std::uint64_t>& T, char which, std::size_t m) {
  if (which == 'a') return true;
  Integer lhs = block_size(T, 1);
  std::size_t from = 2;
  if (which == 'c') {
    lhs += block_size(T, 2);
    from = 3;
  }
  Integer rhs = 0;
  for (std::size_t k = from; k <= m; ++k) rhs += quotient(fact(T, 2 * k + 1), fact(T, 2 * k));
  return lhs < rhs;
}

Lemma2Gadget lemma2_build(const std::vector<std::uint64_t>& T, char which, std::size_t m) {
  check_increasing(T);
  if (which != 'a' && which != 'b' && which != 'c') {
    throw Error(ErrorCode::Precondition, std::string("unknown case '") + which + "'");
  }
  const std::size_t m_min = which == 'c' ? 3 : 2;
  const char* condition = which == 'c' ? "|U_1(T)| + |U_2(T)| < sum of t_{2k+1}!/t_{2k}!, k = 3..m"
                                       : "|U_1(T)| < sum of t_{2k+1}!/t_{2k}!, k = 2..m";
  if (which != 'a') {
    if (m == 0) {
      for (std::size_t k = m_min; 2 * k + 3 <= T.size(); ++k) {
        if (lemma2_condition(T, which, k)) {
          m = k;
          break;
        }
      }
      if (m == 0) {
        throw Error(ErrorCode::ConditionUnsatisfiable,
                    std::string("condition ") + condition + " fails for every m with 2m+3 <= prefix length");
      }
    } else {
      if (m < m_min) throw Error(ErrorCode::Precondition, "m must be >= " + std::to_string(m_min));
      if (!lemma2_condition(T, which, m)) {
        throw Error(ErrorCode::ConditionUnsatisfiable, std::string("condition ") + condition + " fails for m = " +
                                                           std::to_string(m));
      }
    }
  }

  Lemma2Gadget g;
  g.which = which;
  g.m = which == 'a' ? 0 : m;
  g.T = extend(T, 2 * g.m + 4);
  const Seq& t = g.T;
  if (which == 'a') {
    g.S = drop_front(t, 1);
  } else {
    std::size_t keep = which == 'b' ? 2 : 4;  // first kept index, then two terms
    g.S = {t[keep - 1], t[keep]};
    for (std::size_t j = 2 * g.m + 2; j <= t.size(); ++j) g.S.push_back(t[j - 1]);
  }
  g.UT = block_set(g.T);
  g.US = block_set(g.S);
  g.xT = lemma2_stream(g.T);
  g.yT = lemma2_stream(drop_front(g.T, 1));
  g.xS = lemma2_stream(g.S);
  g.yS = lemma2_stream(drop_front(g.S, 1));
  return g;
}

namespace {

Link labelled(const std::string& relation, Link::Kind kind, std::uint64_t horizon, const std::string& reason) {
  Link l;
  l.relation = relation;
  l.kind = kind;
  l.horizon = horizon;
  l.reason = reason;
  return l;
}

// Permute `lo` (or `hi`) inside [w0, w1] so that hi >= lo there, then check
// the permuted pair and the equivalence of the permuted stream.
void permuted_pair(std::vector<Link>& out, const std::string& equiv, const std::string& dom, const Stream& hi,
                   const Stream& lo, bool permute_hi, const Natural& w0n, const Natural& w1n, const IndexSet& ranked_hi,
                   std::uint64_t horizon) {
  if (!fits_u64(w1n) || to_u64(w1n) > horizon || to_u64(w1n) > axioms::kMaxWindow) {
    out.push_back(labelled(equiv, Link::Kind::Verified, horizon, "permutation window exceeds the horizon"));
    out.push_back(labelled(dom, Link::Kind::Verified, horizon, "permutation window exceeds the horizon"));
    return;
  }
  const std::uint64_t w0 = to_u64(w0n), w1 = to_u64(w1n), n = w1 - w0 + 1;
  std::vector<Rational> hv = hi.prefix(w1), lv = lo.prefix(w1);
  std::vector<Rational> a(hv.begin() + static_cast<long>(w0 - 1), hv.end());
  std::vector<Rational> b(lv.begin() + static_cast<long>(w0 - 1), lv.end());
  std::optional<FinitePermutation> p;
  if (permute_hi) {
    p = axioms::sort_match(a, b);
  } else {
    for (auto& v : a) v = -v;
    for (auto& v : b) v = -v;
    p = axioms::sort_match(b, a);
  }
  if (!p) {
    Link f = labelled(dom, Link::Kind::Verified, horizon, "no permutation of the window gives pointwise dominance");
    f.status = Status::Fails;
    out.push_back(labelled(equiv, Link::Kind::Verified, horizon, "no permutation constructed"));
    out.push_back(f);
    return;
  }
  std::vector<std::uint64_t> map(w1);
  for (std::uint64_t t = 1; t <= w1; ++t) map[t - 1] = t;
  for (std::uint64_t i = 1; i <= n; ++i) map[w0 + i - 2] = w0 - 1 + (*p)(i);
  FinitePermutation pi = FinitePermutation::from_map(std::move(map));
  const Stream& base = permute_hi ? hi : lo;
  Stream moved = Stream::permuted(base, pi);

  axioms::Verdict v = axioms::anonymity_equivalent(base, moved, horizon);
  Link eq = labelled(equiv, Link::Kind::Verified, horizon, v.reason);
  eq.method = "anonymity";
  eq.status = v.status;
  eq.permutation = pi;
  out.push_back(eq);

  IndexSet claimed = IndexSet::set_inter(ranked_hi, IndexSet::at_least(w1n + 1));
  Link d = permute_hi ? check_dominance(dom, moved, lo, claimed, horizon)
                      : check_dominance(dom, hi, moved, claimed, horizon);
  d.permutation = pi;
  out.push_back(d);
}

Link derived(const std::string& relation, const std::vector<Link>& links, std::uint64_t horizon) {
  Link l = labelled(relation, Link::Kind::Derived, horizon, "follows from the verified links and the assumed case");
  l.status = combine(links);
  return l;
}

}  // namespace

std::vector<Link> lemma2_verify_case(const Lemma2Gadget& g, std::uint64_t horizon) {
  check_horizon(horizon);
  std::vector<Link> out;
  const Seq& t = g.T;
  const std::size_t m = g.m;
  const IndexSet ranked_yT = block_set(drop_front(t, 1));
  const IndexSet ranked_yS = block_set(drop_front(g.S, 1));

  if (g.which == 'a') {
    out.push_back(labelled("x(T) < y(T)", Link::Kind::Assumed, horizon, "case hypothesis"));
    Link eq = labelled("y(T) = x(S)", Link::Kind::Verified, horizon, "");
    eq.method = "equality";
    streams::Scan s = streams::scan(g.yT, g.xS, horizon);
    if (s.greater || s.less) {
      eq.status = Status::Fails;
      eq.witness = Natural(static_cast<unsigned long>(s.first_greater ? *s.first_greater : *s.first_less));
    } else {
      eq.status = g.yT == g.xS ? Status::Holds : Status::Undecided;
      if (eq.status == Status::Undecided) eq.reason = "equal on the horizon only";
    }
    out.push_back(eq);
    out.push_back(check_dominance("x(T) > y(S)", g.xT, g.yS, g.UT, horizon));
    out.push_back(derived("y(S) < x(S)", out, horizon));
    return out;
  }

  const Natural f2 = factorial(t[1]), f_top = factorial(t[2 * m + 1]);
  if (g.which == 'b') {
    out.push_back(labelled("y(T) < x(T)", Link::Kind::Assumed, horizon, "case hypothesis"));
    permuted_pair(out, "x' ~ x(S)", "y(T) > x'", g.yT, g.xS, false, f2, f_top, ranked_yT, horizon);
    const Natural f3 = factorial(t[2 * m + 2]);
    permuted_pair(out, "y' ~ y(S)", "y' > x(T)", g.yS, g.xT, true, Natural(1), f3 - f3 / f_top, ranked_yS,
                  horizon);
  } else {
    out.push_back(labelled("x(T) ~ y(T)", Link::Kind::Assumed, horizon, "case hypothesis"));
    permuted_pair(out, "x' ~ x(S)", "y(T) > x'", g.yT, g.xS, false, f2 + 1, f_top, ranked_yT, horizon);
    permuted_pair(out, "x'' ~ x(T)", "y(S) > x''", g.yS, g.xT, false, factorial(t[0]) + 1, f_top, ranked_yS,
                  horizon);
  }
  out.push_back(derived("x(S) < y(S)", out, horizon));
  return out;
}

}  // namespace densitylab::gadgets
