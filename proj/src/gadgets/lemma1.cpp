#include <algorithm>

#include "densitylab/error.hpp"
#include "densitylab/gadgets/gadgets.hpp"
#include "densitylab/setalg/counting.hpp"
#include "densitylab/streams/profile.hpp"

namespace densitylab::gadgets {

namespace {

Natural nat_of(std::uint64_t t) { return Natural(static_cast<unsigned long>(t)); }

void check_unit(const Rational& r, const char* name) {
  if (r <= 0 || r >= 1) throw Error(ErrorCode::Precondition, std::string(name) + " must lie in (0,1)");
}

void check_horizon(std::uint64_t horizon) {
  if (horizon > axioms::kMaxHorizon) {
    throw Error(ErrorCode::HorizonExceeded, "horizon " + std::to_string(horizon) + " exceeds the maximum");
  }
}

Link undecided(const std::string& relation, std::uint64_t horizon, const std::string& reason) {
  Link l;
  l.relation = relation;
  l.horizon = horizon;
  l.status = Status::Undecided;
  l.reason = reason;
  return l;
}

}  // namespace

std::vector<std::uint64_t> u_sequence(const Rational& r, std::size_t K) {
  check_unit(r, "r");
  std::vector<std::uint64_t> u;
  for (std::uint64_t n = 1; n <= kMaxEnumIndex && u.size() < K; ++n) {
    if (rational_enum(n) >= r) u.push_back(n);
  }
  if (u.size() < K) {
    throw Error(ErrorCode::Unsupported, "fewer than " + std::to_string(K) + " enumeration indices with q_n >= " +
                                            to_string(r) + " among the first " + std::to_string(kMaxEnumIndex));
  }
  return u;
}

Lemma1Gadget lemma1_from_base(std::vector<std::uint64_t> base) {
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  if (base.empty() || base.front() == 0) {
    throw Error(ErrorCode::InvalidStructure, "base must be a nonempty set of positive indices");
  }
  Lemma1Gadget g;
  g.u = base;
  std::vector<Natural> idx;
  for (auto n : base) idx.push_back(nat_of(n));
  g.U = IndexSet::factorial_points(IndexSet::finite(idx));
  g.L = IndexSet::complement(g.U);
  g.x = Stream::rank_fill(g.U);
  g.z = Stream::rank_fill(IndexSet::difference(g.U, IndexSet::finite({factorial(base.front())})));
  return g;
}

Lemma1Gadget lemma1_build(const Rational& r, std::size_t K) {
  Lemma1Gadget g = lemma1_from_base(u_sequence(r, K));
  g.r = r;
  return g;
}

Link lemma1_verify_P1Ea(const Lemma1Gadget& g, std::uint64_t horizon) {
  check_horizon(horizon);
  Natural p0 = factorial(g.u.front());
  IndexSet S = IndexSet::difference(IndexSet::at_least(p0 + 1), g.U);
  Link l = check_dominance("z(r) > x(r)", g.z, g.x, S, horizon);
  if (l.status == Status::Holds) {
    std::vector<char> in = setalg::membership_prefix(S, horizon);
    std::vector<std::string> extra;
    streams::for_each_pair(g.z, g.x, horizon, [&](std::uint64_t t, const Rational& a, const Rational& b) {
      if (a > b && !in[t]) extra.push_back(std::to_string(t));
    });
    for (const auto& t : extra) l.notes.push_back("strict outside the claimed set at t = " + t);
  }
  return l;
}

Lemma1Comparison lemma1_case_compare(const Lemma1Gadget& gr, const Lemma1Gadget& gs, std::uint64_t horizon) {
  check_horizon(horizon);
  if (!std::includes(gr.u.begin(), gr.u.end(), gs.u.begin(), gs.u.end())) {
    throw Error(ErrorCode::Precondition, "U(s) must be a subset of U(r)");
  }
  std::vector<std::uint64_t> rs;
  std::set_difference(gr.u.begin(), gr.u.end(), gs.u.begin(), gs.u.end(), std::back_inserter(rs));
  if (rs.size() < 2) throw Error(ErrorCode::NotEnoughElements, "U(r) \\ U(s) has fewer than two elements");

  Lemma1Comparison c;
  c.r = gr;
  c.s = gs;
  c.p0 = factorial(gr.u.front());
  c.u1 = factorial(rs[0]);
  c.u2 = factorial(rs[1]);
  c.which = c.u1 == c.p0 ? 'a' : 'b';
  IndexSet claimed = IndexSet::difference(IndexSet::at_least(c.u2), gs.U);

  if (c.which == 'a') {
    c.links.push_back(check_dominance("x(s) > z(r)", gs.x, gr.z, claimed, horizon));
    c.status = combine(c.links);
    return c;
  }

  const std::string dom = "x(s) > z^pi";
  if (!fits_u64(c.u1) || to_u64(c.u1) > horizon || to_u64(c.u1) > streams::kMaxPermutationBound) {
    c.links.push_back(undecided("z^pi ~ z(r)", horizon, "permutation window exceeds the horizon"));
    c.links.push_back(undecided(dom, horizon, "permutation window exceeds the horizon"));
    c.status = Status::Undecided;
    return c;
  }
  const std::uint64_t p0 = to_u64(c.p0), u1 = to_u64(c.u1);

  Link wit;
  wit.relation = "z(r) > x(s) somewhere";
  wit.horizon = horizon;
  wit.method = "scan";
  streams::Scan sc = streams::scan(gs.x, gr.z, horizon);
  if (sc.first_less) {
    wit.status = Status::Holds;
    wit.witness = nat_of(*sc.first_less);
  } else {
    wit.status = Status::Fails;
    wit.reason = "x(s) >= z(r) on the whole horizon";
  }
  c.links.push_back(wit);

  std::vector<char> inU = setalg::membership_prefix(gr.U, u1);
  std::vector<std::uint64_t> a;
  for (std::uint64_t t = p0; t <= u1; ++t) {
    if (!inU[t]) a.push_back(t);
  }
  std::vector<std::uint64_t> map(u1);
  for (std::uint64_t t = 1; t <= u1; ++t) map[t - 1] = t;
  map[p0 - 1] = u1;
  if (a.empty()) {
    map[u1 - 1] = p0;
  } else {
    map[a.front() - 1] = p0;
    for (std::size_t j = 1; j < a.size(); ++j) map[a[j] - 1] = a[j - 1];
    map[u1 - 1] = a.back();
  }
  c.permutation = FinitePermutation::from_map(std::move(map));
  c.z_pi = Stream::permuted(gr.z, *c.permutation);

  axioms::Verdict an = axioms::anonymity_equivalent(gr.z, *c.z_pi, horizon);
  Link anl;
  anl.relation = "z^pi ~ z(r)";
  anl.method = "anonymity";
  anl.horizon = horizon;
  anl.status = an.status;
  anl.permutation = an.permutation;
  anl.reason = an.reason;
  c.links.push_back(anl);

  c.links.push_back(check_dominance(dom, gs.x, *c.z_pi, claimed, horizon));
  c.status = combine(c.links);
  return c;
}

Lemma1Comparison lemma1_case_compare(const Rational& r, const Rational& s, std::uint64_t horizon, std::size_t K) {
  check_unit(r, "r");
  check_unit(s, "s");
  if (!(r < s)) throw Error(ErrorCode::Precondition, "r must be smaller than s");
  Lemma1Gadget gr = lemma1_build(r, K);
  std::vector<std::uint64_t> base;
  for (std::uint64_t n : gr.u) {
    if (rational_enum(n) >= s) base.push_back(n);
  }
  if (base.empty()) throw Error(ErrorCode::NotEnoughElements, "U(s) is empty below the index cutoff");
  Lemma1Gadget gs = lemma1_from_base(base);
  gs.r = s;
  return lemma1_case_compare(gr, gs, horizon);
}

}  // namespace densitylab::gadgets
