#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "densitylab/error.hpp"
#include "densitylab/gadgets/gadgets.hpp"
#include "oracles.hpp"

using namespace densitylab;
using namespace densitylab::gadgets;

namespace {

std::vector<Rational> R(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long a : v) out.push_back(make_rational(a));
  return out;
}

// Level-by-level mediant insertion between neighbours of the previous row.
std::vector<Rational> stern_brocot_levels(std::size_t levels) {
  std::vector<std::pair<long, long>> row = {{0, 1}, {1, 1}};
  std::vector<Rational> out;
  for (std::size_t d = 0; d < levels; ++d) {
    std::vector<std::pair<long, long>> next;
    for (std::size_t i = 0; i + 1 < row.size(); ++i) {
      next.push_back(row[i]);
      auto [a, b] = row[i];
      auto [c, e] = row[i + 1];
      next.push_back({a + c, b + e});
      out.push_back(make_rational(a + c, b + e));
    }
    next.push_back(row.back());
    row = next;
  }
  return out;
}

int status_of(const Link& l) { return static_cast<int>(l.status); }

}  // namespace

TEST_CASE("rational enumeration") {
  auto first = rational_prefix(8);
  CHECK(first == std::vector<Rational>{make_rational(1, 2), make_rational(1, 3), make_rational(2, 3),
                                       make_rational(1, 4), make_rational(2, 5), make_rational(3, 5),
                                       make_rational(3, 4), make_rational(1, 5)});
  CHECK(rational_prefix(1023) == stern_brocot_levels(10));

  std::set<std::string> seen;
  for (std::uint64_t k = 1; k <= 10000; ++k) {
    Rational q = rational_enum(k);
    CHECK(q > 0);
    CHECK(q < 1);
    seen.insert(to_string(q));
  }
  CHECK(seen.size() == 10000);

  // every p/q with q <= 6 lies in the first five levels (31 terms)
  auto head = rational_prefix(31);
  for (long q = 2; q <= 6; ++q) {
    for (long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      CHECK(std::find(head.begin(), head.end(), make_rational(p, q)) != head.end());
    }
  }
  CHECK(head.back() == make_rational(5, 6));
  CHECK_THROWS_AS(rational_enum(0), Error);
}

TEST_CASE("lemma1 gadget from the explicit base") {
  Lemma1Gadget g = lemma1_from_base({1, 2, 3, 4, 7});
  CHECK(g.x.prefix(7) == R({1, 1, 2, 3, 4, 1, 5}));
  CHECK(g.z.prefix(7) == R({2, 1, 3, 4, 5, 1, 6}));
  // around 7! = 5040: 5039 - 4 members of U below it, plus one
  CHECK(g.x.eval(5039) == 5036);
  CHECK(g.x.eval(5040) == 1);
  CHECK(g.z.eval(5041) == g.x.eval(5041) + 1);
}

TEST_CASE("lemma1 u-sequence and strict improvement") {
  auto u = u_sequence(make_rational(1, 3), 20);
  CHECK(u.size() == 20);
  CHECK(std::is_sorted(u.begin(), u.end()));
  CHECK(std::adjacent_find(u.begin(), u.end()) == u.end());
  for (auto n : u) CHECK(rational_enum(n) >= make_rational(1, 3));
  // no index is skipped
  for (std::uint64_t n = 1; n < u.back(); ++n) {
    bool in = std::find(u.begin(), u.end(), n) != u.end();
    CHECK(in == (rational_enum(n) >= make_rational(1, 3)));
  }

  Lemma1Gadget g = lemma1_build(make_rational(1, 3));
  Link l = lemma1_verify_P1Ea(g, 5040);
  CHECK(status_of(l) == static_cast<int>(Status::Holds));
  REQUIRE(l.density);
  CHECK(l.density->has_density());
  CHECK(l.density->lower == 1);

  // base {3, ...}: first strict coordinate is 3! = 6
  Lemma1Gadget late = lemma1_from_base({3, 5, 6});
  CHECK(status_of(lemma1_verify_P1Ea(late, 5)) == static_cast<int>(Status::Undecided));
  CHECK(status_of(lemma1_verify_P1Ea(late, 720)) == static_cast<int>(Status::Holds));

  IndexSet S = IndexSet::difference(IndexSet::at_least(Natural(2)), g.U);
  CHECK(status_of(check_dominance("z vs z", g.z, g.z, S, 720)) == static_cast<int>(Status::Fails));
}

TEST_CASE("lemma1 explicit base comparison") {
  Lemma1Gadget gr = lemma1_from_base({1, 2, 3, 4, 7});
  Lemma1Gadget gs = lemma1_from_base({1, 2, 7});
  CHECK(gs.x.prefix(7) == R({1, 1, 2, 3, 4, 5, 6}));
  Lemma1Comparison c = lemma1_case_compare(gr, gs, 5040);
  CHECK(c.which == 'b');
  CHECK(c.p0 == 1);
  CHECK(c.u1 == 6);
  CHECK(c.u2 == 24);
  REQUIRE(c.permutation);
  const auto& pi = *c.permutation;
  CHECK(pi(1) == 6);
  CHECK(pi(3) == 1);
  CHECK(pi(4) == 3);
  CHECK(pi(5) == 4);
  CHECK(pi(6) == 5);
  CHECK(pi(2) == 2);
  REQUIRE(c.z_pi);
  auto zp = c.z_pi->prefix(30), xs = gs.x.prefix(30);
  CHECK(std::vector<Rational>(zp.begin(), zp.begin() + 7) == R({1, 1, 2, 3, 4, 5, 6}));
  for (int t = 1; t < 24; ++t) CHECK(xs[t - 1] == zp[t - 1]);
  CHECK(xs[23] == 23);
  CHECK(zp[23] == 1);
  CHECK(c.status == Status::Holds);
  for (const Link& l : c.links) CHECK(l.status == Status::Holds);
}

TEST_CASE("lemma1 case comparison for 1/3 and 2/3") {
  Lemma1Comparison c = lemma1_case_compare(make_rational(1, 3), make_rational(2, 3), 5040);
  // q_1 = 1/2 lies in [1/3, 2/3)
  CHECK(c.which == 'a');
  CHECK(c.u1 == c.p0);
  CHECK(c.status == Status::Holds);
  CHECK_THROWS_AS(lemma1_case_compare(make_rational(1, 3), make_rational(1, 3)), Error);
  CHECK_THROWS_AS(lemma1_case_compare(make_rational(2, 3), make_rational(1, 3)), Error);

  // q_1 = 1/2 >= s puts the first index in U(s): case b
  Lemma1Comparison b = lemma1_case_compare(make_rational(1, 3), make_rational(2, 5), 5040);
  CHECK(b.u2 == factorial(10));
  CHECK(b.status == Status::Undecided);
  b = lemma1_case_compare(make_rational(1, 3), make_rational(2, 5), axioms::kMaxHorizon);
  CHECK(b.which == 'b');
  CHECK(b.status == Status::Holds);
}

TEST_CASE("factorial inequality and its per-term grouping") {
  L2E1Check c = check_L2E1({1, 2, 3, 4, 5, 6}, 2);
  CHECK(c.lhs == 120);
  CHECK(c.rhs == 10);
  CHECK(c.holds);
  CHECK(c.parentheses_positive);
  CHECK(c.parentheses == std::vector<Integer>{Integer(108), Integer(112)});
  CHECK(check_L2E1({2, 3, 4, 5, 6, 7, 8, 9}, 3).holds);
  CHECK(check_L2E1({2, 3, 4, 5, 6, 7, 8, 9}, 3).parentheses_positive);
  CHECK_THROWS_AS(check_L2E1({1, 2, 3, 4, 5, 6}, 1), Error);
  CHECK_THROWS_AS(check_L2E1({1, 2, 3, 4, 5}, 2), Error);
  CHECK_THROWS_AS(check_L2E1({1, 3, 2, 4, 5, 6}, 2), Error);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    std::size_t m = 2 + i % 3;
    std::vector<std::uint64_t> t;
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < 2 * m + 2; ++j) t.push_back(v += 1 + rng() % 3);
    if (t[2] < 3) continue;
    L2E1Check r = check_L2E1(t, m);
    CHECK(r.holds);
    CHECK(r.parentheses_positive);
  }
}

TEST_CASE("U(N) blocks") {
  CHECK(block_size({1, 2, 3}, 1) == 2);
  IndexSet u = block_set({1, 2, 3, 4, 5});
  auto in = oracle::prefix(u, 120);
  std::uint64_t c = 0;
  for (std::uint64_t t = 1; t <= 6; ++t) c += in[t];
  CHECK(c == 2);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    std::vector<std::uint64_t> n;
    std::uint64_t v = 0;
    for (int j = 0; j < 9; ++j) n.push_back(v += 1 + rng() % 2);
    for (std::size_t m = 1; 2 * m + 1 <= n.size(); ++m) {
      if (n[2 * m] > 9) break;
      BlockCertificate b = block_certificate(n, m);
      auto counts = oracle::counts(oracle::prefix(block_set(n), to_u64(b.checkpoint)));
      CHECK(b.closed_form == Natural(static_cast<unsigned long>(counts.back())));
      CHECK(b.structural == b.closed_form);
      CHECK(b.ratio >= b.lower_bound);
      CHECK(ratio(block_size(n, m), b.checkpoint) == b.lower_bound);
    }
  }
}

TEST_CASE("lemma2 gadget construction") {
  Lemma2Gadget a = lemma2_build({1, 2, 3, 4, 5, 6, 7, 8}, 'a');
  CHECK(a.xT.prefix(7) == R({1, 2, 3, 1, 1, 1, 4}));
  CHECK(a.yT.prefix(4) == R({1, 1, 2, 3}));
  CHECK(a.xT.eval(115) == 112);
  CHECK(a.yT == a.xS);

  Lemma2Gadget b = lemma2_build({1, 2, 3, 4, 5, 6, 7, 8}, 'b');
  CHECK(b.m == 2);
  CHECK(std::vector<std::uint64_t>(b.S.begin(), b.S.begin() + 5) == std::vector<std::uint64_t>{2, 3, 6, 7, 8});
  CHECK(std::includes(b.T.begin(), b.T.end(), b.S.begin(), b.S.end()));

  CHECK_THROWS_AS(lemma2_build({1, 2, 3, 4, 5, 6, 7, 8}, 'c'), Error);
  try {
    lemma2_build({1, 2, 3, 4, 5, 6, 7, 8}, 'c');
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConditionUnsatisfiable);
  }
  CHECK_THROWS_AS(lemma2_build({1, 2, 3, 4, 5, 6, 7, 8}, 'b', 1), Error);
}

TEST_CASE("lemma2 case verification") {
  auto verified_hold = [](const std::vector<Link>& links) {
    for (const Link& l : links) {
      if (l.kind == Link::Kind::Verified && l.status != Status::Holds) return false;
    }
    return true;
  };
  auto la = lemma2_verify_case(lemma2_build({1, 2, 3, 4, 5, 6, 7, 8}, 'a'), 5040);
  CHECK(la.front().kind == Link::Kind::Assumed);
  CHECK(la.back().kind == Link::Kind::Derived);
  CHECK(verified_hold(la));

  auto lb = lemma2_verify_case(lemma2_build({1, 2, 3, 4, 5, 6, 7, 8}, 'b'), 40320);
  CHECK(verified_hold(lb));
  for (const Link& l : lb) {
    if (l.permutation) CHECK(l.permutation->bound() <= 40320);
  }
}

TEST_CASE("lemma2 case c within the window limit") {
  Lemma2Gadget c = lemma2_build({1, 2, 3, 4, 5, 6, 9, 10, 11}, 'c');
  CHECK(c.m == 3);
  CHECK(std::vector<std::uint64_t>(c.S.begin(), c.S.begin() + 4) == std::vector<std::uint64_t>{4, 5, 10, 11});
  CHECK(lemma2_condition(c.T, 'c', 3));
  CHECK_FALSE(lemma2_condition({1, 2, 3, 4, 5, 6, 7, 8, 9}, 'c', 3));
  // windows reach 10!, beyond this horizon
  auto links = lemma2_verify_case(c, 5040);
  CHECK(combine(links) == Status::Undecided);
  for (const Link& l : links) CHECK(l.status != Status::Fails);
}
