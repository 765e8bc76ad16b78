#include <functional>
#include <random>

#include "doctest.h"
#include "densitylab/error.hpp"
#include "densitylab/setalg/analysis.hpp"
#include "densitylab/setalg/counting.hpp"
#include "densitylab/setalg/density.hpp"
#include "densitylab/setalg/parse.hpp"
#include "oracles.hpp"

using namespace densitylab;
using namespace densitylab::setalg;

namespace {

IndexSet P(const char* s) { return parse_index_set(s); }

const char* kAlternating = "fintervals[k>=1: [(2k-1)!, (2k)!]]";

void check_against_oracle(const IndexSet& s, std::uint64_t n) {
  auto mem = oracle::prefix(s, n);
  auto c = oracle::counts(mem);
  for (std::uint64_t t = 1; t <= n; ++t) {
    REQUIRE(member(s, Natural(t)) == static_cast<bool>(mem[t]));
  }
  for (std::uint64_t t = 1; t <= n; t += 7) REQUIRE(count(s, Natural(t)) == c[t]);
  std::uint64_t m = 1;
  for (std::uint64_t t = 1; t <= n; ++t) {
    if (mem[t]) {
      REQUIRE(nth_element(s, Natural(m)) == t);
      ++m;
    }
  }
}

}  // namespace

TEST_CASE("count on basic sets") {
  CHECK(count(P("ap(1,2)"), 10) == 5);
  CHECK(count(P("factorials(nat)"), 720) == 6);
  CHECK(count(P("factorials"), 719) == 5);
  IndexSet s = P("union(ap(3,5), factorials(finite{2,3,5}))");
  for (int n : {1, 10, 100, 1000}) CHECK(count(IndexSet::complement(s), n) == n - count(s, n));
}

TEST_CASE("member") {
  CHECK(member(P("factorials"), 24));
  CHECK_FALSE(member(P("ap(2,3)"), 7));
  CHECK_FALSE(member(P("diff(interval(1,10), finite{5})"), 5));
  CHECK(member(P("diff(interval(1,10), finite{5})"), 6));
}

TEST_CASE("nth_element") {
  CHECK(nth_element(P("compl(factorials(nat))"), 1) == 3);
  CHECK(nth_element(P("ap(1,2)"), 4) == 7);
  CHECK_THROWS_AS(nth_element(P("finite{2,9}"), 3), Error);
  try {
    nth_element(P("finite{2,9}"), 3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotEnoughElements);
  }
}

TEST_CASE("structural counting agrees with brute force") {
  const char* sets[] = {
      "union(ap(2,3), compl(ap(1,4)))",
      "diff(inter(compl(factorials), ap(1,2)), interval(10,40))",
      kAlternating,
      "union(fintervals[k>=1: [(2k-1)!, (2k)!]], ap(3,7))",
      "inter(fintervals[(3!,4!]; [5! - 5!/4!, 6!); k>=6: [k!+1, k!+k]], compl(ap(2,2)))",
      "fintervals[k>=1: (n(2k-1)!, n(2k+1)! - n(2k+1)!/n(2k)!]; n=1,2,3]",
      "factorials(compl(finite{2,4}))",
  };
  for (const char* s : sets) {
    CAPTURE(s);
    check_against_oracle(P(s), 6000);
  }
}

TEST_CASE("count matches brute force at 10!") {
  IndexSet s = P("union(inter(fintervals[k>=1: [(2k-1)!, (2k)!]], ap(2,3)), factorials)");
  auto c = oracle::counts(oracle::prefix(s, 3628800));
  for (std::uint64_t n : {5040ULL, 40320ULL, 362880ULL, 3628800ULL, 1234567ULL}) CHECK(count(s, n) == c[n]);
}

TEST_CASE("random formulas agree with brute force") {
  std::mt19937_64 rng(7);
  const char* leaves[] = {"ap(1,3)", "ap(2,4)", "finite{3,7,19,50}", "interval(20,90)", "factorials",
                          kAlternating, "fintervals[k>=3: [k!, k! + 2k]]"};
  std::function<std::string(int)> gen = [&](int depth) -> std::string {
    if (depth == 0 || rng() % 3 == 0) return leaves[rng() % 7];
    switch (rng() % 4) {
      case 0: return "union(" + gen(depth - 1) + "," + gen(depth - 1) + ")";
      case 1: return "inter(" + gen(depth - 1) + "," + gen(depth - 1) + ")";
      case 2: return "diff(" + gen(depth - 1) + "," + gen(depth - 1) + ")";
      default: return "compl(" + gen(depth - 1) + ")";
    }
  };
  for (int i = 0; i < 40; ++i) {
    std::string text = gen(3);
    CAPTURE(text);
    IndexSet s = P(text.c_str());
    auto c = oracle::counts(oracle::prefix(s, 800));
    for (std::uint64_t n = 1; n <= 800; n += 13) REQUIRE(count(s, n) == c[n]);
  }
}

TEST_CASE("densities") {
  DensityResult f = density(P("factorials(nat)"));
  CHECK(f.exact);
  CHECK(f.lower == 0);
  CHECK(f.upper == 0);
  DensityResult g = density(P("compl(factorials(nat))"));
  CHECK(g.exact);
  CHECK(g.lower == 1);
  CHECK(g.upper == 1);
  for (int d = 1; d <= 7; ++d) {
    std::string t = "ap(" + std::to_string(d) + "," + std::to_string(d) + ")";
    DensityResult r = density(P(t.c_str()));
    CHECK(r.exact);
    CHECK(r.lower == Rational(1, d));
    CHECK(r.upper == Rational(1, d));
    // brute-force ratio at 10! within d / n
    Rational ratio(count(P(t.c_str()), 3628800), 3628800);
    CHECK(abs(ratio - Rational(1, d)) <= Rational(d, 3628800));
  }
  DensityResult a = density(P(kAlternating));
  CHECK(a.exact);
  CHECK(a.lower == 0);
  CHECK(a.upper == 1);
  DensityResult u = density(P("union(ap(1,2), ap(2,2))"));
  CHECK(u.lower == 1);
  CHECK(u.upper == 1);
}

TEST_CASE("density of mixed family and progression") {
  // inside the blocks only odd numbers, outside all of them
  IndexSet s = P("union(inter(fintervals[k>=1: [(2k-1)!, (2k)!]], ap(1,2)), compl(fintervals[k>=1: [(2k-1)!, (2k)!]]))");
  DensityResult r = density(s);
  CHECK(r.exact);
  CHECK(r.lower == Rational(1, 2));
  CHECK(r.upper == 1);
  DensityResult c = density(IndexSet::complement(s));
  CHECK(c.lower == 1 - r.upper);
  CHECK(c.upper == 1 - r.lower);
}

TEST_CASE("shifted family has density one") {
  IndexSet u = P("fintervals[k>=1: (n(2k-1)!, n(2k+1)! - n(2k+1)!/n(2k)!]; n=1,2,3]");
  DensityResult r = density(u);
  CHECK(r.exact);
  CHECK(r.lower == 1);
  CHECK(r.upper == 1);
}

TEST_CASE("symmetric difference") {
  IndexSet a = P("factorials(nat)");
  CHECK(sym_diff_finite(a, IndexSet::difference(a, P("finite{1}")), 1000).status == SymDiffVerdict::Status::Finite);
  auto v = sym_diff_finite(P("ap(1,2)"), P("ap(2,2)"), 1000);
  CHECK(v.status == SymDiffVerdict::Status::Infinite);
  CHECK(v.structural);
  IndexSet f1 = P("fintervals[k>=1: [(2k-1)!, (2k)!]]");
  IndexSet f2 = P("fintervals[[1,1]; k>=2: [(2k-1)!, (2k)!]]");
  CHECK(sym_diff_finite(f1, f2, 100).status == SymDiffVerdict::Status::Finite);
  IndexSet g1 = P("fintervals[k>=1: (n(2k-1)!, n(2k+1)!]; n=1,2,3]");
  IndexSet g2 = P("fintervals[k>=1: (n(2k-1)!, n(2k+1)!]; n=3,4,5]");
  CHECK(sym_diff_finite(g1, g2, 100).status == SymDiffVerdict::Status::Finite);
}

TEST_CASE("finiteness") {
  CHECK(analyze_finiteness(P("diff(factorials, factorials(compl(finite{3})))")).status == Finiteness::Status::Finite);
  CHECK(analyze_finiteness(P("inter(factorials, ap(1,2))")).status == Finiteness::Status::Finite);
  CHECK(analyze_finiteness(P("inter(factorials, ap(6,6))")).status == Finiteness::Status::Infinite);
  CHECK(analyze_finiteness(P(kAlternating)).status == Finiteness::Status::Infinite);
  CHECK(analyze_finiteness(P("inter(ap(1,2), ap(2,2))")).status == Finiteness::Status::Finite);
  CHECK(is_empty(P("inter(ap(1,2), ap(2,2))"), 100) == Tri::Yes);
}

TEST_CASE("parser round trip and errors") {
  const char* texts[] = {"finite{1,2,3}", "ap(2,3)", "factorials(nat)", "interval(4,9)", "union(nat,finite{})",
                         "fintervals[(3,4];[5!-5!/4!,6!];k>=7:[(2k-1)!,(2k)!)]",
                         "fintervals[k>=1:(n(2k-1)!,n(2k+1)!-n(2k+1)!/n(2k)!];n=1,2,3]"};
  for (const char* t : texts) {
    IndexSet s = P(t);
    CHECK(P(s.key().c_str()).key() == s.key());
  }
  CHECK(P("  union ( ap(1, 2) ,\n ap(2,2))").key() == "union(ap(1,2),ap(2,2))");
  CHECK(P("fintervals[(5! - 5!/4!, 6!)]").fi().explicit_blocks().front().first == 115);
  try {
    P("union(ap(1,2), bogus)");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    REQUIRE(e.position());
    CHECK(*e.position() == 15);
  }
  CHECK_THROWS_AS(P("finite{3,2}"), Error);
  CHECK_THROWS_AS(P("ap(0,1)"), Error);
}
