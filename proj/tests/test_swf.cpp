#include "doctest.h"
#include "densitylab/error.hpp"
#include "densitylab/streams/parse.hpp"
#include "densitylab/swf/swf.hpp"

using namespace densitylab;
using namespace densitylab::swf;
using streams::parse_stream;

namespace {

Stream S(const std::string& s) { return parse_stream(s); }

// Direct partial sum of the first n coordinates.
Rational brute_sum(const Stream& x, std::uint64_t n) {
  Rational s = 0;
  for (const Rational& v : x.prefix(n)) s += v;
  return s;
}

// Geometric series by direct summation of many terms.
Rational brute_discounted(const Stream& x, const Rational& d, std::uint64_t n) {
  Rational s = 0, w = 1;
  for (const Rational& v : x.prefix(n)) {
    s += w * v;
    w *= d;
  }
  return s;
}

}  // namespace

TEST_CASE("cesaro") {
  SwfValue c = cesaro_liminf(S("const(7/3)"));
  CHECK(c.kind == SwfValue::Kind::Finite);
  CHECK(c.value == Rational(7, 3));
  Stream evens = S("piecewise(default=0; ap(2,2):1)");
  CHECK(cesaro_liminf(evens).value == Rational(1, 2));
  for (std::uint64_t k = 1; k <= 50; ++k) CHECK(brute_sum(evens, 2 * k) / Rational(2 * k) == Rational(1, 2));
  Stream x = S("rankfill(factorials(finite{1,2,3,4,7}))");
  SwfValue r = cesaro_liminf(x);
  CHECK(r.kind == SwfValue::Kind::PlusInfinity);
  CHECK(brute_sum(x, 5040) / 5040 > Rational(5040, 4));
  SwfValue alt = cesaro_liminf(S("piecewise(default=0; fintervals[k>=1: [(2k-1)!, (2k)!]]:1)"));
  CHECK(alt.kind == SwfValue::Kind::Finite);
  CHECK(alt.value == 0);
  SwfValue mixed = cesaro_liminf(S("piecewise(default=2; inter(fintervals[k>=1: [(2k-1)!, (2k)!]], ap(2,2)):4; ap(1,2):3)"));
  CHECK(mixed.kind == SwfValue::Kind::Finite);
  // odd t: 3 everywhere; even t: 4 inside blocks, 2 outside; liminf takes the outside phase
  CHECK(mixed.value == Rational(5, 2));
}

TEST_CASE("partial sums agree with direct summation") {
  for (const char* t : {"piecewise(default=1; diff(ap(3,3), factorials):5; factorials:2)", "rankfill(union(ap(2,5), factorials))",
                        "permute(rankfill(factorials), perm[5](1->5,5->1,2->3,3->2))", "rankfill(ap(1,2),1/2)"}) {
    Stream x = S(t);
    for (std::uint64_t n : {1ULL, 2ULL, 3ULL, 10ULL, 100ULL, 720ULL, 1000ULL}) CHECK(partial_sum(x, Natural(n)) == brute_sum(x, n));
  }
}

TEST_CASE("cesaro is invariant under finite permutations") {
  Stream x = S("piecewise(default=0; ap(2,2):1; finite{1}:9)");
  Stream y = Stream::permuted(x, streams::FinitePermutation::from_map({4, 3, 2, 1}));
  CHECK(cesaro_liminf(y).value == cesaro_liminf(x).value);
}

TEST_CASE("discounted") {
  Rational half(1, 2), tol(1, 1000000);
  CHECK(discounted_sum(S("const(1)"), half, tol).value == 2);
  CHECK(discounted_sum(S("piecewise(default=0; finite{1}:1)"), half, tol).value == 1);
  SwfValue alt = discounted_sum(S("piecewise(default=0; ap(1,2):1)"), half, tol);
  CHECK(alt.kind == SwfValue::Kind::Finite);
  CHECK(alt.value == Rational(4, 3));
  Stream p = S("piecewise(default=3; interval(2,5):1; diff(ap(4,7), interval(2,5)):2)");
  SwfValue v = discounted_sum(p, Rational(2, 3), tol);
  CHECK(v.kind == SwfValue::Kind::Finite);
  CHECK(abs(v.value - brute_discounted(p, Rational(2, 3), 400)) < Rational(1, 1000000000));
  SwfValue e = discounted_sum(S("piecewise(default=1; factorials:2)"), half, tol);
  CHECK(e.kind == SwfValue::Kind::IntervalEstimate);
  CHECK(e.hi - e.lo <= tol);
  Rational truth = brute_discounted(S("piecewise(default=1; factorials:2)"), half, 200);
  CHECK(e.lo <= truth);
  CHECK(truth <= e.hi + Rational(1, 1000000000));
  CHECK_THROWS_AS(discounted_sum(S("rankfill(factorials)"), half, tol), Error);
  Stream perm = Stream::permuted(S("piecewise(default=0; finite{1}:1)"), streams::FinitePermutation::swap(1, 2));
  CHECK(discounted_sum(perm, half, tol).value == half);
}

TEST_CASE("min and liminf") {
  CHECK(min_swf(S("const(5)")).value == 5);
  CHECK(liminf_swf(S("const(5)")).value == 5);
  Stream x = S("rankfill(factorials(nat))");
  CHECK(min_swf(x).value == 1);
  CHECK(liminf_swf(x).value == 1);
  Stream y = S("piecewise(default=3; finite{1}:1)");
  CHECK(min_swf(y).value == 1);
  CHECK(liminf_swf(y).value == 3);
  CHECK(liminf_swf(S("rankfill(finite{1,2})")).kind == SwfValue::Kind::PlusInfinity);
}

TEST_CASE("induced orders") {
  CHECK(induced_compare(Which::Cesaro, S("piecewise(default=0; ap(2,2):1)"), S("const(1/3)")) == Ordering::Better);
  CHECK(induced_compare(Which::Cesaro, S("rankfill(factorials)"), S("rankfill(factorials)")) == Ordering::Equivalent);
  Stream y = S("piecewise(default=0; ap(2,2):1)");
  Stream x1 = S("piecewise(default=1; ap(2,2):2)");
  CHECK(induced_compare(Which::Discounted, x1, y) == Ordering::Better);
  CHECK(induced_compare(Which::Discounted, y, x1) == Ordering::Worse);
}
