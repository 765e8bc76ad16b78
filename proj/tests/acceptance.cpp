// Acceptance suite: one PASS/FAIL line per criterion, exit code 0 iff all pass.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "densitylab/axioms/axioms.hpp"
#include "densitylab/cli/cli.hpp"
#include "densitylab/gadgets/gadgets.hpp"
#include "densitylab/setalg/counting.hpp"
#include "densitylab/setalg/density.hpp"
#include "densitylab/setalg/parse.hpp"
#include "densitylab/streams/parse.hpp"
#include "densitylab/swf/swf.hpp"
#include "oracles.hpp"

using namespace densitylab;
using setalg::IndexSet;
using streams::Stream;

namespace {

std::string g_cli;

struct Result {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

IndexSet P(const std::string& s) { return setalg::parse_index_set(s); }
Stream X(const std::string& s) { return streams::parse_stream(s); }

// 1. structural counts against a brute-force bitmap at 6!, 7!, 8!
Result density_oracle() {
  Result r;
  std::mt19937_64 rng(2024);
  std::size_t sets = 0;
  for (; sets < 200; ++sets) {
    std::string text = cli::random_set_dsl(rng, 3);
    IndexSet s = P(text);
    auto c = oracle::counts(oracle::prefix(s, 40320));
    for (std::uint64_t n : {720ULL, 5040ULL, 40320ULL}) {
      if (setalg::count(s, Natural(static_cast<unsigned long>(n))) != c[n]) {
        r.fail("count mismatch for " + text + " at n = " + std::to_string(n));
      }
    }
  }
  if (r.passed) r.detail = std::to_string(sets) + " sets";
  return r;
}

// 2. exact densities of the factorial set, its complement and the factorial intervals
Result density_examples() {
  Result r;
  auto d = setalg::density(P("factorials(nat)"));
  if (!(d.exact && d.lower == 0 && d.upper == 0)) r.fail("factorials density");
  d = setalg::density(P("compl(factorials(nat))"));
  if (!(d.exact && d.lower == 1 && d.upper == 1)) r.fail("complement density");
  d = setalg::density(P("fintervals[k>=1:[(2k-1)!,(2k)!]]"));
  if (!(d.exact && d.lower == 0 && d.upper == 1)) r.fail("factorial intervals: lower 0, upper 1 expected");
  return r;
}

// 3. Holds pattern is upward closed along the dominance chain
Result dominance_chain() {
  Result r;
  std::mt19937_64 rng(99);
  std::size_t decided = 0, skipped = 0, holds = 0;
  while (decided < 500 && skipped < 2000) {
    auto [xs, ys] = cli::random_pair_dsl(rng);
    Stream x = X(xs), y = X(ys);
    auto report = axioms::implication_chain_report(x, y);
    bool all_decided = std::none_of(report.begin(), report.end(),
                                    [](const auto& p) { return p.second.status == axioms::Status::Undecided; });
    if (!all_decided) {
      ++skipped;
      continue;
    }
    ++decided;
    if (!axioms::chain_consistent(report)) r.fail("chain violation for " + xs + " vs " + ys);
    holds += std::any_of(report.begin(), report.end(),
                         [](const auto& p) { return p.second.status == axioms::Status::Holds; });
  }
  if (decided < 500) r.fail("only " + std::to_string(decided) + " decidable pairs");
  if (r.passed) {
    r.detail = std::to_string(decided) + " pairs, " + std::to_string(holds) + " with some Holds, " +
               std::to_string(skipped) + " undecidable draws skipped";
  }
  return r;
}

std::string periodic_stream(std::mt19937_64& rng) {
  long a = static_cast<long>(rng() % 5), b = static_cast<long>(rng() % 5), c = static_cast<long>(rng() % 5);
  std::string p1 = "ap(" + std::to_string(1 + rng() % 4) + "," + std::to_string(2 + rng() % 4) + ")";
  std::string p2 = "ap(" + std::to_string(1 + rng() % 3) + "," + std::to_string(2 + rng() % 3) + ")";
  return "piecewise(default=" + std::to_string(a) + "; " + p1 + ":" + std::to_string(b) + "; diff(" + p2 + "," + p1 +
         "):" + std::to_string(c) + "/2)";
}

// 4. Cesaro value: invariant under finite permutations, strictly larger after
// a density-one improvement
Result cesaro_properties() {
  Result r;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    Stream x = X(periodic_stream(rng));
    std::vector<std::uint64_t> map(2 + rng() % 60);
    for (std::size_t t = 0; t < map.size(); ++t) map[t] = t + 1;
    std::shuffle(map.begin(), map.end(), rng);
    Stream y = Stream::permuted(x, streams::FinitePermutation::from_map(map));
    swf::SwfValue a = swf::cesaro_liminf(x), b = swf::cesaro_liminf(y);
    if (a.kind != swf::SwfValue::Kind::Finite || b.kind != a.kind || a.value != b.value) {
      r.fail("permutation changed the value of " + x.key());
    }
  }
  for (int i = 0; i < 100; ++i) {
    long a = static_cast<long>(rng() % 4), b = static_cast<long>(rng() % 4), inc = 1 + static_cast<long>(rng() % 3);
    std::string p = "ap(" + std::to_string(1 + rng() % 3) + "," + std::to_string(2 + rng() % 4) + ")";
    std::string f = "finite{" + std::to_string(1 + rng() % 9) + "," + std::to_string(10 + rng() % 30) + "}";
    std::string xs = "piecewise(default=" + std::to_string(a) + "; " + p + ":" + std::to_string(b) + ")";
    // raised everywhere except on the finite set f
    std::string ys = "piecewise(default=" + std::to_string(a + inc) + "; diff(" + p + "," + f + "):" +
                     std::to_string(b + inc) + "; inter(" + p + "," + f + "):" + std::to_string(b) + "; diff(" + f +
                     "," + p + "):" + std::to_string(a) + ")";
    Stream x = X(xs), y = X(ys);
    if (axioms::density_one_dominates(y, x).status != axioms::Status::Holds) r.fail("not an improvement: " + ys);
    swf::SwfValue vx = swf::cesaro_liminf(x), vy = swf::cesaro_liminf(y);
    if (vx.kind != swf::SwfValue::Kind::Finite || vy.kind != vx.kind || !(vy.value > vx.value)) {
      r.fail("no strict increase for " + ys);
    }
  }
  if (r.passed) r.detail = "100 permutations, 100 improvements";
  return r;
}

std::vector<Rational> ints(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long a : v) out.push_back(make_rational(a));
  return out;
}

// 5. rank-fill construction for r = 1/3, s = 2/3 and the explicit base instance
Result rank_fill_gadget() {
  Result r;
  gadgets::Lemma1Gadget g = gadgets::lemma1_build(make_rational(1, 3));
  if (gadgets::lemma1_verify_P1Ea(g, 5040).status != axioms::Status::Holds) r.fail("z(r) > x(r) not verified");
  auto c = gadgets::lemma1_case_compare(make_rational(1, 3), make_rational(2, 3), 5040);
  if (c.which != 'a' || c.status != axioms::Status::Holds) r.fail("comparison for 1/3 < 2/3 not verified");

  auto gr = gadgets::lemma1_from_base({1, 2, 3, 4, 7});
  auto gs = gadgets::lemma1_from_base({1, 2, 7});
  if (gr.x.prefix(7) != ints({1, 1, 2, 3, 4, 1, 5})) r.fail("x(r) prefix");
  if (gr.z.prefix(7) != ints({2, 1, 3, 4, 5, 1, 6})) r.fail("z(r) prefix");
  if (gs.x.prefix(7) != ints({1, 1, 2, 3, 4, 5, 6})) r.fail("x(s) prefix");
  auto b = gadgets::lemma1_case_compare(gr, gs, 5040);
  if (b.which != 'b' || b.u1 != 6 || b.u2 != 24 || !b.z_pi) {
    r.fail("base instance classification");
  } else {
    auto zp = b.z_pi->prefix(24), xs = gs.x.prefix(24);
    for (std::size_t t = 0; t + 1 < 24; ++t) {
      if (zp[t] != xs[t]) r.fail("permuted stream differs before u2");
    }
    if (xs[23] != 23 || zp[23] != 1) r.fail("values at u2");
    if (b.status != axioms::Status::Holds) r.fail("permutation verification");
  }
  if (r.passed) r.detail = "case a for 1/3 < 2/3, case b for the base instance";
  return r;
}

// 6. factorial inequality over all increasing prefixes from {1..12}
Result inequality_sweep() {
  Result r;
  std::array<Integer, 13> F;
  F[0] = 1;
  for (unsigned long i = 1; i <= 12; ++i) F[i] = F[i - 1] * i;
  std::size_t checked = 0;
  for (std::size_t m = 2; m <= 4; ++m) {
    const std::size_t len = 2 * m + 2;
    for (unsigned mask = 0; mask < (1u << 12); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != len) continue;
      std::vector<std::uint64_t> t;
      for (unsigned i = 0; i < 12; ++i) {
        if (mask >> i & 1) t.push_back(i + 1);
      }
      auto at = [&](std::size_t j) -> const Integer& { return F[t[j - 1]]; };
      Integer lhs = at(2 * m + 2) / at(3), rhs = 0;
      bool positive = true;
      for (std::size_t j = 1; j <= m; ++j) {
        Integer term = at(2 * j + 2) / at(2 * j + 1);
        rhs += term;
        positive = positive && lhs - Integer(static_cast<unsigned long>(m)) * term > 0;
      }
      gadgets::L2E1Check c = gadgets::check_L2E1(t, m);
      if (c.lhs != lhs || c.rhs != rhs || c.holds != (lhs > rhs) || c.parentheses_positive != positive) {
        r.fail("library disagrees with direct evaluation");
      }
      if (!(lhs > rhs) || !positive) r.fail("inequality fails");
      ++checked;
    }
  }
  if (r.passed) r.detail = std::to_string(checked) + " prefixes";
  return r;
}

// 7. block-count closed form of the factorial block set against brute force
Result block_certificates() {
  Result r;
  std::array<Integer, 11> F;
  F[0] = 1;
  for (unsigned long i = 1; i <= 10; ++i) F[i] = F[i - 1] * i;
  std::mt19937_64 rng(17);
  std::size_t checkpoints = 0;
  for (int i = 0; i < 20; ++i) {
    std::vector<std::uint64_t> n;
    std::uint64_t v = rng() % 2;
    for (int j = 0; j < 9; ++j) n.push_back(v += 1 + rng() % 2);
    std::size_t m_max = 0;
    while (2 * (m_max + 1) + 1 <= n.size() && n[2 * (m_max + 1)] <= 10) ++m_max;
    if (m_max == 0) {
      r.fail("no feasible checkpoint");
      continue;
    }
    auto counts = oracle::counts(oracle::prefix(gadgets::block_set(n), to_u64(F[n[2 * m_max]])));
    auto at = [&](std::size_t j) -> const Integer& { return F[n[j - 1]]; };
    Integer closed = 0;
    for (std::size_t m = 1; m <= m_max; ++m) {
      closed += at(2 * m + 1) - at(2 * m + 1) / at(2 * m) - at(2 * m - 1);
      gadgets::BlockCertificate c = gadgets::block_certificate(n, m);
      std::uint64_t brute = counts[to_u64(at(2 * m + 1))];
      if (closed != brute || c.closed_form != closed || c.structural != closed) r.fail("count mismatch");
      Rational bound = Rational(1) - ratio(1, at(2 * m)) - ratio(at(2 * m - 1), at(2 * m + 1));
      if (c.lower_bound != bound || c.ratio < bound) r.fail("density bound");
      ++checkpoints;
    }
  }
  if (r.passed) r.detail = "20 prefixes, " + std::to_string(checkpoints) + " checkpoints";
  return r;
}

bool exhaustive(std::vector<Rational> a, const std::vector<Rational>& b) {
  std::sort(a.begin(), a.end());
  do {
    bool ok = true;
    for (std::size_t t = 0; t < a.size() && ok; ++t) ok = a[t] >= b[t];
    if (ok) return true;
  } while (std::next_permutation(a.begin(), a.end()));
  return false;
}

// 8. alternating pair is incomparable; sorted matching equals exhaustive search
Result suppes_sen() {
  Result r;
  Stream x = X("piecewise(default=0; ap(1,2):1)"), y = X("piecewise(default=0; ap(2,2):1)");
  if (axioms::suppes_sen_compare(x, y).status != axioms::Status::Incomparable) r.fail("alternating pair");
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    std::vector<Rational> a, b;
    for (int t = 0; t < 8; ++t) {
      a.emplace_back(static_cast<long>(rng() % 4));
      b.emplace_back(static_cast<long>(rng() % 4));
    }
    for (std::size_t w = 1; w <= 8; ++w) {
      std::vector<Rational> aw(a.begin(), a.begin() + static_cast<long>(w)), bw(b.begin(), b.begin() + static_cast<long>(w));
      auto p = axioms::sort_match(aw, bw);
      if (p.has_value() != exhaustive(aw, bw)) r.fail("disagreement on a window of size " + std::to_string(w));
      if (p) {
        for (std::size_t t = 1; t <= w; ++t) {
          if (aw[(*p)(t) - 1] < bw[t - 1]) r.fail("returned permutation does not dominate");
        }
      }
    }
  }
  if (r.passed) r.detail = "100 pairs, windows 1..8";
  return r;
}

std::pair<std::string, int> capture(const std::string& cmd) {
  std::string out;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return {"", -1};
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
  int status = pclose(f);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

// 9. verify reports are byte-identical for a fixed seed
Result determinism() {
  Result r;
  if (g_cli.empty()) {
    r.fail("no CLI path given");
    return r;
  }
  const std::string cmd = "'" + g_cli + "' verify --seed 42 --parallelism 2";
  auto [a, ca] = capture(cmd);
  auto [b, cb] = capture(cmd);
  if (ca != 0 || cb != 0) r.fail("verify exited with " + std::to_string(ca) + "/" + std::to_string(cb));
  if (a.empty() || a != b) r.fail("reports differ");
  if (r.passed) r.detail = std::to_string(a.size()) + " bytes, identical";
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];
  struct Criterion {
    const char* name;
    double limit;
    std::function<Result()> run;
  };
  const std::vector<Criterion> criteria = {
      {"density oracle equivalence", 60, density_oracle},
      {"exact density examples", 1, density_examples},
      {"dominance chain", 120, dominance_chain},
      {"cesaro anonymity and strict increase", 60, cesaro_properties},
      {"rank-fill construction", 30, rank_fill_gadget},
      {"factorial inequality sweep", 60, inequality_sweep},
      {"block density certificate", 60, block_certificates},
      {"suppes-sen incomparability and matching", 60, suppes_sen},
      {"verify determinism", 60, determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit) r.fail("time limit " + std::to_string(static_cast<int>(c.limit)) + " s exceeded");
    failed += !r.passed;
    char t[32];
    std::snprintf(t, sizeof t, "%.2f s", secs);
    std::cout << "criterion " << i + 1 << ": " << (r.passed ? "PASS" : "FAIL") << "  " << c.name << " (" << r.detail
              << ") [" << t << "]" << std::endl;
  }
  std::cout << (failed ? "acceptance: FAIL" : "acceptance: PASS") << " (" << criteria.size() - failed << "/"
            << criteria.size() << ")" << std::endl;
  return failed ? 1 : 0;
}
