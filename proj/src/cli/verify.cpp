#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

#include "densitylab/error.hpp"
#include "densitylab/setalg/counting.hpp"
#include "densitylab/setalg/parse.hpp"
#include "densitylab/streams/parse.hpp"
#include "serialize.hpp"

namespace densitylab::cli {

namespace {

using streams::Stream;

struct Check {
  bool passed = false;
  std::string detail;
};

struct Item {
  std::string group, key;
  std::function<Check()> run;
};

std::string pad(std::size_t i) {
  std::string s = std::to_string(i);
  return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

Check density_item(const std::string& text, bool fault) {
  setalg::IndexSet s = setalg::parse_index_set(text);
  std::vector<char> in = setalg::membership_prefix(s, 5040);
  std::uint64_t c = 0;
  for (std::uint64_t n = 1; n <= 5040; ++n) {
    c += in[n];
    if (n != 720 && n != 5040) continue;
    Natural structural = setalg::count(s, Natural(static_cast<unsigned long>(n)));
    if (fault) structural += 1;
    if (structural != c) return {false, "count mismatch at n = " + std::to_string(n)};
  }
  return {true, ""};
}

Check chain_item(const std::string& xs, const std::string& ys, bool fault) {
  Stream x = streams::parse_stream(xs), y = streams::parse_stream(ys);
  auto report = axioms::implication_chain_report(x, y, 720);
  if (fault) {
    for (auto& [a, v] : report) {
      if (a == axioms::Axiom::Weak) v.status = axioms::Status::Holds;
    }
  }
  if (!axioms::chain_consistent(report)) return {false, "chain violation"};
  return {true, ""};
}

Check l2e1_item(std::size_t m) {
  const std::size_t len = 2 * m + 2;
  std::vector<char> mask(12, 0);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(len), 1);
  std::size_t n = 0;
  do {
    std::vector<std::uint64_t> t;
    for (std::size_t i = 0; i < 12; ++i) {
      if (mask[i]) t.push_back(i + 1);
    }
    gadgets::L2E1Check c = gadgets::check_L2E1(t, m);
    if (!c.holds || !c.parentheses_positive) return {false, "fails for a prefix starting at " + std::to_string(t[0])};
    ++n;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return {true, std::to_string(n) + " prefixes"};
}

Check blocks_item(const std::vector<std::uint64_t>& n) {
  std::vector<char> in = setalg::membership_prefix(gadgets::block_set(n), 40320);
  std::size_t checked = 0;
  for (std::size_t m = 1; 2 * m + 1 <= n.size() && n[2 * m] <= 8; ++m) {
    gadgets::BlockCertificate b = gadgets::block_certificate(n, m);
    std::uint64_t top = to_u64(b.checkpoint), c = 0;
    for (std::uint64_t t = 1; t <= top; ++t) c += in[t];
    if (b.closed_form != Natural(static_cast<unsigned long>(c)) || b.structural != b.closed_form ||
        b.ratio < b.lower_bound) {
      return {false, "certificate mismatch at m = " + std::to_string(m)};
    }
    ++checked;
  }
  return {true, std::to_string(checked) + " checkpoints"};
}

Check suppes_item(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  bool fast = axioms::sort_match(a, b).has_value();
  bool slow = brute_force_permutation_dominates(a, b);
  return {fast == slow, fast == slow ? "" : "sorted matching disagrees with exhaustive search"};
}

Check cesaro_item(const std::string& xs, const std::string& perm) {
  Stream x = streams::parse_stream(xs);
  Stream y = Stream::permuted(x, streams::parse_permutation(perm));
  swf::SwfValue a = swf::cesaro_liminf(x), b = swf::cesaro_liminf(y);
  bool ok = a.kind == swf::SwfValue::Kind::Finite && b.kind == a.kind && a.value == b.value;
  return {ok, ok ? "" : "cesaro value changed under a finite permutation"};
}

Check gadget_item(int which) {
  using axioms::Status;
  switch (which) {
    case 0: {
      auto c = gadgets::lemma1_case_compare(gadgets::lemma1_from_base({1, 2, 3, 4, 7}),
                                            gadgets::lemma1_from_base({1, 2, 7}), 5040);
      bool ok = c.which == 'b' && c.u1 == 6 && c.u2 == 24 && c.status == Status::Holds;
      return {ok, "explicit base instance"};
    }
    case 1: {
      auto g = gadgets::lemma1_build(make_rational(1, 3));
      return {gadgets::lemma1_verify_P1Ea(g, 5040).status == Status::Holds, "P1Ea r = 1/3"};
    }
    case 2: {
      auto c = gadgets::lemma1_case_compare(make_rational(1, 3), make_rational(2, 3), 5040);
      return {c.status == Status::Holds, "case compare 1/3 < 2/3"};
    }
    case 3: {
      auto l = gadgets::lemma2_verify_case(gadgets::lemma2_build({1, 2, 3, 4, 5, 6, 7, 8}, 'a'), 5040);
      return {gadgets::combine(l) == Status::Holds, "second construction, case a"};
    }
    default: {
      auto l = gadgets::lemma2_verify_case(gadgets::lemma2_build({1, 2, 3, 4, 5, 6, 7, 8}, 'b'), 40320);
      return {gadgets::combine(l) == Status::Holds, "second construction, case b"};
    }
  }
}

std::vector<Item> build_items(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const bool fault_density = cfg.inject_fault == "density", fault_chain = cfg.inject_fault == "chain";
  std::vector<Item> items;
  for (std::size_t i = 0; i < 40; ++i) {
    std::string text = random_set_dsl(rng, 2);
    items.push_back({"density", pad(i), [text, fault_density] { return density_item(text, fault_density); }});
  }
  for (std::size_t i = 0; i < 60; ++i) {
    auto [x, y] = random_pair_dsl(rng);
    items.push_back({"chain", pad(i), [x = x, y = y, fault_chain] { return chain_item(x, y, fault_chain); }});
  }
  for (std::size_t m = 2; m <= 4; ++m) items.push_back({"l2e1", pad(m), [m] { return l2e1_item(m); }});
  for (std::size_t i = 0; i < 10; ++i) {
    std::vector<std::uint64_t> n;
    std::uint64_t v = 0;
    for (int j = 0; j < 7; ++j) n.push_back(v += 1 + rng() % 2);
    items.push_back({"blocks", pad(i), [n] { return blocks_item(n); }});
  }
  for (std::size_t i = 0; i < 40; ++i) {
    std::size_t n = 1 + rng() % 6;
    std::vector<Rational> a, b;
    for (std::size_t t = 0; t < n; ++t) {
      a.emplace_back(static_cast<long>(rng() % 4));
      b.emplace_back(static_cast<long>(rng() % 4));
    }
    items.push_back({"suppes_sen", pad(i), [a, b] { return suppes_item(a, b); }});
  }
  for (std::size_t i = 0; i < 20; ++i) {
    std::string x = "piecewise(default=" + std::to_string(rng() % 3) + "; ap(" + std::to_string(1 + rng() % 3) +
                    "," + std::to_string(2 + rng() % 3) + "):" + std::to_string(rng() % 5) + ")";
    std::uint64_t a = 1 + rng() % 8, b = 1 + rng() % 8;
    std::string p = a == b ? "perm[1](1->1)"
                           : "perm[8](" + std::to_string(a) + "->" + std::to_string(b) + "," + std::to_string(b) +
                                 "->" + std::to_string(a) + ")";
    items.push_back({"cesaro", pad(i), [x, p] { return cesaro_item(x, p); }});
  }
  for (int i = 0; i < 5; ++i) items.push_back({"gadget", pad(i), [i] { return gadget_item(i); }});
  return items;
}

}  // namespace

std::pair<Json, bool> run_verify(const RunConfig& cfg) {
  if (!cfg.inject_fault.empty() && cfg.inject_fault != "density" && cfg.inject_fault != "chain") {
    throw Error(ErrorCode::ParseError, "unknown fault '" + cfg.inject_fault + "'");
  }
  std::vector<Item> items = build_items(cfg);
  std::vector<Check> results(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        results[i] = items[i].run();
      } catch (const std::exception& e) {
        results[i] = {false, std::string("error: ") + e.what()};
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < std::max(1u, cfg.parallelism); ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(items[a].group, items[a].key) < std::tie(items[b].group, items[b].key);
  });

  Json groups = Json::object(), list = Json::array();
  std::size_t passed = 0;
  for (std::size_t i : order) {
    const Item& it = items[i];
    const Check& c = results[i];
    passed += c.passed;
    Json& g = groups[it.group];
    if (g.is_null()) g = {{"passed", 0}, {"failed", 0}};
    g[c.passed ? "passed" : "failed"] = g[c.passed ? "passed" : "failed"].get<std::size_t>() + 1;
    list.push_back({{"item", it.group + "/" + it.key}, {"passed", c.passed}, {"detail", c.detail}});
  }
  Json j;
  j["total"] = items.size();
  j["passed"] = passed;
  j["failed"] = items.size() - passed;
  j["groups"] = groups;
  j["items"] = list;
  return {j, passed == items.size()};
}

}  // namespace densitylab::cli
