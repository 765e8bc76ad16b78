#include <algorithm>

#include "densitylab/cli/cli.hpp"

namespace densitylab::cli {

namespace {

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); }

std::string leaf(std::mt19937_64& rng) {
  switch (rng() % 9) {
    case 0: return "ap(" + std::to_string(pick(rng, 1, 6)) + "," + std::to_string(pick(rng, 1, 6)) + ")";
    case 1: {
      std::string s = "finite{";
      std::uint64_t n = pick(rng, 1, 4), v = 0;
      for (std::uint64_t i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(v += pick(rng, 1, 40));
      return s + "}";
    }
    case 2: {
      std::uint64_t a = pick(rng, 1, 200);
      return "interval(" + std::to_string(a) + "," + std::to_string(a + pick(rng, 0, 500)) + ")";
    }
    case 3: return "factorials";
    case 4: return "factorials(ap(1,2))";
    case 5: return "fintervals[k>=1:[(2k-1)!,(2k)!]]";
    case 6: return "fintervals[k>=3:[k!,k!+2k]]";
    case 7: return "fintervals[k>=1:(n(2k-1)!,n(2k+1)!-n(2k+1)!/n(2k)!];n=1,2,3]";
    default: return "nat";
  }
}

std::string value(std::mt19937_64& rng) { return std::to_string(pick(rng, 0, 3)); }

std::string piecewise(std::mt19937_64& rng) {
  return "piecewise(default=" + value(rng) + "; " + random_set_dsl(rng, 1) + ":" + value(rng) + ")";
}

std::string sparse(std::mt19937_64& rng) {
  switch (rng() % 4) {
    case 0: return "factorials";
    case 1: return "factorials(finite{1,2,3,4,7})";
    case 2: return "factorials(ap(1,2))";
    default: return "fintervals[k>=3:[k!,k!+2k]]";
  }
}

std::string rankfill(std::mt19937_64& rng) { return "rankfill(" + sparse(rng) + "," + std::to_string(pick(rng, 1, 2)) + ")"; }

std::string permute(std::mt19937_64& rng, const std::string& base) {
  std::uint64_t a = pick(rng, 1, 6), b = pick(rng, 1, 6);
  if (a == b) return base;
  return "permute(" + base + ", perm[6](" + std::to_string(a) + "->" + std::to_string(b) + "," + std::to_string(b) +
         "->" + std::to_string(a) + "))";
}

}  // namespace

std::string random_set_dsl(std::mt19937_64& rng, int depth) {
  if (depth == 0 || rng() % 3 == 0) return leaf(rng);
  std::string a = random_set_dsl(rng, depth - 1);
  switch (rng() % 4) {
    case 0: return "union(" + a + "," + random_set_dsl(rng, depth - 1) + ")";
    case 1: return "inter(" + a + "," + random_set_dsl(rng, depth - 1) + ")";
    case 2: return "diff(" + a + "," + random_set_dsl(rng, depth - 1) + ")";
    default: return "compl(" + a + ")";
  }
}

std::pair<std::string, std::string> random_pair_dsl(std::mt19937_64& rng) {
  switch (rng() % 7) {
    case 0: return {piecewise(rng), piecewise(rng)};
    case 4:
    case 5: {
      // y lowered on a random set, on its complement, or both
      std::uint64_t a = pick(rng, 1, 3), b = pick(rng, 1, 3), da = rng() % 2, db = rng() % 2;
      std::string set = random_set_dsl(rng, 1);
      return {"piecewise(default=" + std::to_string(a) + "; " + set + ":" + std::to_string(b) + ")",
              "piecewise(default=" + std::to_string(a - da) + "; " + set + ":" + std::to_string(b - db) + ")"};
    }
    case 6: {
      std::string u = sparse(rng);
      std::uint64_t f = pick(rng, 1, 2);
      return {"rankfill(" + u + "," + std::to_string(f + 1) + ")", "rankfill(" + u + "," + std::to_string(f) + ")"};
    }
    case 1: return {rankfill(rng), rankfill(rng)};
    case 2: return {piecewise(rng), rankfill(rng)};
    default: {
      std::string x = rng() % 2 ? piecewise(rng) : rankfill(rng);
      return {permute(rng, x), x};
    }
  }
}

bool brute_force_permutation_dominates(std::vector<Rational> x, const std::vector<Rational>& y) {
  if (x.size() != y.size()) return false;
  std::sort(x.begin(), x.end());
  do {
    bool ok = true;
    for (std::size_t t = 0; t < x.size() && ok; ++t) ok = x[t] >= y[t];
    if (ok) return true;
  } while (std::next_permutation(x.begin(), x.end()));
  return false;
}

}  // namespace densitylab::cli
