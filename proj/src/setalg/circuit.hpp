#pragma once

#include <map>
#include <string>
#include <vector>

#include "densitylab/setalg/index_set.hpp"

namespace densitylab::setalg::detail {

/// Boolean formula over deduplicated leaf sets (atoms).
struct Circuit {
  enum class Op { Atom, Not, And, Or, Const };
  struct Gate {
    Op op;
    int a = -1, b = -1;
    bool value = false;
  };

  std::vector<Gate> gates;
  std::vector<IndexSet> atoms;
  int root = -1;

  bool eval(const std::vector<char>& state) const;
  /// Rebuild an IndexSet with each atom replaced by subst[i].
  IndexSet rebuild(const std::vector<IndexSet>& subst) const;
};

Circuit compile(const IndexSet& s);

enum class AtomClass { Sparse, Block, Periodic };

AtomClass classify(const IndexSet& atom);

/// Residue constraint t ≡ c (mod m), or empty.
struct Congruence {
  bool ok = true;
  Integer c = 0, m = 1;
};

Congruence combine(const Congruence& x, const Integer& a, const Integer& d);

/// Number of t in [lo, hi] with t ≡ c (mod m).
Integer count_congruent(const Integer& lo, const Integer& hi, const Congruence& g);

/// Counts over [lo, hi] of each exact membership pattern of the given
/// arithmetic progressions (bit i set means inside progression i). All
/// progressions are assumed started at or before lo.
std::vector<Integer> pattern_counts(const std::vector<IndexSet>& aps, const Integer& lo, const Integer& hi);

inline constexpr std::size_t kMaxPeriodicAtoms = 16;

}  // namespace densitylab::setalg::detail
