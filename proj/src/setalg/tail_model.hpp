#pragma once

#include <vector>

#include "circuit.hpp"

namespace densitylab::setalg::detail {

/// Behaviour of a formula beyond a threshold: eventually-empty atoms are
/// false, progressions are periodic, tail-equivalent families are merged,
/// and factorial points are isolated.
struct TailModel {
  enum class Role { Eventual, Periodic, Family, Sparse };

  Circuit c;
  std::vector<Role> role;
  std::vector<int> rep;      // family atoms: index of the representative
  std::vector<int> families; // representatives
  std::vector<int> periodic;
  std::vector<int> sparse;
  Natural threshold = 0;     // above this the tail description is exact
  Natural period = 1;        // lcm of progression steps
  Natural start = 1;         // every progression has started by here

  /// Tail state with the given family assignment (bit j for families[j]);
  /// sparse atoms false, periodic atoms left for the caller.
  std::vector<char> base_state(unsigned combo) const;
  /// Density of the off-sparse tail for a family assignment.
  Rational periodic_density(unsigned combo) const;
};

TailModel build_tail_model(const IndexSet& s);

inline constexpr std::size_t kMaxTailFamilies = 6;

}  // namespace densitylab::setalg::detail
