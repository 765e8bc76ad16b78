#pragma once

#include <optional>
#include <vector>

#include "densitylab/setalg/index_set.hpp"

namespace densitylab::setalg {

/// |S ∩ [1, n]|, computed structurally.
Natural count(const IndexSet& s, const Natural& n);

/// |S ∩ [lo, hi]|.
Natural count_range(const IndexSet& s, const Natural& lo, const Natural& hi);

bool member(const IndexSet& s, const Natural& t);

/// m-th smallest element (1-indexed). Throws NotEnoughElements when S has
/// fewer than m elements.
Natural nth_element(const IndexSet& s, const Natural& m);

/// Smallest element >= t, if any.
std::optional<Natural> next_element(const IndexSet& s, const Natural& t);

/// Maximal runs of S inside [lo, hi], or nullopt when more than max_runs
/// runs would be needed.
std::optional<std::vector<Run>> runs(const IndexSet& s, const Natural& lo, const Natural& hi,
                                     std::size_t max_runs);

/// Membership bitmap of [0, n] (entry 0 unused), built bottom-up.
std::vector<char> membership_prefix(const IndexSet& s, std::size_t n);

}  // namespace densitylab::setalg
