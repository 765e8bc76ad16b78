#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "densitylab/streams/stream.hpp"

namespace densitylab::streams {

/// Value rule on a region: a constant, or count(ranked, t) + value.
struct Cell {
  enum class Rule { Const, Rank };
  IndexSet region;
  Rule rule = Rule::Const;
  Rational value;
  IndexSet ranked;
};

/// x agrees with the cells above `head`; coordinates 1..head are explicit.
struct Decomposition {
  std::uint64_t head = 0;
  std::vector<Cell> cells;
};

Decomposition decompose(const Stream& x);

/// Coordinates split by the sign of x_t - y_t.
struct Profile {
  IndexSet greater;  // x_t > y_t
  IndexSet less;     // x_t < y_t
  IndexSet unknown;  // sign left undetermined by the structure
  std::vector<std::string> notes;

  bool complete() const { return unknown.is_empty_literal(); }
};

Profile compare_profile(const Stream& x, const Stream& y);

/// Pointwise scan of [1, horizon].
struct Scan {
  std::uint64_t horizon = 0;
  std::optional<std::uint64_t> first_greater, first_less, first_equal;
  std::optional<std::uint64_t> last_greater, last_less, last_equal;
  std::uint64_t greater = 0, less = 0, equal = 0;
  std::optional<Rational> min_gap;  // min of x_t - y_t
};

Scan scan(const Stream& x, const Stream& y, std::uint64_t horizon);

/// Number of runs a Rank/Rank piece may be split into before giving up.
inline constexpr std::size_t kMaxProfileRuns = 4096;

}  // namespace densitylab::streams
