#pragma once

#include <optional>
#include <string>
#include <vector>

#include "densitylab/setalg/index_set.hpp"

namespace densitylab::setalg {

enum class Tri { Yes, No, Unknown };

struct Finiteness {
  enum class Status { Finite, Infinite, Unknown };
  Status status = Status::Unknown;
  /// For Finite: every element is <= bound.
  Natural bound = 0;
  std::string reason;
};

/// Structural finiteness decision.
Finiteness analyze_finiteness(const IndexSet& s);

/// Emptiness: structural when possible, otherwise a scan of [1, horizon]
/// that can only prove non-emptiness.
Tri is_empty(const IndexSet& s, const Natural& horizon);

struct SymDiffVerdict {
  enum class Status { Finite, Infinite, Undecided };
  Status status = Status::Undecided;
  /// Finite: A and B agree above this bound.
  Natural bound = 0;
  bool structural = false;
  /// Undecided: largest element of A Δ B seen up to the horizon (0 if none).
  Natural last_witness = 0;
  Natural horizon = 0;
  std::string reason;
};

SymDiffVerdict sym_diff_finite(const IndexSet& a, const IndexSet& b, const Natural& horizon);

IndexSet sym_diff(const IndexSet& a, const IndexSet& b);

/// Two factorial-interval atoms whose families coincide from some block on.
/// Returns the bound above which the two sets are identical.
std::optional<Natural> tail_equivalent(const IndexSet& f1, const IndexSet& f2);

/// Limits of a block family that the analysis relies on.
struct FamilyAsymptotics {
  bool supported = false;      // bounds convert to factorial normal form
  bool superexponential = false;  // H(k-1)/H(k) -> 0
  bool long_blocks = false;    // block sizes and gaps both unbounded
  std::optional<Rational> lower, upper;
  std::string note;
};

const FamilyAsymptotics& family_asymptotics(const FactorialIntervalsData& fi);

}  // namespace densitylab::setalg

namespace densitylab::setalg {

/// Membership of t equals membership of t + period for every t > threshold.
struct Periodicity {
  Natural threshold;
  Natural period;
};

/// Present when the set is eventually periodic by construction.
std::optional<Periodicity> eventual_period(const IndexSet& s);

}  // namespace densitylab::setalg
