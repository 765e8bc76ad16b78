#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "densitylab/setalg/density.hpp"
#include "densitylab/streams/profile.hpp"
#include "densitylab/streams/stream.hpp"

namespace densitylab::axioms {

using streams::FinitePermutation;
using streams::Stream;

enum class Status { Holds, Fails, Incomparable, Undecided };

std::string_view status_name(Status s);

struct Verdict {
  Status status = Status::Undecided;
  /// Coordinates with x_t > y_t, when decided structurally.
  std::optional<setalg::IndexSet> strict;
  std::optional<setalg::DensityResult> density;
  /// Concrete coordinate supporting the verdict (counterexample for Fails).
  std::optional<Natural> witness;
  std::uint64_t horizon = 0;
  std::optional<FinitePermutation> permutation;
  std::optional<Rational> gap;
  std::string reason;
};

/// Dominance predicates from strongest to weakest premise.
enum class Axiom { Uniform, Weak, AlmostWeak, DensityOne, Lower, Upper, Infinite, Pareto };

std::string_view axiom_name(Axiom a);
std::optional<Axiom> parse_axiom(std::string_view name);
const std::vector<Axiom>& all_axioms();

/// Default pointwise verification horizon.
inline constexpr std::uint64_t kDefaultHorizon = 5040;
/// Largest accepted horizon.
inline constexpr std::uint64_t kMaxHorizon = 3628800;

/// x_t >= y_t for every t.
Verdict weakly_dominates(const Stream& x, const Stream& y, std::uint64_t horizon = kDefaultHorizon);

Verdict dominates(Axiom a, const Stream& x, const Stream& y, std::uint64_t horizon = kDefaultHorizon);

Verdict pareto_dominates(const Stream& x, const Stream& y, std::uint64_t horizon = kDefaultHorizon);
Verdict infinite_pareto_dominates(const Stream& x, const Stream& y, std::uint64_t horizon = kDefaultHorizon);
Verdict upper_asym_dominates(const Stream& x, const Stream& y, std::uint64_t horizon = kDefaultHorizon);
Verdict lower_asym_dominates(const Stream& x, const Stream& y, std::uint64_t horizon = kDefaultHorizon);
Verdict density_one_dominates(const Stream& x, const Stream& y, std::uint64_t horizon = kDefaultHorizon);
Verdict almost_weak_dominates(const Stream& x, const Stream& y, std::uint64_t horizon = kDefaultHorizon);
Verdict weak_pareto_dominates(const Stream& x, const Stream& y, std::uint64_t horizon = kDefaultHorizon);
Verdict uniform_dominates(const Stream& x, const Stream& y, std::uint64_t horizon = kDefaultHorizon);

/// Every predicate, strongest premise first.
std::vector<std::pair<Axiom, Verdict>> implication_chain_report(const Stream& x, const Stream& y,
                                                                std::uint64_t horizon = kDefaultHorizon);

/// True when the Holds pattern of a report is upward closed along the chain.
bool chain_consistent(const std::vector<std::pair<Axiom, Verdict>>& report);

/// Holds when x composed with some finite permutation weakly dominates y;
/// Fails when only the reverse holds; Incomparable when neither does.
Verdict suppes_sen_compare(const Stream& x, const Stream& y, std::uint64_t horizon = kDefaultHorizon);

/// Holds when the first differing coordinate favours x; Fails when it
/// favours y or the streams are equal.
Verdict lex_compare(const Stream& x, const Stream& y, std::uint64_t horizon = kDefaultHorizon);

/// Holds when y = x composed with a finite permutation (permutation attached).
Verdict anonymity_equivalent(const Stream& x, const Stream& y, std::uint64_t horizon = kDefaultHorizon);

/// Sorted-window test: a permutation p of [1, n] with x(p(t)) >= y(t), if any.
std::optional<FinitePermutation> sort_match(const std::vector<Rational>& x, const std::vector<Rational>& y);

/// Largest window materialized by the permutation searches.
inline constexpr std::uint64_t kMaxWindow = std::uint64_t{1} << 22;

}  // namespace densitylab::axioms
