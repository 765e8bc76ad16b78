#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "densitylab/streams/stream.hpp"

namespace densitylab::swf {

using streams::Stream;

/// Partial average or partial sum recorded at a checkpoint.
struct SwfCheckpoint {
  Natural n;
  Rational value;
};

struct SwfValue {
  enum class Kind { Finite, PlusInfinity, IntervalEstimate };
  Kind kind = Kind::Finite;
  Rational value;   // Finite
  Rational lo, hi;  // IntervalEstimate
  std::string method;
  std::vector<SwfCheckpoint> evidence;

  static SwfValue finite(const Rational& v, std::string method);
  static SwfValue plus_infinity(std::string method);
  static SwfValue estimate(const Rational& lo, const Rational& hi, std::string method);
};

std::string_view kind_name(SwfValue::Kind k);

/// sum_{t <= n} x_t, exact.
Rational partial_sum(const Stream& x, const Natural& n);

/// liminf of the partial averages.
SwfValue cesaro_liminf(const Stream& x);

/// sum_t delta^(t-1) x_t; exact for eventually periodic streams, otherwise
/// an interval of width at most tol. Unbounded streams are rejected.
SwfValue discounted_sum(const Stream& x, const Rational& delta, const Rational& tol);

SwfValue min_swf(const Stream& x);
SwfValue liminf_swf(const Stream& x);

enum class Which { Cesaro, Discounted, Min, Liminf };

std::optional<Which> parse_which(std::string_view name);
std::string_view which_name(Which w);

struct SwfOptions {
  Rational delta = Rational(1, 2);
  Rational tol = Rational(1, 1000000);
};

SwfValue evaluate(Which w, const Stream& x, const SwfOptions& opts = {});

enum class Ordering { Better, Equivalent, Worse, Undecided };

std::string_view ordering_name(Ordering o);

/// Order of two values; overlapping estimates are Undecided.
Ordering compare_values(const SwfValue& a, const SwfValue& b);

/// x versus y under the order induced by the welfare function.
Ordering induced_compare(Which w, const Stream& x, const Stream& y, const SwfOptions& opts = {});

}  // namespace densitylab::swf
