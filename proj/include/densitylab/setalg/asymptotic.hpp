#pragma once

#include <map>
#include <optional>
#include <vector>

#include "densitylab/numeric.hpp"
#include "densitylab/setalg/bound_expr.hpp"

namespace densitylab::setalg::asym {

/// Polynomial in k with rational coefficients, lowest degree first.
struct Poly {
  std::vector<Rational> c;

  static Poly constant(const Rational& v);
  static Poly linear(const Rational& a, const Rational& b);  // a*k + b
  void trim();
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const Rational& lead() const { return c.back(); }
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly negate(const Poly& a);

struct RatFunc {
  Poly num = Poly::constant(1);
  Poly den = Poly::constant(1);
  bool is_zero() const { return num.is_zero(); }
};

RatFunc operator+(const RatFunc& a, const RatFunc& b);
RatFunc operator*(const RatFunc& a, const RatFunc& b);
RatFunc invert(const RatFunc& a);

/// Product of factorials (slope * k)! raised to integer exponents.
using Key = std::map<long, long>;

/// Finite sum of Key * RatFunc terms, the asymptotic normal form of a bound.
struct Series {
  std::map<Key, RatFunc> terms;

  static Series constant(const Rational& v);
  static Series poly(const Poly& p);
  bool is_zero() const { return terms.empty(); }
  /// Plain polynomial value (no factorial factors, constant denominator).
  std::optional<Poly> as_poly() const;
};

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator*(const Series& a, const Series& b);
/// Division by a single-term series; nullopt otherwise.
std::optional<Series> divide(const Series& a, const Series& b);

/// Normal form of a bound as k grows, with n(.) continued by its tail rule.
/// Returns nullopt when the expression leaves the supported shape.
std::optional<Series> from_bound(const BoundExpr& e, const IndexSequence& n);

struct Limit {
  enum class Kind { Value, PlusInfinity, MinusInfinity };
  Kind kind = Kind::Value;
  Rational value;
};

/// lim_{k->inf} x(k)/y(k), or nullopt when the order of growth is not decided
/// by the supported comparison rules.
std::optional<Limit> ratio_limit(const Series& x, const Series& y);

/// lim_{k->inf} x(k).
std::optional<Limit> limit(const Series& x);

}  // namespace densitylab::setalg::asym
