#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "densitylab/numeric.hpp"
#include "densitylab/setalg/index_set.hpp"

namespace densitylab::streams {

using setalg::IndexSet;

/// Bijection of [1, N], identity above N.
class FinitePermutation {
 public:
  FinitePermutation() = default;

  /// map[i] is the image of i + 1.
  static FinitePermutation from_map(std::vector<std::uint64_t> map);
  /// Listed images; unlisted points of [1, N] are fixed.
  static FinitePermutation from_pairs(std::uint64_t n, const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs);
  static FinitePermutation swap(std::uint64_t i, std::uint64_t j);

  std::uint64_t bound() const { return map_.size(); }
  std::uint64_t operator()(std::uint64_t t) const { return t >= 1 && t <= map_.size() ? map_[t - 1] : t; }
  Natural operator()(const Natural& t) const;
  /// t -> (*this)(inner(t)).
  FinitePermutation after(const FinitePermutation& inner) const;
  FinitePermutation inverse() const;
  bool is_identity() const;
  const std::vector<std::uint64_t>& map() const { return map_; }
  std::string to_dsl() const;

 private:
  std::vector<std::uint64_t> map_;
};

/// Largest permutation bound accepted.
inline constexpr std::uint64_t kMaxPermutationBound = std::uint64_t{1} << 24;

class Stream {
 public:
  enum class Kind { Piecewise, RankFill, Permuted };

  struct Clause {
    IndexSet set;
    Rational value;
  };

  struct Node {
    Kind kind;
    Rational value;                // Piecewise default, RankFill fill
    std::vector<Clause> clauses;   // Piecewise
    IndexSet set;                  // RankFill U
    std::shared_ptr<const Node> base;
    FinitePermutation perm;
    std::string key;
  };

  Stream();  // constant 0

  static Stream constant(const Rational& v);
  /// First matching clause wins; overlapping clauses are rejected when the
  /// overlap is structurally visible and otherwise on first evaluation.
  static Stream piecewise(const Rational& default_value, std::vector<Clause> clauses);
  /// fill on U; at the m-th element of the complement of U, the value m + 1.
  static Stream rank_fill(const IndexSet& u, const Rational& fill = 1);
  /// y(t) = x(pi(t)); nested permutations are composed.
  static Stream permuted(const Stream& base, const FinitePermutation& pi);

  Kind kind() const { return node_->kind; }
  const Node& node() const { return *node_; }
  Stream base() const { return Stream(node_->base); }
  const std::string& key() const { return node_->key; }
  std::string to_dsl() const { return key(); }

  Rational eval(const Natural& t) const;
  std::vector<Rational> prefix(std::uint64_t n) const;
  /// Calls f(t, x_t) for t = 1..n in order without materializing the prefix.
  void for_each(std::uint64_t n, const std::function<void(std::uint64_t, const Rational&)>& f) const;

 private:
  explicit Stream(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

bool operator==(const Stream& a, const Stream& b);

/// Calls f(t, x_t, y_t) for t = 1..n.
void for_each_pair(const Stream& x, const Stream& y, std::uint64_t n,
                   const std::function<void(std::uint64_t, const Rational&, const Rational&)>& f);

}  // namespace densitylab::streams
