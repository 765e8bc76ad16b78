#pragma once

#include <memory>
#include <string>
#include <vector>

#include "densitylab/numeric.hpp"

namespace densitylab::setalg {

/// Integer sequence n(1), n(2), ... given by a strictly increasing prefix.
/// Past the prefix it continues with step 1; an empty prefix is the identity.
class IndexSequence {
 public:
  IndexSequence() = default;
  explicit IndexSequence(std::vector<Natural> prefix);

  Natural at(const Integer& j) const;
  const std::vector<Natural>& prefix() const { return prefix_; }
  bool empty() const { return prefix_.empty(); }
  /// n(j) = j + tail_offset() for all j past the prefix.
  Integer tail_offset() const;
  std::string to_dsl() const;

 private:
  std::vector<Natural> prefix_;
};

/// Integer expression over the block index k, factorials, and n(.) lookups.
class BoundExpr {
 public:
  enum class Op { Const, K, Seq, Fact, Add, Sub, Mul, Div };

  struct Node {
    Op op;
    Integer value;
    std::shared_ptr<const Node> lhs, rhs;
  };

  BoundExpr() : BoundExpr(constant(Integer(0))) {}

  static BoundExpr constant(const Integer& v);
  static BoundExpr k();
  static BoundExpr seq(const BoundExpr& arg);
  static BoundExpr fact(const BoundExpr& arg);
  static BoundExpr binary(Op op, const BoundExpr& a, const BoundExpr& b);
  static BoundExpr from_node(std::shared_ptr<const Node> n) { return BoundExpr(std::move(n)); }

  Integer eval(const Integer& k, const IndexSequence& n) const;
  Integer eval(const IndexSequence& n) const;  // k-free expressions only

  bool uses_k() const;
  bool uses_seq() const;
  /// Same expression with k replaced by k + s.
  BoundExpr shift_k(long s) const;
  std::string to_dsl() const;

  const Node& root() const { return *root_; }
  std::shared_ptr<const Node> root_ptr() const { return root_; }

 private:
  explicit BoundExpr(std::shared_ptr<const Node> r) : root_(std::move(r)) {}
  std::shared_ptr<const Node> root_;
};

/// Largest factorial argument evaluated before giving up.
inline constexpr unsigned long kMaxFactorialArgument = 5000;

}  // namespace densitylab::setalg
