#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "densitylab/numeric.hpp"
#include "densitylab/setalg/bound_expr.hpp"

namespace densitylab::setalg {

enum class Kind {
  Finite,
  ArithProg,
  FactorialPoints,
  FactorialIntervals,
  Interval,
  Union,
  Inter,
  Compl,
  Diff,
};

/// One integer block with symbolic bounds; open ends exclude the bound.
struct BlockSpec {
  BoundExpr lo, hi;
  bool lo_open = false;
  bool hi_open = false;
};

/// Blocks indexed by k = k0, k0+1, ... sharing one bound template.
struct BlockFamily {
  long k0 = 1;
  BlockSpec block;
};

struct FactorialIntervalsSpec {
  std::vector<BlockSpec> blocks;
  std::optional<BlockFamily> family;
  IndexSequence seq;
};

/// Materialized block: all integers in [first, last].
struct Run {
  Natural first, last;
};

class FactorialIntervalsData;

class IndexSet {
 public:
  struct Node;

  IndexSet();  // empty set

  static IndexSet finite(std::vector<Natural> elements);
  static IndexSet arith_prog(const Natural& a, const Natural& d);
  static IndexSet nat();
  static IndexSet empty();
  static IndexSet factorial_points(const IndexSet& base);
  static IndexSet factorial_intervals(FactorialIntervalsSpec spec);
  static IndexSet interval(const Natural& lo, const Natural& hi);
  static IndexSet set_union(const IndexSet& a, const IndexSet& b);
  static IndexSet set_inter(const IndexSet& a, const IndexSet& b);
  static IndexSet complement(const IndexSet& a);
  static IndexSet difference(const IndexSet& a, const IndexSet& b);

  /// Elements >= t, i.e. compl(interval(1, t-1)) or nat.
  static IndexSet at_least(const Natural& t);
  /// Union of explicit runs as a block list.
  static IndexSet from_runs(const std::vector<Run>& runs);

  Kind kind() const;
  const Node& node() const { return *node_; }
  /// Canonical DSL text; equal keys mean structurally equal sets.
  const std::string& key() const;
  std::string to_dsl() const { return key(); }

  // Accessors, valid for the matching kind.
  const std::vector<Natural>& elements() const;
  const Natural& ap_start() const;
  const Natural& ap_step() const;
  const Natural& lo() const;
  const Natural& hi() const;
  const IndexSet& lhs() const;  // also the base of FactorialPoints
  const IndexSet& rhs() const;
  const FactorialIntervalsData& fi() const;

  bool is_nat() const;
  bool is_empty_literal() const;

 private:
  explicit IndexSet(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

bool operator==(const IndexSet& a, const IndexSet& b);

/// Factorial-interval atom with a lazily extended cache of family blocks.
/// The cache is transparent: results are identical with or without it.
class FactorialIntervalsData {
 public:
  explicit FactorialIntervalsData(FactorialIntervalsSpec spec);

  const FactorialIntervalsSpec& spec() const { return spec_; }
  bool has_family() const { return spec_.family.has_value(); }

  /// All blocks whose first element is <= limit, in increasing order.
  std::vector<Run> blocks_upto(const Natural& limit) const;
  /// Explicit blocks only.
  const std::vector<Run>& explicit_blocks() const { return explicit_; }
  /// Block of the family at index k (k >= k0).
  Run family_block(long k) const;
  bool contains(const Natural& t) const;
  std::string to_dsl() const;

 private:
  void extend_until(const Natural& limit) const;

  FactorialIntervalsSpec spec_;
  std::vector<Run> explicit_;
  mutable std::mutex mutex_;
  mutable std::vector<Run> family_cache_;
  mutable long next_k_ = 0;
};

struct IndexSet::Node {
  Kind kind;
  std::vector<Natural> elements;
  Natural a, b;  // ArithProg (start, step) or Interval (lo, hi)
  std::optional<IndexSet> lhs, rhs;
  std::shared_ptr<const FactorialIntervalsData> fi;
  std::string key;
};

/// Block first/last after applying open ends.
Run materialize(const BlockSpec& b, const Integer* k, const IndexSequence& seq);

std::string block_to_dsl(const BlockSpec& b);

}  // namespace densitylab::setalg
