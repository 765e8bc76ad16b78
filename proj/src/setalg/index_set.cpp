#include "densitylab/setalg/index_set.hpp"

#include <algorithm>

#include "densitylab/error.hpp"

namespace densitylab::setalg {

namespace {

std::shared_ptr<const IndexSet::Node> make_node(IndexSet::Node n) {
  return std::make_shared<const IndexSet::Node>(std::move(n));
}

void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidStructure, msg); }

}  // namespace

Run materialize(const BlockSpec& b, const Integer* k, const IndexSequence& seq) {
  Integer lo = k ? b.lo.eval(*k, seq) : b.lo.eval(seq);
  Integer hi = k ? b.hi.eval(*k, seq) : b.hi.eval(seq);
  Run r{lo + (b.lo_open ? 1 : 0), hi - (b.hi_open ? 1 : 0)};
  return r;
}

std::string block_to_dsl(const BlockSpec& b) {
  return std::string(b.lo_open ? "(" : "[") + b.lo.to_dsl() + "," + b.hi.to_dsl() + (b.hi_open ? ")" : "]");
}

FactorialIntervalsData::FactorialIntervalsData(FactorialIntervalsSpec spec) : spec_(std::move(spec)) {
  for (const auto& b : spec_.blocks) {
    if (b.lo.uses_k() || b.hi.uses_k()) invalid("explicit block bound uses k");
    Run r = materialize(b, nullptr, spec_.seq);
    if (r.first < 1) invalid("block starts below 1");
    if (r.first > r.last) invalid("empty block " + block_to_dsl(b));
    if (!explicit_.empty() && r.first <= explicit_.back().last) {
      invalid("blocks must be disjoint and increasing");
    }
    explicit_.push_back(r);
  }
  if (spec_.family) {
    if (spec_.family->k0 < 0) invalid("family start index must be >= 0");
    next_k_ = spec_.family->k0;
    // Validate the first blocks eagerly; later blocks are checked on demand.
    family_block(spec_.family->k0);
    extend_until(explicit_.empty() ? Natural(1) : explicit_.back().last);
  }
}

Run FactorialIntervalsData::family_block(long k) const {
  Integer kk(k);
  return materialize(spec_.family->block, &kk, spec_.seq);
}

void FactorialIntervalsData::extend_until(const Natural& limit) const {
  std::lock_guard<std::mutex> lock(mutex_);
  while (family_cache_.empty() || family_cache_.back().first <= limit) {
    Run r = family_block(next_k_);
    if (r.first < 1) invalid("family block starts below 1");
    if (r.first > r.last) invalid("empty family block at k=" + std::to_string(next_k_));
    const Run* prev = !family_cache_.empty() ? &family_cache_.back()
                      : !explicit_.empty()   ? &explicit_.back()
                                             : nullptr;
    if (prev && r.first <= prev->last) {
      invalid("family blocks must be disjoint and increasing (k=" + std::to_string(next_k_) + ")");
    }
    family_cache_.push_back(r);
    ++next_k_;
  }
}

std::vector<Run> FactorialIntervalsData::blocks_upto(const Natural& limit) const {
  std::vector<Run> out;
  for (const auto& r : explicit_) {
    if (r.first > limit) return out;
    out.push_back(r);
  }
  if (!spec_.family) return out;
  extend_until(limit);
  std::lock_guard<std::mutex> lock(mutex_);
  for (const auto& r : family_cache_) {
    if (r.first > limit) break;
    out.push_back(r);
  }
  return out;
}

bool FactorialIntervalsData::contains(const Natural& t) const {
  auto in = [&](const std::vector<Run>& runs) {
    auto it = std::upper_bound(runs.begin(), runs.end(), t,
                               [](const Natural& v, const Run& r) { return v < r.first; });
    if (it == runs.begin()) return false;
    --it;
    return t <= it->last;
  };
  if (in(explicit_)) return true;
  if (!spec_.family) return false;
  extend_until(t);
  std::lock_guard<std::mutex> lock(mutex_);
  return in(family_cache_);
}

std::string FactorialIntervalsData::to_dsl() const {
  std::string out = "fintervals[";
  bool first = true;
  for (const auto& b : spec_.blocks) {
    if (!first) out += ";";
    first = false;
    out += block_to_dsl(b);
  }
  if (spec_.family) {
    if (!first) out += ";";
    first = false;
    out += "k>=" + std::to_string(spec_.family->k0) + ":" + block_to_dsl(spec_.family->block);
  }
  if (!spec_.seq.empty()) {
    if (!first) out += ";";
    out += "n=" + spec_.seq.to_dsl();
  }
  return out + "]";
}

IndexSet::IndexSet() : IndexSet(empty()) {}

IndexSet IndexSet::finite(std::vector<Natural> elements) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] < 1) invalid("finite set elements must be >= 1");
    if (i > 0 && elements[i] <= elements[i - 1]) invalid("finite set must be strictly increasing");
  }
  Node n{Kind::Finite, std::move(elements), 0, 0, std::nullopt, std::nullopt, nullptr, ""};
  n.key = "finite{";
  for (std::size_t i = 0; i < n.elements.size(); ++i) {
    if (i) n.key += ',';
    n.key += n.elements[i].get_str();
  }
  n.key += "}";
  return IndexSet(make_node(std::move(n)));
}

IndexSet IndexSet::arith_prog(const Natural& a, const Natural& d) {
  if (a < 1 || d < 1) invalid("ap requires a >= 1 and d >= 1");
  Node n{Kind::ArithProg, {}, a, d, std::nullopt, std::nullopt, nullptr, ""};
  n.key = (a == 1 && d == 1) ? "nat" : "ap(" + a.get_str() + "," + d.get_str() + ")";
  return IndexSet(make_node(std::move(n)));
}

IndexSet IndexSet::nat() { return arith_prog(1, 1); }

IndexSet IndexSet::empty() { return finite({}); }

IndexSet IndexSet::factorial_points(const IndexSet& base) {
  Node n{Kind::FactorialPoints, {}, 0, 0, base, std::nullopt, nullptr, ""};
  n.key = "factorials(" + base.key() + ")";
  return IndexSet(make_node(std::move(n)));
}

IndexSet IndexSet::factorial_intervals(FactorialIntervalsSpec spec) {
  auto data = std::make_shared<const FactorialIntervalsData>(std::move(spec));
  Node n{Kind::FactorialIntervals, {}, 0, 0, std::nullopt, std::nullopt, data, data->to_dsl()};
  return IndexSet(make_node(std::move(n)));
}

IndexSet IndexSet::interval(const Natural& lo, const Natural& hi) {
  if (lo < 1) invalid("interval requires lo >= 1");
  Node n{Kind::Interval, {}, lo, hi, std::nullopt, std::nullopt, nullptr, ""};
  n.key = "interval(" + lo.get_str() + "," + hi.get_str() + ")";
  return IndexSet(make_node(std::move(n)));
}

IndexSet IndexSet::set_union(const IndexSet& a, const IndexSet& b) {
  Node n{Kind::Union, {}, 0, 0, a, b, nullptr, "union(" + a.key() + "," + b.key() + ")"};
  return IndexSet(make_node(std::move(n)));
}

IndexSet IndexSet::set_inter(const IndexSet& a, const IndexSet& b) {
  Node n{Kind::Inter, {}, 0, 0, a, b, nullptr, "inter(" + a.key() + "," + b.key() + ")"};
  return IndexSet(make_node(std::move(n)));
}

IndexSet IndexSet::complement(const IndexSet& a) {
  Node n{Kind::Compl, {}, 0, 0, a, std::nullopt, nullptr, "compl(" + a.key() + ")"};
  return IndexSet(make_node(std::move(n)));
}

IndexSet IndexSet::difference(const IndexSet& a, const IndexSet& b) {
  Node n{Kind::Diff, {}, 0, 0, a, b, nullptr, "diff(" + a.key() + "," + b.key() + ")"};
  return IndexSet(make_node(std::move(n)));
}

IndexSet IndexSet::at_least(const Natural& t) {
  if (t <= 1) return nat();
  return complement(interval(1, t - 1));
}

IndexSet IndexSet::from_runs(const std::vector<Run>& runs) {
  if (runs.empty()) return empty();
  FactorialIntervalsSpec spec;
  for (const auto& r : runs) {
    spec.blocks.push_back(BlockSpec{BoundExpr::constant(r.first), BoundExpr::constant(r.last), false, false});
  }
  return factorial_intervals(std::move(spec));
}

Kind IndexSet::kind() const { return node_->kind; }
const std::string& IndexSet::key() const { return node_->key; }
const std::vector<Natural>& IndexSet::elements() const { return node_->elements; }
const Natural& IndexSet::ap_start() const { return node_->a; }
const Natural& IndexSet::ap_step() const { return node_->b; }
const Natural& IndexSet::lo() const { return node_->a; }
const Natural& IndexSet::hi() const { return node_->b; }
const IndexSet& IndexSet::lhs() const { return *node_->lhs; }
const IndexSet& IndexSet::rhs() const { return *node_->rhs; }
const FactorialIntervalsData& IndexSet::fi() const { return *node_->fi; }

bool IndexSet::is_nat() const { return node_->kind == Kind::ArithProg && node_->a == 1 && node_->b == 1; }
bool IndexSet::is_empty_literal() const { return node_->kind == Kind::Finite && node_->elements.empty(); }

bool operator==(const IndexSet& a, const IndexSet& b) { return a.key() == b.key(); }

}  // namespace densitylab::setalg
