#include "densitylab/streams/stream.hpp"

#include <algorithm>

#include "densitylab/error.hpp"
#include "densitylab/setalg/analysis.hpp"
#include "densitylab/setalg/counting.hpp"

namespace densitylab::streams {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidStructure, what); }

void check_bijection(const std::vector<std::uint64_t>& map) {
  if (map.size() > kMaxPermutationBound) invalid("permutation bound too large");
  std::vector<char> seen(map.size() + 1, 0);
  for (std::uint64_t v : map) {
    if (v < 1 || v > map.size()) invalid("permutation image " + std::to_string(v) + " outside [1," + std::to_string(map.size()) + "]");
    if (seen[v]) invalid("permutation is not injective at image " + std::to_string(v));
    seen[v] = 1;
  }
}

}  // namespace

FinitePermutation FinitePermutation::from_map(std::vector<std::uint64_t> map) {
  check_bijection(map);
  FinitePermutation p;
  p.map_ = std::move(map);
  return p;
}

FinitePermutation FinitePermutation::from_pairs(std::uint64_t n,
                                                const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
  if (n > kMaxPermutationBound) invalid("permutation bound too large");
  std::vector<std::uint64_t> map(n);
  for (std::uint64_t i = 0; i < n; ++i) map[i] = i + 1;
  std::vector<char> listed(n + 1, 0);
  for (auto [a, b] : pairs) {
    if (a < 1 || a > n) invalid("permutation argument " + std::to_string(a) + " outside [1," + std::to_string(n) + "]");
    if (listed[a]) invalid("permutation lists " + std::to_string(a) + " twice");
    listed[a] = 1;
    map[a - 1] = b;
  }
  return from_map(std::move(map));
}

FinitePermutation FinitePermutation::swap(std::uint64_t i, std::uint64_t j) {
  std::uint64_t n = std::max(i, j);
  return from_pairs(n, {{i, j}, {j, i}});
}

Natural FinitePermutation::operator()(const Natural& t) const {
  if (t >= 1 && t <= map_.size()) return Natural(static_cast<unsigned long>(map_[t.get_ui() - 1]));
  return t;
}

FinitePermutation FinitePermutation::after(const FinitePermutation& inner) const {
  std::uint64_t n = std::max(bound(), inner.bound());
  std::vector<std::uint64_t> map(n);
  for (std::uint64_t t = 1; t <= n; ++t) map[t - 1] = (*this)(inner(t));
  FinitePermutation p;
  p.map_ = std::move(map);
  return p;
}

FinitePermutation FinitePermutation::inverse() const {
  std::vector<std::uint64_t> inv(map_.size());
  for (std::uint64_t t = 1; t <= map_.size(); ++t) inv[map_[t - 1] - 1] = t;
  FinitePermutation p;
  p.map_ = std::move(inv);
  return p;
}

bool FinitePermutation::is_identity() const {
  for (std::uint64_t t = 1; t <= map_.size(); ++t)
    if (map_[t - 1] != t) return false;
  return true;
}

std::string FinitePermutation::to_dsl() const {
  std::string out = "perm[" + std::to_string(map_.size()) + "](";
  bool first = true;
  for (std::uint64_t t = 1; t <= map_.size(); ++t) {
    if (map_[t - 1] == t) continue;
    if (!first) out += ",";
    first = false;
    out += std::to_string(t) + "->" + std::to_string(map_[t - 1]);
  }
  return out + ")";
}

Stream::Stream() : Stream(constant(0)) {}

Stream Stream::constant(const Rational& v) { return piecewise(v, {}); }

Stream Stream::piecewise(const Rational& default_value, std::vector<Clause> clauses) {
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    for (std::size_t j = i + 1; j < clauses.size(); ++j) {
      IndexSet both = IndexSet::set_inter(clauses[i].set, clauses[j].set);
      if (setalg::is_empty(both, 5040) == setalg::Tri::No) {
        invalid("piecewise clauses " + clauses[i].set.key() + " and " + clauses[j].set.key() + " overlap");
      }
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Piecewise;
  n->value = default_value;
  if (clauses.empty()) {
    n->key = "const(" + to_string(default_value) + ")";
  } else {
    n->key = "piecewise(default=" + to_string(default_value);
    for (const Clause& c : clauses) n->key += ";" + c.set.key() + ":" + to_string(c.value);
    n->key += ")";
  }
  n->clauses = std::move(clauses);
  return Stream(n);
}

Stream Stream::rank_fill(const IndexSet& u, const Rational& fill) {
  setalg::Finiteness f = setalg::analyze_finiteness(IndexSet::complement(u));
  if (f.status == setalg::Finiteness::Status::Finite) {
    throw Error(ErrorCode::Precondition, "rankfill needs an infinite complement of " + u.key());
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::RankFill;
  n->value = fill;
  n->set = u;
  n->key = "rankfill(" + u.key() + (fill == 1 ? "" : "," + to_string(fill)) + ")";
  return Stream(n);
}

Stream Stream::permuted(const Stream& base, const FinitePermutation& pi) {
  if (base.kind() == Kind::Permuted) return permuted(base.base(), base.node().perm.after(pi));
  if (pi.is_identity()) return base;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Permuted;
  n->base = base.node_;
  n->perm = pi;
  n->key = "permute(" + base.key() + "," + pi.to_dsl() + ")";
  return Stream(n);
}

Rational Stream::eval(const Natural& t) const {
  if (t < 1) throw Error(ErrorCode::Precondition, "coordinates start at 1");
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Piecewise: {
      const Clause* hit = nullptr;
      for (const Clause& c : n.clauses) {
        if (!setalg::member(c.set, t)) continue;
        if (hit) invalid("piecewise clauses overlap at " + t.get_str());
        hit = &c;
      }
      return hit ? hit->value : n.value;
    }
    case Kind::RankFill:
      if (setalg::member(n.set, t)) return n.value;
      return Rational(t - setalg::count(n.set, t) + 1);
    case Kind::Permuted: return base().eval(n.perm(t));
  }
  return 0;
}

namespace {

// Sequential evaluation of x_1, x_2, ..., x_n.
class Cursor {
 public:
  Cursor(const Stream& x, std::uint64_t n) : x_(x) {
    const Stream::Node& node = x.node();
    switch (node.kind) {
      case Stream::Kind::Piecewise:
        for (const auto& c : node.clauses) bits_.push_back(setalg::membership_prefix(c.set, n));
        break;
      case Stream::Kind::RankFill: bits_.push_back(setalg::membership_prefix(node.set, n)); break;
      case Stream::Kind::Permuted: {
        const FinitePermutation& p = node.perm;
        std::uint64_t m = std::max<std::uint64_t>(n, p.bound());
        base_ = std::make_unique<Cursor>(x.base(), m);
        for (std::uint64_t t = 1; t <= p.bound(); ++t) head_.push_back(base_->next());
        break;
      }
    }
  }

  const Rational& next() {
    ++t_;
    const Stream::Node& node = x_.node();
    switch (node.kind) {
      case Stream::Kind::Piecewise: {
        int hit = -1;
        for (std::size_t i = 0; i < bits_.size(); ++i) {
          if (!bits_[i][t_]) continue;
          if (hit >= 0) invalid("piecewise clauses overlap at " + std::to_string(t_));
          hit = static_cast<int>(i);
        }
        return hit >= 0 ? node.clauses[hit].value : node.value;
      }
      case Stream::Kind::RankFill:
        if (bits_[0][t_]) return node.value;
        ++rank_;
        value_ = Rational(Natural(static_cast<unsigned long>(rank_ + 1)));
        return value_;
      case Stream::Kind::Permuted:
        if (t_ <= node.perm.bound()) return head_[node.perm(t_) - 1];
        return base_->next();
    }
    return value_;
  }

 private:
  Stream x_;
  std::uint64_t t_ = 0;
  std::uint64_t rank_ = 0;
  Rational value_;
  std::vector<std::vector<char>> bits_;
  std::unique_ptr<Cursor> base_;
  std::vector<Rational> head_;
};

}  // namespace

void Stream::for_each(std::uint64_t n, const std::function<void(std::uint64_t, const Rational&)>& f) const {
  Cursor c(*this, n);
  for (std::uint64_t t = 1; t <= n; ++t) f(t, c.next());
}

std::vector<Rational> Stream::prefix(std::uint64_t n) const {
  std::vector<Rational> out;
  out.reserve(n);
  for_each(n, [&](std::uint64_t, const Rational& v) { out.push_back(v); });
  return out;
}

bool operator==(const Stream& a, const Stream& b) { return a.key() == b.key(); }

void for_each_pair(const Stream& x, const Stream& y, std::uint64_t n,
                   const std::function<void(std::uint64_t, const Rational&, const Rational&)>& f) {
  Cursor cx(x, n), cy(y, n);
  for (std::uint64_t t = 1; t <= n; ++t) {
    const Rational& a = cx.next();
    const Rational& b = cy.next();
    f(t, a, b);
  }
}

}  // namespace densitylab::streams
