#include "densitylab/swf/swf.hpp"

#include <algorithm>

#include "densitylab/error.hpp"
#include "densitylab/setalg/analysis.hpp"
#include "densitylab/setalg/counting.hpp"
#include "densitylab/setalg/density.hpp"
#include "densitylab/streams/profile.hpp"

namespace densitylab::swf {

using setalg::IndexSet;
using streams::Cell;

SwfValue SwfValue::finite(const Rational& v, std::string method) {
  SwfValue s;
  s.kind = Kind::Finite;
  s.value = v;
  s.method = std::move(method);
  return s;
}

SwfValue SwfValue::plus_infinity(std::string method) {
  SwfValue s;
  s.kind = Kind::PlusInfinity;
  s.method = std::move(method);
  return s;
}

SwfValue SwfValue::estimate(const Rational& lo, const Rational& hi, std::string method) {
  SwfValue s;
  s.kind = Kind::IntervalEstimate;
  s.lo = lo;
  s.hi = hi;
  s.method = std::move(method);
  return s;
}

std::string_view kind_name(SwfValue::Kind k) {
  switch (k) {
    case SwfValue::Kind::Finite: return "finite";
    case SwfValue::Kind::PlusInfinity: return "plus_infinity";
    case SwfValue::Kind::IntervalEstimate: return "interval_estimate";
  }
  return "";
}

namespace {

// Largest explicit prefix summed exactly by the discounted evaluator.
constexpr std::uint64_t kExactDiscountWindow = 4096;
constexpr std::uint64_t kMaxDiscountTerms = 200000;

Natural nat(std::uint64_t t) { return Natural(static_cast<unsigned long>(t)); }

std::vector<SwfCheckpoint> average_checkpoints(const Stream& x) {
  std::vector<SwfCheckpoint> out;
  for (const Natural& n : setalg::checkpoint_schedule()) out.push_back({n, partial_sum(x, n) / Rational(n)});
  return out;
}

SwfValue estimate_from(std::vector<SwfCheckpoint> ev, std::string method) {
  std::size_t half = ev.size() / 2;
  Rational lo = ev[half].value, hi = ev[half].value;
  for (std::size_t i = half; i < ev.size(); ++i) {
    lo = std::min(lo, ev[i].value);
    hi = std::max(hi, ev[i].value);
  }
  SwfValue v = SwfValue::estimate(lo, hi, std::move(method));
  v.evidence = std::move(ev);
  return v;
}

// Value of the Piecewise liminf of averages when every region has a linear
// count form over a common block family.
std::optional<Rational> piecewise_cesaro(const std::vector<Cell>& cells) {
  Rational a = 0, b = 0;
  std::optional<IndexSet> family;
  for (const Cell& c : cells) {
    auto lf = setalg::linear_form(c.region);
    if (!lf) return std::nullopt;
    a += c.value * lf->a;
    if (lf->b == 0) continue;
    if (!family) {
      family = lf->family;
    } else if (!(*family == *lf->family) && !setalg::tail_equivalent(*family, *lf->family)) {
      return std::nullopt;
    }
    b += c.value * lf->b;
  }
  if (b == 0) return a;
  const auto& fa = setalg::family_asymptotics(family->fi());
  if (!fa.lower || !fa.upper) return std::nullopt;
  return a + std::min(b * *fa.lower, b * *fa.upper);
}

Rational power(const Rational& q, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  return r;
}

// sum_{t=1..n} delta^(t-1) x_t by Horner.
Rational discounted_prefix(const std::vector<Rational>& xs, const Rational& delta) {
  Rational acc = 0;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) acc = *it + delta * acc;
  return acc;
}

std::vector<Rational> clause_values(const Stream& x) {
  std::vector<Rational> out{x.node().value};
  for (const auto& c : x.node().clauses) out.push_back(c.value);
  return out;
}

SwfValue discounted_base(const Stream& x, const Rational& delta, const Rational& tol) {
  if (x.kind() == Stream::Kind::RankFill) {
    throw Error(ErrorCode::Unbounded, "rankfill stream " + x.key() + " is unbounded");
  }
  // Piecewise: exact when every region is eventually periodic.
  Natural threshold = 0, period = 1;
  bool periodic = true;
  for (const Cell& c : streams::decompose(x).cells) {
    auto p = setalg::eventual_period(c.region);
    if (!p) {
      periodic = false;
      break;
    }
    threshold = std::max(threshold, p->threshold);
    period = lcm_of(period, p->period);
  }
  if (periodic && threshold + period <= kExactDiscountWindow) {
    std::uint64_t th = to_u64(threshold), per = to_u64(period);
    std::vector<Rational> xs = x.prefix(th + per);
    std::vector<Rational> head(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(th));
    std::vector<Rational> block(xs.begin() + static_cast<std::ptrdiff_t>(th), xs.end());
    Rational dt = power(delta, th);
    Rational total = discounted_prefix(head, delta) + dt * discounted_prefix(block, delta) / (1 - power(delta, per));
    return SwfValue::finite(total, "closed form over period " + std::to_string(per));
  }
  std::vector<Rational> vals = clause_values(x);
  Rational vmin = std::min<Rational>(0, *std::min_element(vals.begin(), vals.end()));
  Rational vmax = std::max<Rational>(0, *std::max_element(vals.begin(), vals.end()));
  Rational spread = vmax - vmin;
  std::uint64_t n = 0;
  Rational dn = 1;  // delta^n
  while (spread * dn / (1 - delta) > tol) {
    dn *= delta;
    if (++n > kMaxDiscountTerms) throw Error(ErrorCode::HorizonExceeded, "tolerance needs too many terms");
  }
  Rational s = discounted_prefix(x.prefix(n), delta);
  Rational tail = dn / (1 - delta);
  SwfValue v = SwfValue::estimate(s + vmin * tail, s + vmax * tail, "truncated after " + std::to_string(n) + " terms");
  v.evidence.push_back({nat(n), s});
  return v;
}

}  // namespace

Rational partial_sum(const Stream& x, const Natural& n) {
  const Stream::Node& node = x.node();
  switch (node.kind) {
    case Stream::Kind::Piecewise: {
      Rational s = 0;
      for (const Cell& c : streams::decompose(x).cells) {
        if (c.value != 0) s += c.value * Rational(setalg::count(c.region, n));
      }
      return s;
    }
    case Stream::Kind::RankFill: {
      Natural c = setalg::count(node.set, n);
      Natural m = n - c;
      return node.value * Rational(c) + Rational(m * (m + 3) / 2);
    }
    case Stream::Kind::Permuted: {
      if (n >= node.perm.bound()) return partial_sum(x.base(), n);
      std::vector<Rational> b = x.base().prefix(node.perm.bound());
      Rational s = 0;
      for (std::uint64_t t = 1; t <= n; ++t) s += b[node.perm(t) - 1];
      return s;
    }
  }
  return 0;
}

SwfValue cesaro_liminf(const Stream& x) {
  if (x.kind() == Stream::Kind::Permuted) {
    SwfValue v = cesaro_liminf(x.base());
    v.method += "; finite permutation leaves partial sums unchanged beyond its bound";
    return v;
  }
  std::vector<SwfCheckpoint> ev = average_checkpoints(x);
  if (x.kind() == Stream::Kind::RankFill) {
    setalg::DensityResult d = setalg::density(IndexSet::complement(x.node().set));
    if (d.exact && d.lower > 0) {
      SwfValue v = SwfValue::plus_infinity("ranked coordinates have lower density " + to_string(d.lower));
      v.evidence = std::move(ev);
      return v;
    }
    return estimate_from(std::move(ev), "checkpoint partial averages");
  }
  if (auto v = piecewise_cesaro(streams::decompose(x).cells)) {
    SwfValue out = SwfValue::finite(*v, "region densities");
    out.evidence = std::move(ev);
    return out;
  }
  return estimate_from(std::move(ev), "checkpoint partial averages");
}

SwfValue discounted_sum(const Stream& x, const Rational& delta, const Rational& tol) {
  if (delta <= 0 || delta >= 1) throw Error(ErrorCode::Precondition, "discount factor must lie in (0,1)");
  if (tol <= 0) throw Error(ErrorCode::Precondition, "tolerance must be positive");
  if (x.kind() != Stream::Kind::Permuted) return discounted_base(x, delta, tol);
  const auto& perm = x.node().perm;
  std::vector<Rational> b = x.base().prefix(perm.bound());
  // Finite correction on the permuted window.
  Rational corr = 0, dt = 1;
  for (std::uint64_t t = 1; t <= perm.bound(); ++t) {
    corr += dt * (b[perm(t) - 1] - b[t - 1]);
    dt *= delta;
  }
  SwfValue v = discounted_base(x.base(), delta, tol);
  v.value += corr;
  v.lo += corr;
  v.hi += corr;
  v.method += "; permutation correction on [1," + std::to_string(perm.bound()) + "]";
  return v;
}

namespace {

bool nonempty(const IndexSet& s) {
  setalg::Tri e = setalg::is_empty(s, Natural(5040));
  if (e == setalg::Tri::Unknown) throw Error(ErrorCode::Unsupported, "emptiness of " + s.key() + " undecided");
  return e == setalg::Tri::No;
}

bool infinite(const IndexSet& s) {
  setalg::Finiteness f = setalg::analyze_finiteness(s);
  if (f.status == setalg::Finiteness::Status::Unknown) {
    throw Error(ErrorCode::Unsupported, "finiteness of " + s.key() + " undecided");
  }
  return f.status == setalg::Finiteness::Status::Infinite;
}

}  // namespace

SwfValue min_swf(const Stream& x) {
  const Stream::Node& node = x.node();
  switch (node.kind) {
    case Stream::Kind::Permuted: return min_swf(x.base());
    case Stream::Kind::RankFill: {
      // the first ranked coordinate carries 2
      Rational m = 2;
      if (nonempty(node.set)) m = std::min(m, node.value);
      return SwfValue::finite(m, "smallest attained value");
    }
    case Stream::Kind::Piecewise: {
      std::optional<Rational> m;
      for (const Cell& c : streams::decompose(x).cells) {
        if (nonempty(c.region) && (!m || c.value < *m)) m = c.value;
      }
      return SwfValue::finite(*m, "smallest attained value");
    }
  }
  return {};
}

SwfValue liminf_swf(const Stream& x) {
  const Stream::Node& node = x.node();
  switch (node.kind) {
    case Stream::Kind::Permuted: return liminf_swf(x.base());
    case Stream::Kind::RankFill:
      if (infinite(node.set)) return SwfValue::finite(node.value, "fill value recurs, ranks grow");
      return SwfValue::plus_infinity("ranks grow without bound");
    case Stream::Kind::Piecewise: {
      std::optional<Rational> m;
      for (const Cell& c : streams::decompose(x).cells) {
        if (infinite(c.region) && (!m || c.value < *m)) m = c.value;
      }
      return SwfValue::finite(*m, "smallest value taken infinitely often");
    }
  }
  return {};
}

std::optional<Which> parse_which(std::string_view name) {
  if (name == "cesaro") return Which::Cesaro;
  if (name == "discounted") return Which::Discounted;
  if (name == "min") return Which::Min;
  if (name == "liminf") return Which::Liminf;
  return std::nullopt;
}

std::string_view which_name(Which w) {
  switch (w) {
    case Which::Cesaro: return "cesaro";
    case Which::Discounted: return "discounted";
    case Which::Min: return "min";
    case Which::Liminf: return "liminf";
  }
  return "";
}

SwfValue evaluate(Which w, const Stream& x, const SwfOptions& opts) {
  switch (w) {
    case Which::Cesaro: return cesaro_liminf(x);
    case Which::Discounted: return discounted_sum(x, opts.delta, opts.tol);
    case Which::Min: return min_swf(x);
    case Which::Liminf: return liminf_swf(x);
  }
  return {};
}

std::string_view ordering_name(Ordering o) {
  switch (o) {
    case Ordering::Better: return "better";
    case Ordering::Equivalent: return "equivalent";
    case Ordering::Worse: return "worse";
    case Ordering::Undecided: return "undecided";
  }
  return "";
}

Ordering compare_values(const SwfValue& a, const SwfValue& b) {
  using K = SwfValue::Kind;
  if (a.kind == K::PlusInfinity || b.kind == K::PlusInfinity) {
    if (a.kind == b.kind) return Ordering::Equivalent;
    // an estimate does not rule out an infinite value
    if (a.kind == K::IntervalEstimate || b.kind == K::IntervalEstimate) return Ordering::Undecided;
    return a.kind == K::PlusInfinity ? Ordering::Better : Ordering::Worse;
  }
  Rational alo = a.kind == K::Finite ? a.value : a.lo, ahi = a.kind == K::Finite ? a.value : a.hi;
  Rational blo = b.kind == K::Finite ? b.value : b.lo, bhi = b.kind == K::Finite ? b.value : b.hi;
  if (alo > bhi) return Ordering::Better;
  if (ahi < blo) return Ordering::Worse;
  if (a.kind == K::Finite && b.kind == K::Finite) return Ordering::Equivalent;
  return Ordering::Undecided;
}

Ordering induced_compare(Which w, const Stream& x, const Stream& y, const SwfOptions& opts) {
  if (x == y) return Ordering::Equivalent;
  return compare_values(evaluate(w, x, opts), evaluate(w, y, opts));
}

}  // namespace densitylab::swf
