#include "densitylab/axioms/axioms.hpp"

#include <algorithm>
#include <numeric>

#include "densitylab/error.hpp"
#include "densitylab/setalg/analysis.hpp"
#include "densitylab/setalg/counting.hpp"

namespace densitylab::axioms {

using setalg::Finiteness;
using setalg::IndexSet;
using setalg::Tri;
using streams::Profile;
using streams::Scan;

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    case Status::Incomparable: return "incomparable";
    case Status::Undecided: return "undecided";
  }
  return "undecided";
}

namespace {

struct Named {
  Axiom axiom;
  std::string_view name;
};

constexpr Named kNames[] = {
    {Axiom::Uniform, "uniform"},          {Axiom::Weak, "weak"},   {Axiom::AlmostWeak, "almost_weak"},
    {Axiom::DensityOne, "density_one"},   {Axiom::Lower, "lower"}, {Axiom::Upper, "upper"},
    {Axiom::Infinite, "infinite"},        {Axiom::Pareto, "pareto"},
};

void check_horizon(std::uint64_t h) {
  if (h > kMaxHorizon) throw Error(ErrorCode::Precondition, "horizon above " + std::to_string(kMaxHorizon));
}

// First element of a set known to be nonempty, or nullopt when it cannot be located.
std::optional<Natural> first_element(const IndexSet& s) {
  try {
    return setalg::nth_element(s, 1);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Unsupported || e.code() == ErrorCode::HorizonExceeded ||
        e.code() == ErrorCode::NotEnoughElements) {
      return std::nullopt;
    }
    throw;
  }
}

Natural nat(std::uint64_t t) { return Natural(static_cast<unsigned long>(t)); }

// Shared analysis of one ordered pair.
class Context {
 public:
  Context(const Stream& x, const Stream& y, std::uint64_t horizon) : x_(x), y_(y), horizon_(horizon) {
    check_horizon(horizon);
    profile_ = streams::compare_profile(x, y);
    weak_ = compute_weak();
  }

  const Profile& profile() const { return profile_; }
  const Verdict& weak() const { return weak_; }
  std::uint64_t horizon() const { return horizon_; }

  const Scan& scan() {
    if (!scan_) scan_ = streams::scan(x_, y_, horizon_);
    return *scan_;
  }

  const setalg::DensityResult& strict_density() {
    if (!density_) density_ = setalg::density(profile_.greater);
    return *density_;
  }

  Verdict base() const {
    Verdict v;
    v.horizon = horizon_;
    if (profile_.complete()) v.strict = profile_.greater;
    return v;
  }

 private:
  Verdict compute_weak() {
    Verdict v = base();
    if (profile_.complete()) {
      Tri e = setalg::is_empty(profile_.less, nat(horizon_));
      if (e == Tri::Yes) {
        v.status = Status::Holds;
        v.reason = "no coordinate with x < y";
        return v;
      }
      if (e == Tri::No) {
        v.status = Status::Fails;
        v.witness = first_element(profile_.less);
        if (!v.witness && scan().first_less) v.witness = nat(*scan().first_less);
        v.reason = "coordinate with x < y";
        return v;
      }
    }
    const Scan& s = scan();
    if (s.first_less) {
      v.status = Status::Fails;
      v.witness = nat(*s.first_less);
      v.reason = "coordinate with x < y found by scan";
      return v;
    }
    v.status = Status::Undecided;
    v.reason = profile_.complete() ? "emptiness of {x < y} undecided beyond the horizon"
                                   : "sign of x - y undetermined on " + profile_.unknown.key();
    return v;
  }

  Stream x_, y_;
  std::uint64_t horizon_;
  Profile profile_;
  Verdict weak_;
  std::optional<Scan> scan_;
  std::optional<setalg::DensityResult> density_;
};

Verdict decide(Axiom a, Context& ctx) {
  const Verdict& weak = ctx.weak();
  if (weak.status != Status::Holds) {
    Verdict v = weak;
    if (v.status == Status::Fails) v.reason = "not weakly dominating: " + weak.reason;
    return v;
  }
  Verdict v = ctx.base();
  const IndexSet& s = ctx.profile().greater;
  const IndexSet rest = IndexSet::complement(s);
  auto hold = [&](std::string why) {
    v.status = Status::Holds;
    v.reason = std::move(why);
    return v;
  };
  auto fail = [&](std::string why, std::optional<Natural> at = std::nullopt) {
    v.status = Status::Fails;
    v.witness = std::move(at);
    v.reason = std::move(why);
    return v;
  };
  auto undecided = [&](std::string why) {
    v.status = Status::Undecided;
    v.reason = std::move(why);
    return v;
  };
  auto with_density = [&](auto decide_exact) {
    const setalg::DensityResult& d = ctx.strict_density();
    v.density = d;
    if (!d.exact) return undecided("strict set density only estimated");
    return decide_exact(d);
  };

  switch (a) {
    case Axiom::Pareto: {
      Tri e = setalg::is_empty(s, nat(ctx.horizon()));
      if (e == Tri::No) {
        v.witness = first_element(s);
        return hold("strict set nonempty");
      }
      if (e == Tri::Yes) return fail("strict set empty");
      return undecided("strict set emptiness undecided within the horizon");
    }
    case Axiom::Infinite: {
      Finiteness f = setalg::analyze_finiteness(s);
      if (f.status == Finiteness::Status::Infinite) return hold("strict set infinite");
      if (f.status == Finiteness::Status::Finite) return fail("strict set finite, none above the bound", f.bound + 1);
      return undecided("strict set finiteness undecided: " + f.reason);
    }
    case Axiom::Upper:
      return with_density([&](const setalg::DensityResult& d) {
        return d.upper > 0 ? hold("strict set upper density " + to_string(d.upper))
                           : fail("strict set upper density 0");
      });
    case Axiom::Lower:
      return with_density([&](const setalg::DensityResult& d) {
        return d.lower > 0 ? hold("strict set lower density " + to_string(d.lower))
                           : fail("strict set lower density 0");
      });
    case Axiom::DensityOne:
      return with_density([&](const setalg::DensityResult& d) {
        return d.lower == 1 ? hold("strict set density 1")
                            : fail("strict set lower density " + to_string(d.lower) + " below 1");
      });
    case Axiom::AlmostWeak: {
      Finiteness f = setalg::analyze_finiteness(rest);
      if (f.status == Finiteness::Status::Finite) return hold("strict set cofinite");
      if (f.status == Finiteness::Status::Infinite) return fail("infinitely many coordinates with x = y", first_element(rest));
      return undecided("cofiniteness undecided: " + f.reason);
    }
    case Axiom::Weak:
    case Axiom::Uniform: {
      Tri e = setalg::is_empty(rest, nat(ctx.horizon()));
      if (e == Tri::No) return fail("coordinate with x = y", first_element(rest));
      if (e == Tri::Unknown) return undecided("equality set undecided within the horizon");
      if (ctx.horizon() > 0) v.gap = ctx.scan().min_gap;
      // Piecewise differences attain their infimum, so strict everywhere
      // already bounds the gap away from zero.
      return hold(a == Axiom::Weak ? "x > y everywhere" : "x - y attains a positive minimum");
    }
  }
  return v;
}

}  // namespace

std::string_view axiom_name(Axiom a) {
  for (const auto& n : kNames)
    if (n.axiom == a) return n.name;
  return "";
}

std::optional<Axiom> parse_axiom(std::string_view name) {
  for (const auto& n : kNames)
    if (n.name == name) return n.axiom;
  return std::nullopt;
}

const std::vector<Axiom>& all_axioms() {
  static const std::vector<Axiom> v = {Axiom::Uniform,    Axiom::Weak,  Axiom::AlmostWeak, Axiom::DensityOne,
                                       Axiom::Lower,      Axiom::Upper, Axiom::Infinite,   Axiom::Pareto};
  return v;
}

Verdict weakly_dominates(const Stream& x, const Stream& y, std::uint64_t horizon) {
  return Context(x, y, horizon).weak();
}

Verdict dominates(Axiom a, const Stream& x, const Stream& y, std::uint64_t horizon) {
  Context ctx(x, y, horizon);
  return decide(a, ctx);
}

Verdict pareto_dominates(const Stream& x, const Stream& y, std::uint64_t h) { return dominates(Axiom::Pareto, x, y, h); }
Verdict infinite_pareto_dominates(const Stream& x, const Stream& y, std::uint64_t h) {
  return dominates(Axiom::Infinite, x, y, h);
}
Verdict upper_asym_dominates(const Stream& x, const Stream& y, std::uint64_t h) { return dominates(Axiom::Upper, x, y, h); }
Verdict lower_asym_dominates(const Stream& x, const Stream& y, std::uint64_t h) { return dominates(Axiom::Lower, x, y, h); }
Verdict density_one_dominates(const Stream& x, const Stream& y, std::uint64_t h) {
  return dominates(Axiom::DensityOne, x, y, h);
}
Verdict almost_weak_dominates(const Stream& x, const Stream& y, std::uint64_t h) {
  return dominates(Axiom::AlmostWeak, x, y, h);
}
Verdict weak_pareto_dominates(const Stream& x, const Stream& y, std::uint64_t h) { return dominates(Axiom::Weak, x, y, h); }
Verdict uniform_dominates(const Stream& x, const Stream& y, std::uint64_t h) { return dominates(Axiom::Uniform, x, y, h); }

std::vector<std::pair<Axiom, Verdict>> implication_chain_report(const Stream& x, const Stream& y, std::uint64_t horizon) {
  Context ctx(x, y, horizon);
  std::vector<std::pair<Axiom, Verdict>> out;
  for (Axiom a : all_axioms()) out.emplace_back(a, decide(a, ctx));
  return out;
}

bool chain_consistent(const std::vector<std::pair<Axiom, Verdict>>& report) {
  // Once a stronger premise holds, every weaker one must hold too.
  bool held = false;
  for (const auto& [a, v] : report) {
    if (held && v.status != Status::Holds && v.status != Status::Undecided) return false;
    held = held || v.status == Status::Holds;
  }
  return true;
}

std::optional<FinitePermutation> sort_match(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  const std::size_t n = x.size();
  if (y.size() != n) throw Error(ErrorCode::Precondition, "windows differ in length");
  std::vector<std::uint64_t> ix(n), iy(n);
  std::iota(ix.begin(), ix.end(), 0);
  std::iota(iy.begin(), iy.end(), 0);
  std::stable_sort(ix.begin(), ix.end(), [&](auto a, auto b) { return x[a] > x[b]; });
  std::stable_sort(iy.begin(), iy.end(), [&](auto a, auto b) { return y[a] > y[b]; });
  std::vector<std::uint64_t> map(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[ix[i]] < y[iy[i]]) return std::nullopt;
    map[iy[i]] = ix[i] + 1;
  }
  return FinitePermutation::from_map(std::move(map));
}

namespace {

struct Direction {
  Status status = Status::Undecided;
  std::optional<FinitePermutation> perm;
  std::string reason;
};

// Some finite permutation p with x(p(t)) >= y(t) for all t.
Direction ss_direction(const Profile& p, const Stream& x, const Stream& y, std::uint64_t horizon) {
  Direction d;
  if (!p.complete()) {
    d.reason = "sign of x - y undetermined on " + p.unknown.key();
    return d;
  }
  Finiteness less = setalg::analyze_finiteness(p.less);
  if (less.status == Finiteness::Status::Infinite) {
    d.status = Status::Fails;
    d.reason = "infinitely many coordinates with x < y";
    return d;
  }
  if (less.status == Finiteness::Status::Unknown) {
    d.reason = "finiteness of {x < y} undecided";
    return d;
  }
  Finiteness more = setalg::analyze_finiteness(p.greater);
  if (more.status == Finiteness::Status::Unknown) {
    d.reason = "finiteness of {x > y} undecided";
    return d;
  }
  Natural w = less.bound;
  if (more.status == Finiteness::Status::Finite && more.bound > w) w = more.bound;
  if (w > kMaxWindow) {
    d.reason = "differing window exceeds " + std::to_string(kMaxWindow);
    return d;
  }
  std::uint64_t win = std::max<std::uint64_t>(to_u64(w), 1);
  auto attempt = [&](std::uint64_t n) {
    std::optional<FinitePermutation> m = sort_match(x.prefix(n), y.prefix(n));
    if (m) {
      d.status = Status::Holds;
      d.perm = std::move(m);
      d.reason = "sorted window [1," + std::to_string(n) + "] dominates";
    }
    return m.has_value();
  };
  if (attempt(win)) return d;
  if (more.status == Finiteness::Status::Finite) {
    d.status = Status::Fails;
    d.reason = "sorted window [1," + std::to_string(win) + "] fails and the streams agree beyond it";
    return d;
  }
  // Surplus coordinates beyond the window can absorb deficits: widen.
  for (std::uint64_t n = win * 2; n <= std::min(horizon, kMaxWindow); n *= 2) {
    if (attempt(n)) return d;
  }
  if (win < horizon && horizon <= kMaxWindow && attempt(horizon)) return d;
  d.reason = "no dominating window up to the horizon";
  return d;
}

}  // namespace

Verdict suppes_sen_compare(const Stream& x, const Stream& y, std::uint64_t horizon) {
  check_horizon(horizon);
  Verdict v;
  v.horizon = horizon;
  Direction a = ss_direction(streams::compare_profile(x, y), x, y, horizon);
  if (a.status == Status::Holds) {
    v.status = Status::Holds;
    v.permutation = a.perm;
    v.reason = a.reason;
    return v;
  }
  Direction b = ss_direction(streams::compare_profile(y, x), y, x, horizon);
  if (a.status == Status::Fails && b.status == Status::Holds) {
    v.status = Status::Fails;
    v.reason = "reverse comparison holds: " + b.reason;
    v.permutation = b.perm;
    return v;
  }
  if (a.status == Status::Fails && b.status == Status::Fails) {
    v.status = Status::Incomparable;
    v.reason = a.reason + "; reverse: " + b.reason;
    return v;
  }
  v.reason = a.status == Status::Undecided ? a.reason : b.reason;
  return v;
}

Verdict lex_compare(const Stream& x, const Stream& y, std::uint64_t horizon) {
  check_horizon(horizon);
  Verdict v;
  v.horizon = horizon;
  Profile p = streams::compare_profile(x, y);
  if (p.complete()) {
    IndexSet diff = IndexSet::set_union(p.greater, p.less);
    Tri e = setalg::is_empty(diff, nat(horizon));
    if (e == Tri::Yes) {
      v.status = Status::Fails;
      v.reason = "streams are equal";
      return v;
    }
    if (e == Tri::No) {
      if (auto t = first_element(diff)) {
        v.witness = t;
        bool up = setalg::member(p.greater, *t);
        v.status = up ? Status::Holds : Status::Fails;
        v.reason = std::string("first difference favours ") + (up ? "x" : "y");
        return v;
      }
    }
  }
  Scan s = streams::scan(x, y, horizon);
  std::optional<std::uint64_t> first;
  if (s.first_greater) first = s.first_greater;
  if (s.first_less && (!first || *s.first_less < *first)) first = s.first_less;
  if (first) {
    v.witness = nat(*first);
    v.status = first == s.first_greater ? Status::Holds : Status::Fails;
    v.reason = std::string("first difference favours ") + (v.status == Status::Holds ? "x" : "y");
    return v;
  }
  v.reason = "no difference up to the horizon and no structural equality proof";
  return v;
}

Verdict anonymity_equivalent(const Stream& x, const Stream& y, std::uint64_t horizon) {
  check_horizon(horizon);
  Verdict v;
  v.horizon = horizon;
  Profile p = streams::compare_profile(x, y);
  if (!p.complete()) {
    v.reason = "sign of x - y undetermined on " + p.unknown.key();
    Scan s = streams::scan(x, y, horizon);
    if (s.greater == 0 && s.less == 0) return v;
    // A finite permutation fixes everything past its bound; the prefix
    // multisets of x and y must agree from there on.
    std::vector<Rational> a = x.prefix(horizon), b = y.prefix(horizon);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) v.reason += "; value multisets on [1," + std::to_string(horizon) + "] differ";
    return v;
  }
  IndexSet diff = IndexSet::set_union(p.greater, p.less);
  Finiteness f = setalg::analyze_finiteness(diff);
  if (f.status == Finiteness::Status::Infinite) {
    v.status = Status::Fails;
    v.witness = first_element(diff);
    v.reason = "streams differ at infinitely many coordinates";
    return v;
  }
  if (f.status == Finiteness::Status::Unknown) {
    v.reason = "finiteness of the differing set undecided";
    return v;
  }
  if (f.bound > kMaxWindow) {
    v.reason = "differing window exceeds " + std::to_string(kMaxWindow);
    return v;
  }
  std::uint64_t n = std::max<std::uint64_t>(to_u64(f.bound), 1);
  std::vector<Rational> a = x.prefix(n), b = y.prefix(n);
  // y(t) = x(p(t)): match equal values in sorted order.
  std::vector<std::uint64_t> ia(n), ib(n);
  std::iota(ia.begin(), ia.end(), 0);
  std::iota(ib.begin(), ib.end(), 0);
  std::stable_sort(ia.begin(), ia.end(), [&](auto i, auto j) { return a[i] < a[j]; });
  std::stable_sort(ib.begin(), ib.end(), [&](auto i, auto j) { return b[i] < b[j]; });
  std::vector<std::uint64_t> map(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (a[ia[i]] != b[ib[i]]) {
      v.status = Status::Fails;
      v.reason = "value multisets on the differing window [1," + std::to_string(n) + "] differ";
      return v;
    }
    map[ib[i]] = ia[i] + 1;
  }
  v.status = Status::Holds;
  v.permutation = FinitePermutation::from_map(std::move(map));
  v.reason = "equal value multisets on [1," + std::to_string(n) + "] and equal beyond";
  return v;
}

}  // namespace densitylab::axioms
