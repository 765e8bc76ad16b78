#include "densitylab/error.hpp"
#include "densitylab/gadgets/gadgets.hpp"
#include "densitylab/setalg/analysis.hpp"
#include "densitylab/setalg/counting.hpp"
#include "densitylab/streams/profile.hpp"

namespace densitylab::gadgets {

std::string_view link_kind_name(Link::Kind k) {
  switch (k) {
    case Link::Kind::Verified: return "verified";
    case Link::Kind::Assumed: return "assumed-by-case";
    case Link::Kind::Derived: return "derived";
  }
  return "?";
}

namespace {

Natural nat_of(std::uint64_t t) { return Natural(static_cast<unsigned long>(t)); }

// Structural confirmation: nothing below, every claimed coordinate above.
void structural(Link& l, const Stream& hi, const Stream& lo, const IndexSet& claimed, std::uint64_t horizon) {
  streams::Profile p;
  try {
    p = streams::compare_profile(hi, lo);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unsupported && e.code() != ErrorCode::HorizonExceeded) throw;
    l.notes.push_back(e.what());
    return;
  }
  for (const auto& n : p.notes) l.notes.push_back(n);
  if (!p.complete()) return;
  Natural h = nat_of(horizon);
  setalg::Tri below = setalg::is_empty(p.less, h);
  if (below == setalg::Tri::No) {
    l.status = Status::Fails;
    l.witness = setalg::nth_element(p.less, 1);
    l.reason = "right side exceeds left side beyond the horizon";
    return;
  }
  if (below == setalg::Tri::Yes &&
      setalg::is_empty(IndexSet::difference(claimed, p.greater), h) == setalg::Tri::Yes) {
    l.method = "structural";
  }
}

}  // namespace

Link check_dominance(const std::string& relation, const Stream& hi, const Stream& lo, const IndexSet& claimed,
                     std::uint64_t horizon) {
  if (horizon > axioms::kMaxHorizon) {
    throw Error(ErrorCode::HorizonExceeded, "horizon " + std::to_string(horizon) + " exceeds the maximum");
  }
  Link l;
  l.relation = relation;
  l.horizon = horizon;
  l.claimed = claimed;
  l.method = "scan";

  std::vector<char> in = setalg::membership_prefix(claimed, horizon);
  std::uint64_t seen = 0;
  std::optional<std::uint64_t> below, weak;
  streams::for_each_pair(hi, lo, horizon, [&](std::uint64_t t, const Rational& a, const Rational& b) {
    if (a < b && !below) below = t;
    if (in[t]) {
      ++seen;
      if (a <= b && !weak) weak = t;
    }
  });
  if (below) {
    l.status = Status::Fails;
    l.witness = nat_of(*below);
    l.reason = "right side exceeds left side at a scanned coordinate";
    return l;
  }
  if (weak) {
    l.status = Status::Fails;
    l.witness = nat_of(*weak);
    l.reason = "claimed strict coordinate is not strict";
    return l;
  }

  l.density = setalg::density(claimed);
  if (!l.density->has_density() || l.density->lower != 1) {
    l.status = l.density->exact ? Status::Fails : Status::Undecided;
    l.reason = "claimed strict set has no exact density one";
    return l;
  }

  structural(l, hi, lo, claimed, horizon);
  if (l.status == Status::Fails) return l;
  if (seen == 0) {
    l.status = Status::Undecided;
    l.reason = "no claimed strict coordinate within the horizon";
    return l;
  }
  l.status = Status::Holds;
  return l;
}

Status combine(const std::vector<Link>& links) {
  Status out = Status::Holds;
  for (const Link& l : links) {
    if (l.kind != Link::Kind::Verified) continue;
    if (l.status == Status::Fails || l.status == Status::Incomparable) return Status::Fails;
    if (l.status == Status::Undecided) out = Status::Undecided;
  }
  return out;
}

}  // namespace densitylab::gadgets
