#include "densitylab/error.hpp"
#include "serialize.hpp"

namespace densitylab::cli {

using gadgets::Link;
using streams::Stream;

namespace {

Json links_json(const std::vector<Link>& links) {
  Json a = Json::array();
  for (const Link& l : links) a.push_back(link_json(l));
  return a;
}

bool any_failure(const std::vector<Link>& links) {
  for (const Link& l : links) {
    if (l.kind == Link::Kind::Verified && l.status == axioms::Status::Fails) return true;
  }
  return false;
}

std::string status_str(axioms::Status s) { return std::string(axioms::status_name(s)); }

// t,<name1>,<name2>,... for t = 1..n
std::string dump_csv(const std::vector<std::pair<std::string, Stream>>& cols, std::uint64_t n) {
  std::string out = "t";
  std::vector<std::vector<Rational>> vals;
  for (const auto& [name, s] : cols) {
    out += "," + name;
    vals.push_back(s.prefix(n));
  }
  out += "\n";
  for (std::uint64_t t = 1; t <= n; ++t) {
    out += std::to_string(t);
    for (const auto& v : vals) out += "," + to_string(v[t - 1]);
    out += "\n";
  }
  return out;
}

Json u64_list(const std::vector<std::uint64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

}  // namespace

std::pair<Json, bool> run_gadget_lemma1(const Lemma1Args& a, const RunConfig& cfg, std::uint64_t dump,
                                        std::string* csv) {
  const bool explicit_base = !a.base_r.empty();
  if (!explicit_base && !a.r) throw Error(ErrorCode::ParseError, "gadget lemma1 requires --r or --base-r");
  gadgets::Lemma1Gadget gr =
      explicit_base ? gadgets::lemma1_from_base(a.base_r) : gadgets::lemma1_build(*a.r, a.k);

  Json j;
  j["gadget"] = "lemma1";
  j["r"] = gr.r ? rat(*gr.r) : Json(nullptr);
  j["k"] = explicit_base ? Json(nullptr) : Json(a.k);
  j["u"] = u64_list(gr.u);
  j["U"] = gr.U.key();
  j["x(r)"] = gr.x.key();
  j["z(r)"] = gr.z.key();
  Link p1 = gadgets::lemma1_verify_P1Ea(gr, cfg.horizon);
  j["improvement"] = link_json(p1);
  bool failed = p1.status == axioms::Status::Fails;
  std::vector<axioms::Status> statuses = {p1.status};

  std::vector<std::pair<std::string, Stream>> cols = {{"x(r)", gr.x}, {"z(r)", gr.z}};
  if (a.s || !a.base_s.empty()) {
    gadgets::Lemma1Comparison c =
        !a.base_s.empty() ? gadgets::lemma1_case_compare(gr, gadgets::lemma1_from_base(a.base_s), cfg.horizon)
        : explicit_base   ? throw Error(ErrorCode::ParseError, "--base-r needs --base-s")
                          : gadgets::lemma1_case_compare(*a.r, *a.s, cfg.horizon, a.k);
    Json cj;
    cj["s"] = a.s && a.base_s.empty() ? rat(*a.s) : Json(nullptr);
    cj["u_s"] = u64_list(c.s.u);
    cj["case"] = std::string(1, c.which);
    cj["p0"] = num(c.p0);
    cj["u1"] = num(c.u1);
    cj["u2"] = num(c.u2);
    cj["permutation"] = c.permutation ? permutation_json(*c.permutation) : Json(nullptr);
    cj["links"] = links_json(c.links);
    cj["status"] = status_str(c.status);
    j["comparison"] = cj;
    failed = failed || any_failure(c.links);
    statuses.push_back(c.status);
    cols.push_back({"x(s)", c.s.x});
    if (c.z_pi) cols.push_back({"z_pi", *c.z_pi});
  }
  axioms::Status overall = axioms::Status::Holds;
  for (auto s : statuses) {
    if (s == axioms::Status::Fails) overall = s;
    if (s == axioms::Status::Undecided && overall == axioms::Status::Holds) overall = s;
  }
  j["status"] = status_str(overall);
  if (dump && csv) *csv = dump_csv(cols, dump);
  return {j, !failed};
}

std::pair<Json, bool> run_gadget_lemma2(const Lemma2Args& a, const RunConfig& cfg, std::uint64_t dump,
                                        std::string* csv) {
  gadgets::Lemma2Gadget g = gadgets::lemma2_build(a.t, a.which, a.m);
  std::vector<Link> links = gadgets::lemma2_verify_case(g, cfg.horizon);
  Json j;
  j["gadget"] = "lemma2";
  j["case"] = std::string(1, g.which);
  j["m"] = g.m;
  j["T"] = u64_list(g.T);
  j["S"] = u64_list(g.S);
  j["U(T)"] = g.UT.key();
  j["U(S)"] = g.US.key();
  j["links"] = links_json(links);
  j["status"] = status_str(gadgets::combine(links));
  if (dump && csv) *csv = dump_csv({{"x(T)", g.xT}, {"y(T)", g.yT}, {"x(S)", g.xS}, {"y(S)", g.yS}}, dump);
  return {j, !any_failure(links)};
}

}  // namespace densitylab::cli
