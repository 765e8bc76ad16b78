#include "serialize.hpp"

namespace densitylab::cli {

Json rat(const Rational& q) { return to_string(q); }
Json num(const Integer& z) { return to_string(z); }

Json density_json(const setalg::DensityResult& d) {
  Json j;
  j["exact"] = d.exact;
  j["lower"] = rat(d.lower);
  j["upper"] = rat(d.upper);
  j["method"] = d.method;
  Json ev = Json::array();
  for (const auto& c : d.evidence) ev.push_back({{"n", num(c.n)}, {"count", num(c.count)}, {"ratio", rat(c.ratio)}});
  j["evidence"] = ev;
  return j;
}

Json permutation_json(const streams::FinitePermutation& p) {
  Json moved = Json::array();
  for (std::uint64_t t = 1; t <= p.bound(); ++t) {
    if (p(t) != t) moved.push_back({t, p(t)});
  }
  return {{"bound", p.bound()}, {"moved", moved}};
}

Json verdict_json(const axioms::Verdict& v) {
  Json j;
  j["status"] = std::string(axioms::status_name(v.status));
  j["strict"] = v.strict ? Json(v.strict->key()) : Json(nullptr);
  j["density"] = v.density ? density_json(*v.density) : Json(nullptr);
  j["witness"] = v.witness ? num(*v.witness) : Json(nullptr);
  j["horizon"] = v.horizon;
  j["permutation"] = v.permutation ? permutation_json(*v.permutation) : Json(nullptr);
  j["gap"] = v.gap ? rat(*v.gap) : Json(nullptr);
  j["reason"] = v.reason;
  return j;
}

Json link_json(const gadgets::Link& l) {
  Json j;
  j["relation"] = l.relation;
  j["kind"] = std::string(gadgets::link_kind_name(l.kind));
  j["status"] = std::string(axioms::status_name(l.status));
  j["method"] = l.method;
  j["claimed"] = l.claimed ? Json(l.claimed->key()) : Json(nullptr);
  j["density"] = l.density ? density_json(*l.density) : Json(nullptr);
  j["witness"] = l.witness ? num(*l.witness) : Json(nullptr);
  j["horizon"] = l.horizon;
  j["permutation"] = l.permutation ? permutation_json(*l.permutation) : Json(nullptr);
  j["notes"] = l.notes;
  j["reason"] = l.reason;
  return j;
}

Json swf_json(const swf::SwfValue& v) {
  Json j;
  j["kind"] = std::string(swf::kind_name(v.kind));
  if (v.kind == swf::SwfValue::Kind::Finite) j["value"] = rat(v.value);
  if (v.kind == swf::SwfValue::Kind::IntervalEstimate) {
    j["lo"] = rat(v.lo);
    j["hi"] = rat(v.hi);
  }
  j["method"] = v.method;
  Json ev = Json::array();
  for (const auto& c : v.evidence) ev.push_back({{"n", num(c.n)}, {"value", rat(c.value)}});
  j["evidence"] = ev;
  return j;
}

namespace {

void flatten_into(const Json& j, const std::string& path, char sep, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten_into(it.value(), path.empty() ? it.key() : path + "." + it.key(), sep, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten_into(j[i], path + "[" + std::to_string(i) + "]", sep, out);
  } else {
    out += path;
    out += sep;
    out += j.is_string() ? j.get<std::string>() : j.dump();
    out += '\n';
  }
}

}  // namespace

std::string flatten(const Json& j, char sep) {
  std::string out;
  flatten_into(j, "", sep, out);
  return out;
}

}  // namespace densitylab::cli
