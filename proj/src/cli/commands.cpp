#include <cstdlib>

#include "densitylab/error.hpp"
#include "densitylab/setalg/parse.hpp"
#include "densitylab/streams/parse.hpp"
#include "serialize.hpp"

namespace densitylab::cli {

using streams::Stream;

std::uint64_t default_horizon() {
  if (const char* env = std::getenv("DENSITYLAB_HORIZON"); env && *env) {
    try {
      return to_u64(parse_natural(env));
    } catch (const Error&) {
      throw Error(ErrorCode::ParseError, std::string("DENSITYLAB_HORIZON is not a natural number: ") + env);
    }
  }
  return axioms::kDefaultHorizon;
}

Json config_json(const RunConfig& cfg) {
  Json j;
  j["horizon"] = cfg.horizon;
  j["checkpoint_max"] = cfg.checkpoint_max;
  j["output"] = cfg.output == Output::Json ? "json" : cfg.output == Output::Csv ? "csv" : "text";
  j["seed"] = cfg.seed;
  j["parallelism"] = cfg.parallelism;
  return j;
}

Json run_density(const std::string& set, const RunConfig&) {
  setalg::IndexSet s = setalg::parse_index_set(set);
  Json j;
  j["set"] = s.key();
  Json d = density_json(setalg::density(s));
  for (auto it = d.begin(); it != d.end(); ++it) j[it.key()] = it.value();
  return j;
}

Json run_compare(const std::string& axiom, const std::string& xs, const std::string& ys, const RunConfig& cfg) {
  Stream x = streams::parse_stream(xs), y = streams::parse_stream(ys);
  Json j;
  j["axiom"] = axiom;
  j["x"] = x.key();
  j["y"] = y.key();
  if (axiom == "all") {
    auto report = axioms::implication_chain_report(x, y, cfg.horizon);
    Json chain = Json::array();
    for (const auto& [a, v] : report) chain.push_back({{"axiom", std::string(axioms::axiom_name(a))}, {"verdict", verdict_json(v)}});
    j["chain"] = chain;
    j["consistent"] = axioms::chain_consistent(report);
    return j;
  }
  axioms::Verdict v;
  if (axiom == "suppes_sen") {
    v = axioms::suppes_sen_compare(x, y, cfg.horizon);
  } else if (axiom == "lex") {
    v = axioms::lex_compare(x, y, cfg.horizon);
  } else if (axiom == "anonymity") {
    v = axioms::anonymity_equivalent(x, y, cfg.horizon);
  } else if (auto a = axioms::parse_axiom(axiom)) {
    v = axioms::dominates(*a, x, y, cfg.horizon);
  } else {
    throw Error(ErrorCode::ParseError, "unknown axiom '" + axiom + "'");
  }
  j["verdict"] = verdict_json(v);
  return j;
}

Json run_swf(const std::string& which, const std::string& xs, const Rational& delta, const Rational& tol,
             std::optional<std::uint64_t> n, const RunConfig&) {
  Stream x = streams::parse_stream(xs);
  Json j;
  j["which"] = which;
  j["x"] = x.key();
  if (which == "partial") {
    if (!n) throw Error(ErrorCode::ParseError, "swf partial requires --n");
    j["n"] = *n;
    j["value"] = {{"kind", "finite"}, {"value", rat(swf::partial_sum(x, Natural(static_cast<unsigned long>(*n))))}};
    return j;
  }
  auto w = swf::parse_which(which);
  if (!w) throw Error(ErrorCode::ParseError, "unknown swf '" + which + "'");
  if (*w == swf::Which::Discounted) {
    j["delta"] = rat(delta);
    j["tol"] = rat(tol);
  }
  j["value"] = swf_json(swf::evaluate(*w, x, {delta, tol}));
  return j;
}

Json run_prefix(const std::string& xs, std::uint64_t n) {
  Stream x = streams::parse_stream(xs);
  Json vals = Json::array();
  for (const Rational& v : x.prefix(n)) vals.push_back(rat(v));
  return {{"x", x.key()}, {"n", n}, {"values", vals}};
}

}  // namespace densitylab::cli
