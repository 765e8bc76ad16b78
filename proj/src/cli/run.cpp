#include <chrono>
#include <ostream>

#include "CLI11.hpp"

#include "densitylab/error.hpp"
#include "serialize.hpp"

namespace densitylab::cli {

namespace {

Output parse_output(const std::string& s) {
  if (s == "json") return Output::Json;
  if (s == "csv") return Output::Csv;
  if (s == "text") return Output::Text;
  throw Error(ErrorCode::ParseError, "unknown output format '" + s + "'");
}

Rational rational_arg(const std::string& name, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, "--" + name + ": " + e.what());
  }
}

void emit(std::ostream& out, const Json& report, const RunConfig& cfg, const std::string& csv) {
  if (cfg.output == Output::Json) {
    out << report.dump(2) << "\n";
  } else if (cfg.output == Output::Csv) {
    out << (csv.empty() ? flatten(report, ',') : csv);
  } else {
    out << flatten(report, '\t');
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact asymptotic density and dominance toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::optional<std::uint64_t> horizon;
  std::string output = "json";
  app.add_option("--horizon", horizon, "Pointwise verification horizon");
  app.add_option("--checkpoint-max", cfg.checkpoint_max, "Largest checkpoint")->capture_default_str();
  app.add_option("--output", output, "json, csv or text")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Corpus seed")->capture_default_str();
  app.add_option("--parallelism", cfg.parallelism, "Worker threads")->capture_default_str();
  app.add_flag("--timing", cfg.timing, "Include wall-clock timing in the report");
  app.add_option("--inject-fault", cfg.inject_fault, "Corpus fault fixture: density or chain");

  std::string set;
  auto* density = app.add_subcommand("density", "Lower and upper density of a set");
  density->add_option("set", set, "Set formula")->required();

  std::string axiom, xs, ys;
  auto* compare = app.add_subcommand("compare", "Dominance relation between two streams");
  compare->add_option("--axiom", axiom, "Axiom name, all, suppes_sen, lex or anonymity")->required();
  compare->add_option("--x", xs, "Stream x")->required();
  compare->add_option("--y", ys, "Stream y")->required();

  std::string which, delta = "1/2", tol = "1/1000000";
  std::optional<std::uint64_t> n_terms;
  auto* swfc = app.add_subcommand("swf", "Social welfare function value");
  swfc->add_option("--which", which, "cesaro, discounted, min, liminf or partial")->required();
  swfc->add_option("--x", xs, "Stream")->required();
  swfc->add_option("--delta", delta, "Discount factor")->capture_default_str();
  swfc->add_option("--tol", tol, "Estimate tolerance")->capture_default_str();
  swfc->add_option("--n", n_terms, "Number of terms for partial");

  std::uint64_t plen = 10;
  auto* prefix = app.add_subcommand("prefix", "First coordinates of a stream");
  prefix->add_option("--x", xs, "Stream")->required();
  prefix->add_option("--n", plen, "Length")->capture_default_str();

  std::string r, s, which_case = "a";
  Lemma1Args l1;
  Lemma2Args l2;
  std::uint64_t dump = 0;
  auto* gadget = app.add_subcommand("gadget", "Proof construction verification");
  gadget->require_subcommand(1);
  auto* lemma1 = gadget->add_subcommand("lemma1", "Rank-fill pair construction");
  lemma1->add_option("--r", r, "Rational r in (0,1)");
  lemma1->add_option("--s", s, "Rational s with r < s < 1");
  lemma1->add_option("--k", l1.k, "Number of u-indices")->capture_default_str();
  lemma1->add_option("--base-r", l1.base_r, "Explicit index base for U(r)")->delimiter(',');
  lemma1->add_option("--base-s", l1.base_s, "Explicit index base for U(s)")->delimiter(',');
  lemma1->add_option("--dump", dump, "CSV prefix dump length (with --output csv)");
  auto* lemma2 = gadget->add_subcommand("lemma2", "Factorial-block construction");
  lemma2->add_option("--t", l2.t, "Increasing sequence prefix")->delimiter(',')->required();
  lemma2->add_option("--case", which_case, "a, b or c")->capture_default_str();
  lemma2->add_option("--m", l2.m, "Number of dropped pairs (0 = search)");
  lemma2->add_option("--dump", dump, "CSV prefix dump length (with --output csv)");

  auto* verify = app.add_subcommand("verify", "Run the invariant corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  Json report;
  report["schema"] = kSchema;
  report["version"] = kVersion;
  std::vector<std::string> args(argv + 1, argv + argc);
  report["command"] = args;
  std::string csv;
  int code = 0;
  auto start = std::chrono::steady_clock::now();
  try {
    cfg.output = parse_output(output);
    cfg.horizon = horizon ? *horizon : default_horizon();
    if (cfg.horizon > cfg.checkpoint_max || cfg.horizon > axioms::kMaxHorizon) {
      throw Error(ErrorCode::HorizonExceeded, "horizon " + std::to_string(cfg.horizon) + " exceeds the maximum");
    }
    if (cfg.parallelism == 0) throw Error(ErrorCode::ParseError, "--parallelism must be >= 1");
    report["config"] = config_json(cfg);
    Json result;
    if (*density) {
      result = run_density(set, cfg);
    } else if (*compare) {
      result = run_compare(axiom, xs, ys, cfg);
    } else if (*swfc) {
      result = run_swf(which, xs, rational_arg("delta", delta), rational_arg("tol", tol), n_terms, cfg);
    } else if (*prefix) {
      result = run_prefix(xs, plen);
      csv = "t,x\n";
      for (std::size_t t = 0; t < result["values"].size(); ++t) {
        csv += std::to_string(t + 1) + "," + result["values"][t].get<std::string>() + "\n";
      }
    } else if (*lemma1) {
      if (!r.empty()) l1.r = rational_arg("r", r);
      if (!s.empty()) l1.s = rational_arg("s", s);
      auto [j, ok] = run_gadget_lemma1(l1, cfg, dump, &csv);
      result = j;
      code = ok ? 0 : 1;
    } else if (*lemma2) {
      if (which_case.size() != 1) throw Error(ErrorCode::ParseError, "--case must be a, b or c");
      l2.which = which_case[0];
      auto [j, ok] = run_gadget_lemma2(l2, cfg, dump, &csv);
      result = j;
      code = ok ? 0 : 1;
    } else if (*verify) {
      auto [j, ok] = run_verify(cfg);
      result = j;
      code = ok ? 0 : 1;
    }
    report["result"] = result;
  } catch (const Error& e) {
    Json ej;
    ej["code"] = std::string(error_code_name(e.code()));
    ej["message"] = e.what();
    ej["position"] = e.position() ? Json(*e.position()) : Json(nullptr);
    if (!report.contains("config")) report["config"] = nullptr;
    report["error"] = ej;
    csv.clear();
    code = 2;
  }
  if (cfg.timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    report["timing"] = {{"elapsed_ms", ms.count()}};
  }
  emit(out, report, cfg, csv);
  return code;
}

}  // namespace densitylab::cli
