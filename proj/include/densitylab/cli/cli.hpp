#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "densitylab/numeric.hpp"

namespace densitylab::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "densitylab.report/1";
inline constexpr const char* kVersion = "0.1.0";

enum class Output { Json, Csv, Text };

struct RunConfig {
  std::uint64_t horizon = 5040;
  std::uint64_t checkpoint_max = 3628800;
  Output output = Output::Json;
  std::uint64_t seed = 1;
  unsigned parallelism = 1;
  bool timing = false;
  std::string inject_fault;  // empty, "chain" or "density"
};

/// Horizon default, overridden by DENSITYLAB_HORIZON when set.
std::uint64_t default_horizon();

struct Outcome {
  Json report;
  int exit_code = 0;
  std::string csv;  // prefix dump, when the command produces one
};

Json config_json(const RunConfig& cfg);

Json run_density(const std::string& set, const RunConfig& cfg);
Json run_compare(const std::string& axiom, const std::string& x, const std::string& y, const RunConfig& cfg);
Json run_swf(const std::string& which, const std::string& x, const Rational& delta, const Rational& tol,
             std::optional<std::uint64_t> n, const RunConfig& cfg);
Json run_prefix(const std::string& x, std::uint64_t n);

struct Lemma1Args {
  std::optional<Rational> r, s;
  std::vector<std::uint64_t> base_r, base_s;  // explicit bases replace r and s
  std::size_t k = 20;
};
/// Verification result; `passed` is false when a verified link fails.
std::pair<Json, bool> run_gadget_lemma1(const Lemma1Args& a, const RunConfig& cfg, std::uint64_t dump = 0,
                                        std::string* csv = nullptr);

struct Lemma2Args {
  std::vector<std::uint64_t> t;
  char which = 'a';
  std::size_t m = 0;
};
std::pair<Json, bool> run_gadget_lemma2(const Lemma2Args& a, const RunConfig& cfg, std::uint64_t dump = 0,
                                        std::string* csv = nullptr);

/// Invariant corpus; passed iff every item passes.
std::pair<Json, bool> run_verify(const RunConfig& cfg);

/// Full command line, as the executable sees it. Writes the report to out.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// ---- corpus generators ----

/// Random set formula in the decidable fragment.
std::string random_set_dsl(std::mt19937_64& rng, int depth);
/// Random stream pair whose strict sets are structurally decidable.
std::pair<std::string, std::string> random_pair_dsl(std::mt19937_64& rng);
/// True when some permutation p of [1,n] has x(p(t)) >= y(t) for every t.
bool brute_force_permutation_dominates(std::vector<Rational> x, const std::vector<Rational>& y);

}  // namespace densitylab::cli
