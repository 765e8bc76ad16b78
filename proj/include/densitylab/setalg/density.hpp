#pragma once

#include <optional>
#include <string>
#include <vector>

#include "densitylab/setalg/index_set.hpp"

namespace densitylab::setalg {

struct Checkpoint {
  Natural n;
  Natural count;
  Rational ratio;
};

struct DensityResult {
  /// Exact limits; otherwise lower/upper are min/max of the tail checkpoints.
  bool exact = false;
  Rational lower, upper;
  std::string method;
  std::vector<Checkpoint> evidence;

  bool has_density() const { return exact && lower == upper; }
};

DensityResult density(const IndexSet& s);

/// count(S, n) / n = a + b * count(F, n) / n + o(1), with F a block family
/// (absent when b = 0).
struct LinearForm {
  Rational a, b;
  std::optional<IndexSet> family;
};

std::optional<LinearForm> linear_form(const IndexSet& s);

/// Checkpoints n = k! for k = 3..10 and n = 2^j up to 10!, increasing.
const std::vector<Natural>& checkpoint_schedule();

/// Ratios count(S, n) / n at the standard checkpoints.
std::vector<Checkpoint> checkpoints(const IndexSet& s);

}  // namespace densitylab::setalg
