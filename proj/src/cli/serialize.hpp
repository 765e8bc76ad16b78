#pragma once

#include "densitylab/axioms/axioms.hpp"
#include "densitylab/cli/cli.hpp"
#include "densitylab/gadgets/gadgets.hpp"
#include "densitylab/setalg/density.hpp"
#include "densitylab/swf/swf.hpp"

namespace densitylab::cli {

Json rat(const Rational& q);
Json num(const Integer& z);
Json density_json(const setalg::DensityResult& d);
/// Moved points only: [[t, pi(t)], ...].
Json permutation_json(const streams::FinitePermutation& p);
Json verdict_json(const axioms::Verdict& v);
Json link_json(const gadgets::Link& l);
Json swf_json(const swf::SwfValue& v);

/// "path,value" lines of every scalar leaf.
std::string flatten(const Json& j, char sep);

}  // namespace densitylab::cli
