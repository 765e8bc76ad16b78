#include "densitylab/setalg/density.hpp"

#include <algorithm>

#include "densitylab/error.hpp"
#include "densitylab/setalg/analysis.hpp"
#include "densitylab/setalg/counting.hpp"
#include "tail_model.hpp"

namespace densitylab::setalg {

namespace {

// Atoms of density zero removed; the result differs from s on a null set.
IndexSet drop_null_atoms(const IndexSet& s) {
  detail::Circuit c = detail::compile(s);
  std::vector<IndexSet> subst;
  for (const IndexSet& a : c.atoms) {
    bool null_atom = false;
    switch (a.kind()) {
      case Kind::Finite:
      case Kind::Interval:
      case Kind::FactorialPoints: null_atom = true; break;
      case Kind::FactorialIntervals: null_atom = !a.fi().has_family(); break;
      default: break;
    }
    subst.push_back(null_atom ? IndexSet::empty() : a);
  }
  return c.rebuild(subst);
}

struct Reduced {
  detail::TailModel model;
  std::vector<Rational> rho;  // per family assignment
};

Reduced reduce(const IndexSet& s) {
  Reduced r{detail::build_tail_model(drop_null_atoms(s)), {}};
  if (r.model.families.size() > detail::kMaxTailFamilies) {
    throw Error(ErrorCode::Unsupported, "too many independent block families");
  }
  for (unsigned combo = 0; combo < (1u << r.model.families.size()); ++combo) {
    r.rho.push_back(r.model.periodic_density(combo));
  }
  return r;
}

bool all_equal(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [&](const Rational& x) { return x == v.front(); });
}

}  // namespace

const std::vector<Natural>& checkpoint_schedule() {
  static const std::vector<Natural> ns = [] {
    std::vector<Natural> v;
    Natural f = 2;
    for (unsigned long k = 3; k <= 10; ++k) {
      f *= k;
      v.push_back(f);
    }
    for (Natural p = 8; p <= f; p *= 2) v.push_back(p);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }();
  return ns;
}

std::vector<Checkpoint> checkpoints(const IndexSet& s) {
  const std::vector<Natural>& ns = checkpoint_schedule();
  std::vector<Checkpoint> out;
  for (const Natural& n : ns) {
    Natural c = count(s, n);
    out.push_back({n, c, ratio(c, n)});
  }
  return out;
}

std::optional<LinearForm> linear_form(const IndexSet& s) {
  Reduced r = reduce(s);
  if (r.model.families.empty()) return LinearForm{r.rho[0], 0, std::nullopt};
  if (all_equal(r.rho)) return LinearForm{r.rho[0], 0, std::nullopt};
  if (r.model.families.size() > 1) return std::nullopt;
  const IndexSet& fam = r.model.c.atoms[r.model.families[0]];
  const FamilyAsymptotics& fa = family_asymptotics(fam.fi());
  if (!fa.superexponential) return std::nullopt;
  return LinearForm{r.rho[0], r.rho[1] - r.rho[0], fam};
}

DensityResult density(const IndexSet& s) {
  DensityResult out;
  out.evidence = checkpoints(s);
  std::optional<Reduced> r;
  try {
    r = reduce(s);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unsupported) throw;
  }
  if (r) {
    if (all_equal(r->rho)) {
      out.exact = true;
      out.lower = out.upper = r->rho[0];
      out.method = r->model.families.empty() ? "periodic" : "periodic, families irrelevant";
      return out;
    }
    if (r->model.families.size() == 1) {
      const FamilyAsymptotics& fa = family_asymptotics(r->model.c.atoms[r->model.families[0]].fi());
      if (fa.superexponential && fa.lower && fa.upper) {
        Rational a = r->rho[0], b = r->rho[1] - r->rho[0];
        Rational x = b * *fa.lower, y = b * *fa.upper;
        out.exact = true;
        out.lower = a + std::min(x, y);
        out.upper = a + std::max(x, y);
        out.method = "block family";
        return out;
      }
    }
  }
  std::size_t half = out.evidence.size() / 2;
  out.lower = out.upper = out.evidence[half].ratio;
  for (std::size_t i = half; i < out.evidence.size(); ++i) {
    out.lower = std::min(out.lower, out.evidence[i].ratio);
    out.upper = std::max(out.upper, out.evidence[i].ratio);
  }
  out.method = "checkpoint estimate";
  return out;
}

}  // namespace densitylab::setalg
