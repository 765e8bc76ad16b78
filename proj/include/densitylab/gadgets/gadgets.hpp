#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "densitylab/axioms/axioms.hpp"
#include "densitylab/setalg/density.hpp"
#include "densitylab/setalg/index_set.hpp"
#include "densitylab/streams/stream.hpp"

namespace densitylab::gadgets {

using axioms::Status;
using setalg::IndexSet;
using streams::FinitePermutation;
using streams::Stream;

// ---- rational enumeration ----

/// k-th rational of the breadth-first Stern-Brocot traversal of (0,1), k >= 1.
Rational rational_enum(std::uint64_t k);
/// The first n terms.
std::vector<Rational> rational_prefix(std::uint64_t n);
/// Largest enumeration prefix searched by the gadgets.
inline constexpr std::uint64_t kMaxEnumIndex = std::uint64_t{1} << 20;

// ---- verification links ----

/// One claim of a proof construction.
struct Link {
  enum class Kind { Verified, Assumed, Derived };
  std::string relation;  // e.g. "z(r) > x(r)"
  Kind kind = Kind::Verified;
  Status status = Status::Undecided;
  std::string method;  // "structural", "scan", "equality", "anonymity", ...
  std::optional<IndexSet> claimed;
  std::optional<setalg::DensityResult> density;
  std::optional<Natural> witness;
  std::uint64_t horizon = 0;
  std::optional<FinitePermutation> permutation;
  std::vector<std::string> notes;
  std::string reason;
};

std::string_view link_kind_name(Link::Kind k);

/// hi >= lo pointwise, hi > lo on every element of `claimed`, d(claimed) = 1.
Link check_dominance(const std::string& relation, const Stream& hi, const Stream& lo, const IndexSet& claimed,
                     std::uint64_t horizon);

/// Overall status of a link list: Fails if any verified link fails, Undecided
/// if any is undecided, Holds otherwise.
Status combine(const std::vector<Link>& links);

// ---- first construction ----

struct Lemma1Gadget {
  std::optional<Rational> r;           // absent for an explicit base
  std::vector<std::uint64_t> u;        // u_1 < u_2 < ... (indices, before factorial)
  IndexSet U, L;                       // {u_k!} and its complement
  Stream x, z;
};

inline constexpr std::size_t kDefaultK = 20;

/// u_1(r) < ... < u_K(r): the indices n with q_n >= r, in order.
std::vector<std::uint64_t> u_sequence(const Rational& r, std::size_t K = kDefaultK);
Lemma1Gadget lemma1_build(const Rational& r, std::size_t K = kDefaultK);
/// Gadget over an explicit index base {u_k}.
Lemma1Gadget lemma1_from_base(std::vector<std::uint64_t> base);

/// z(r) > x(r) on S = (u_1!, inf) \ U(r) with d(S) = 1.
Link lemma1_verify_P1Ea(const Lemma1Gadget& g, std::uint64_t horizon = axioms::kDefaultHorizon);

struct Lemma1Comparison {
  char which = 'a';  // case a or b
  Natural p0;        // (u_1(r))!
  Natural u1, u2;    // two smallest elements of U(r) \ U(s)
  Lemma1Gadget r, s;
  std::optional<FinitePermutation> permutation;
  std::optional<Stream> z_pi;
  std::vector<Link> links;
  Status status = Status::Undecided;
};

/// Case analysis for r < s; U(s) is cut at the same index bound as U(r).
Lemma1Comparison lemma1_case_compare(const Rational& r, const Rational& s,
                                     std::uint64_t horizon = axioms::kDefaultHorizon, std::size_t K = kDefaultK);
/// Same analysis for explicit bases with base_s a subset of base_r.
Lemma1Comparison lemma1_case_compare(const Lemma1Gadget& gr, const Lemma1Gadget& gs,
                                     std::uint64_t horizon = axioms::kDefaultHorizon);

// ---- second construction ----

/// t_j for j >= 1; past the prefix the sequence continues with step 1.
std::uint64_t seq_at(const std::vector<std::uint64_t>& t, std::size_t j);
void check_increasing(const std::vector<std::uint64_t>& t);

struct L2E1Check {
  Integer lhs;                       // t_{2m+2}!/t_3!
  Integer rhs;                       // sum of t_{2j+2}!/t_{2j+1}!, j = 1..m
  std::vector<Integer> parentheses;  // lhs - m * t_{2j+2}!/t_{2j+1}!, j = m..1
  bool holds = false;
  bool parentheses_positive = false;
};

L2E1Check check_L2E1(const std::vector<std::uint64_t>& t, std::size_t m);

/// U(N) as a symbolic factorial-interval set.
IndexSet block_set(const std::vector<std::uint64_t>& n);
/// |U_k(N)| from the closed form.
Integer block_size(const std::vector<std::uint64_t>& n, std::size_t k);

struct BlockCertificate {
  std::size_t m = 0;
  Natural checkpoint;           // (n_{2m+1})!
  Natural closed_form;          // sum of |U_k(N)|, k <= m
  Natural structural;           // count(U(N), checkpoint)
  Rational lower_bound;         // 1 - 1/(n_{2m})! - (n_{2m-1})!/(n_{2m+1})!
  Rational ratio;               // closed_form / checkpoint
};

BlockCertificate block_certificate(const std::vector<std::uint64_t>& n, std::size_t m);

/// x(N): 1 off U(N), k+1 at the k-th element of U(N).
Stream lemma2_stream(const std::vector<std::uint64_t>& n);

struct Lemma2Gadget {
  std::vector<std::uint64_t> T, S;
  char which = 'a';
  std::size_t m = 0;
  IndexSet UT, US;
  Stream xT, yT, xS, yS;
};

/// Cardinality condition of cases b and c for the given m.
bool lemma2_condition(const std::vector<std::uint64_t>& T, char which, std::size_t m);
/// m = 0 selects the smallest admissible m within the explicit prefix.
Lemma2Gadget lemma2_build(const std::vector<std::uint64_t>& T, char which, std::size_t m = 0);
std::vector<Link> lemma2_verify_case(const Lemma2Gadget& g, std::uint64_t horizon = axioms::kDefaultHorizon);

}  // namespace densitylab::gadgets
