#include <bit>

#include "densitylab/error.hpp"
#include "densitylab/gadgets/gadgets.hpp"

namespace densitylab::gadgets {

// Breadth-first order of a complete binary tree is heap order, so the bits of
// k below its leading one spell the left/right path from the root 1/2.
Rational rational_enum(std::uint64_t k) {
  if (k == 0) throw Error(ErrorCode::Precondition, "rational_enum: k must be >= 1");
  Integer a = 0, b = 1, c = 1, d = 1;
  int depth = std::bit_width(k) - 1;
  for (int i = depth - 1; i >= 0; --i) {
    Integer p = a + c, q = b + d;
    if ((k >> i) & 1) {
      a = p;
      b = q;
    } else {
      c = p;
      d = q;
    }
  }
  return ratio(a + c, b + d);
}

std::vector<Rational> rational_prefix(std::uint64_t n) {
  std::vector<Rational> out;
  out.reserve(n);
  for (std::uint64_t k = 1; k <= n; ++k) out.push_back(rational_enum(k));
  return out;
}

}  // namespace densitylab::gadgets
