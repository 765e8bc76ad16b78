#include "densitylab/numeric.hpp"

#include "densitylab/error.hpp"

namespace densitylab {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "parse_error";
    case ErrorCode::InvalidStructure: return "invalid_structure";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::NotEnoughElements: return "not_enough_elements";
    case ErrorCode::Unbounded: return "unbounded_stream";
    case ErrorCode::HorizonExceeded: return "horizon_exceeded";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::ConditionUnsatisfiable: return "condition_unsatisfiable";
  }
  return "unknown";
}

Natural factorial(unsigned long n) {
  Natural out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
  Rational out;
  if (text.empty() || out.set_str(std::string(text), 10) != 0 || out.get_den() == 0) {
    throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
  }
  out.canonicalize();
  return out;
}

Natural parse_natural(std::string_view text) {
  Natural out;
  if (text.empty() || text.front() == '-' || out.set_str(std::string(text), 10) != 0) {
    throw Error(ErrorCode::ParseError, "not a natural number: '" + std::string(text) + "'");
  }
  return out;
}

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer floor_of(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

bool fits_u64(const Natural& n) {
  return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const Natural& n) {
  if (!fits_u64(n)) {
    throw Error(ErrorCode::HorizonExceeded, "value " + n.get_str() + " exceeds 64-bit range");
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

Integer lcm_of(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

}  // namespace densitylab

namespace densitylab {

Rational ratio(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace densitylab
