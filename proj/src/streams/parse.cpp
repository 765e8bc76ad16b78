#include "densitylab/streams/parse.hpp"

#include "densitylab/error.hpp"

namespace densitylab::streams {

using setalg::Cursor;

namespace {

std::uint64_t small(Cursor& cur) {
  std::size_t at = cur.position();
  Natural v = cur.natural();
  if (!fits_u64(v)) throw Error(ErrorCode::ParseError, "number too large at position " + std::to_string(at), at);
  return to_u64(v);
}

}  // namespace

FinitePermutation parse_permutation(Cursor& cur) {
  cur.skip_ws();
  std::size_t at = cur.position();
  if (cur.word() != "perm") cur.fail("expected 'perm'");
  cur.expect('[');
  std::uint64_t n = small(cur);
  cur.expect(']');
  cur.expect('(');
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  if (!cur.accept(')')) {
    do {
      std::uint64_t a = small(cur);
      if (!cur.accept("->")) cur.fail("expected '->'");
      pairs.emplace_back(a, small(cur));
    } while (cur.accept(','));
    cur.expect(')');
  }
  try {
    return FinitePermutation::from_pairs(n, pairs);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(e.what()) + " at position " + std::to_string(at), at);
  }
}

Stream parse_stream(Cursor& cur) {
  cur.skip_ws();
  std::size_t at = cur.position();
  std::string w = cur.word();
  auto located = [&](const Error& e) {
    if (e.position()) return e;
    return Error(e.code(), std::string(e.what()) + " at position " + std::to_string(at), at);
  };
  try {
    if (w == "const") {
      cur.expect('(');
      Rational v = cur.rational();
      cur.expect(')');
      return Stream::constant(v);
    }
    if (w == "piecewise") {
      cur.expect('(');
      if (!cur.accept("default")) cur.fail("expected 'default='");
      cur.expect('=');
      Rational d = cur.rational();
      std::vector<Stream::Clause> clauses;
      while (cur.accept(';')) {
        IndexSet s = setalg::parse_index_set(cur);
        cur.expect(':');
        clauses.push_back({s, cur.rational()});
      }
      cur.expect(')');
      return Stream::piecewise(d, std::move(clauses));
    }
    if (w == "rankfill") {
      cur.expect('(');
      IndexSet u = setalg::parse_index_set(cur);
      Rational fill = 1;
      if (cur.accept(',')) fill = cur.rational();
      cur.expect(')');
      return Stream::rank_fill(u, fill);
    }
    if (w == "permute") {
      cur.expect('(');
      Stream x = parse_stream(cur);
      cur.expect(',');
      FinitePermutation p = parse_permutation(cur);
      cur.expect(')');
      return Stream::permuted(x, p);
    }
  } catch (const Error& e) {
    throw located(e);
  }
  throw Error(ErrorCode::ParseError, "unknown stream constructor '" + w + "' at position " + std::to_string(at), at);
}

Stream parse_stream(std::string_view text) {
  Cursor cur(text);
  Stream s = parse_stream(cur);
  cur.expect_end();
  return s;
}

FinitePermutation parse_permutation(std::string_view text) {
  Cursor cur(text);
  FinitePermutation p = parse_permutation(cur);
  cur.expect_end();
  return p;
}

}  // namespace densitylab::streams
