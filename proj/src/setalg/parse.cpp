#include "densitylab/setalg/parse.hpp"

#include <cctype>

#include "densitylab/error.hpp"

namespace densitylab::setalg {

void Cursor::skip_ws() {
  while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

bool Cursor::at_end() {
  skip_ws();
  return pos_ >= text_.size();
}

char Cursor::peek() {
  skip_ws();
  return pos_ < text_.size() ? text_[pos_] : '\0';
}

bool Cursor::accept(char c) {
  if (peek() != c) return false;
  ++pos_;
  return true;
}

bool Cursor::accept(std::string_view w) {
  skip_ws();
  if (text_.substr(pos_, w.size()) != w) return false;
  pos_ += w.size();
  return true;
}

void Cursor::expect(char c) {
  if (!accept(c)) fail(std::string("expected '") + c + "'");
}

void Cursor::expect_end() {
  if (!at_end()) fail("unexpected trailing input");
}

std::string Cursor::peek_word() {
  skip_ws();
  std::size_t e = pos_;
  while (e < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[e])) || text_[e] == '_')) ++e;
  return std::string(text_.substr(pos_, e - pos_));
}

std::string Cursor::word() {
  std::string w = peek_word();
  if (w.empty()) fail("expected a name");
  pos_ += w.size();
  return w;
}

Natural Cursor::natural() {
  skip_ws();
  std::size_t e = pos_;
  while (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) ++e;
  if (e == pos_) fail("expected a natural number");
  Natural v(std::string(text_.substr(pos_, e - pos_)));
  pos_ = e;
  return v;
}

Integer Cursor::integer() {
  bool neg = accept('-');
  Integer v = natural();
  return neg ? Integer(-v) : v;
}

Rational Cursor::rational() {
  Integer p = integer();
  Natural q = 1;
  if (accept('/')) {
    q = natural();
    if (q == 0) fail("zero denominator");
  }
  Rational r(p, q);
  r.canonicalize();
  return r;
}

void Cursor::fail(const std::string& what) const {
  throw Error(ErrorCode::ParseError, what + " at position " + std::to_string(pos_), pos_);
}

namespace {

using Op = BoundExpr::Op;

BoundExpr parse_sum(Cursor& cur);

BoundExpr parse_primary(Cursor& cur) {
  char c = cur.peek();
  if (std::isdigit(static_cast<unsigned char>(c))) {
    BoundExpr v = BoundExpr::constant(cur.natural());
    if (cur.peek_word() == "k") {
      cur.word();
      return BoundExpr::binary(Op::Mul, v, BoundExpr::k());
    }
    return v;
  }
  if (c == '(') {
    cur.expect('(');
    BoundExpr e = parse_sum(cur);
    cur.expect(')');
    return e;
  }
  std::string w = cur.peek_word();
  if (w == "k") {
    cur.word();
    return BoundExpr::k();
  }
  if (w == "n") {
    cur.word();
    cur.expect('(');
    BoundExpr e = parse_sum(cur);
    cur.expect(')');
    return BoundExpr::seq(e);
  }
  cur.fail("expected a bound expression");
}

BoundExpr parse_postfix(Cursor& cur) {
  BoundExpr e = parse_primary(cur);
  while (cur.accept('!')) e = BoundExpr::fact(e);
  return e;
}

BoundExpr parse_unary(Cursor& cur) {
  if (cur.accept('-')) return BoundExpr::binary(Op::Sub, BoundExpr::constant(0), parse_unary(cur));
  return parse_postfix(cur);
}

BoundExpr parse_product(Cursor& cur) {
  BoundExpr e = parse_unary(cur);
  for (;;) {
    if (cur.accept('*')) {
      e = BoundExpr::binary(Op::Mul, e, parse_unary(cur));
    } else if (cur.accept('/')) {
      e = BoundExpr::binary(Op::Div, e, parse_unary(cur));
    } else {
      return e;
    }
  }
}

BoundExpr parse_sum(Cursor& cur) {
  BoundExpr e = parse_product(cur);
  for (;;) {
    if (cur.accept('+')) {
      e = BoundExpr::binary(Op::Add, e, parse_product(cur));
    } else if (cur.accept('-')) {
      e = BoundExpr::binary(Op::Sub, e, parse_product(cur));
    } else {
      return e;
    }
  }
}

// [a,b] closed, (a,b] left-open, [a,b) right-open, (a,b) a closed pair.
BlockSpec parse_block(Cursor& cur) {
  BlockSpec b;
  bool paren = false;
  if (cur.accept('(')) {
    paren = true;
  } else {
    cur.expect('[');
  }
  b.lo = parse_sum(cur);
  cur.expect(',');
  b.hi = parse_sum(cur);
  if (cur.accept(')')) {
    b.hi_open = !paren;
  } else if (cur.accept(']')) {
    b.lo_open = paren;
  } else {
    cur.fail("expected ']' or ')'");
  }
  return b;
}

IndexSet parse_fintervals(Cursor& cur) {
  FactorialIntervalsSpec spec;
  cur.expect('[');
  if (cur.accept(']')) return IndexSet::factorial_intervals(std::move(spec));
  do {
    std::size_t at = cur.position();
    std::string w = cur.peek_word();
    if (w == "k") {
      cur.word();
      if (spec.family) cur.fail("only one block family is allowed");
      if (!cur.accept(">=")) cur.fail("expected '>='");
      Integer k0 = cur.integer();
      cur.expect(':');
      spec.family = BlockFamily{k0.get_si(), parse_block(cur)};
    } else if (w == "n") {
      cur.word();
      cur.expect('=');
      std::vector<Natural> prefix{cur.natural()};
      while (cur.peek() == ',') {
        cur.expect(',');
        prefix.push_back(cur.natural());
      }
      try {
        spec.seq = IndexSequence(std::move(prefix));
      } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, std::string(e.what()) + " at position " + std::to_string(at), at);
      }
    } else {
      spec.blocks.push_back(parse_block(cur));
    }
  } while (cur.accept(';'));
  cur.expect(']');
  return IndexSet::factorial_intervals(std::move(spec));
}

IndexSet parse_set(Cursor& cur) {
  cur.skip_ws();
  std::size_t at = cur.position();
  std::string w = cur.word();
  try {
    if (w == "nat") return IndexSet::nat();
    if (w == "empty") return IndexSet::empty();
    if (w == "finite") {
      cur.expect('{');
      std::vector<Natural> xs;
      if (!cur.accept('}')) {
        do xs.push_back(cur.natural());
        while (cur.accept(','));
        cur.expect('}');
      }
      return IndexSet::finite(std::move(xs));
    }
    if (w == "ap" || w == "interval") {
      cur.expect('(');
      Natural a = cur.natural();
      cur.expect(',');
      Natural b = cur.natural();
      cur.expect(')');
      return w == "ap" ? IndexSet::arith_prog(a, b) : IndexSet::interval(a, b);
    }
    if (w == "factorials") {
      if (cur.peek() != '(') return IndexSet::factorial_points(IndexSet::nat());
      cur.expect('(');
      IndexSet base = parse_set(cur);
      cur.expect(')');
      return IndexSet::factorial_points(base);
    }
    if (w == "fintervals") return parse_fintervals(cur);
    if (w == "compl") {
      cur.expect('(');
      IndexSet a = parse_set(cur);
      cur.expect(')');
      return IndexSet::complement(a);
    }
    if (w == "union" || w == "inter" || w == "diff") {
      cur.expect('(');
      IndexSet a = parse_set(cur);
      cur.expect(',');
      IndexSet b = parse_set(cur);
      cur.expect(')');
      if (w == "union") return IndexSet::set_union(a, b);
      if (w == "inter") return IndexSet::set_inter(a, b);
      return IndexSet::difference(a, b);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError || e.position()) throw;
    throw Error(e.code(), std::string(e.what()) + " at position " + std::to_string(at), at);
  }
  throw Error(ErrorCode::ParseError, "unknown set constructor '" + w + "' at position " + std::to_string(at), at);
}

}  // namespace

IndexSet parse_index_set(Cursor& cur) { return parse_set(cur); }

IndexSet parse_index_set(std::string_view text) {
  Cursor cur(text);
  IndexSet s = parse_set(cur);
  cur.expect_end();
  return s;
}

BoundExpr parse_bound(Cursor& cur) { return parse_sum(cur); }

BoundExpr parse_bound(std::string_view text) {
  Cursor cur(text);
  BoundExpr e = parse_sum(cur);
  cur.expect_end();
  return e;
}

}  // namespace densitylab::setalg
