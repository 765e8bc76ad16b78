#include "densitylab/setalg/asymptotic.hpp"

namespace densitylab::setalg::asym {

Poly Poly::constant(const Rational& v) {
  Poly p;
  p.c.push_back(v);
  p.trim();
  return p;
}

Poly Poly::linear(const Rational& a, const Rational& b) {
  Poly p;
  p.c = {b, a};
  p.trim();
  return p;
}

void Poly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly out;
  out.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < a.c.size(); ++i) out.c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) out.c[i] += b.c[i];
  out.trim();
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  if (a.is_zero() || b.is_zero()) return out;
  out.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
  }
  out.trim();
  return out;
}

Poly negate(const Poly& a) {
  Poly out = a;
  for (auto& v : out.c) v = -v;
  return out;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  RatFunc out;
  out.num = a.num * b.den + b.num * a.den;
  out.den = a.den * b.den;
  return out;
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  RatFunc out;
  out.num = a.num * b.num;
  out.den = a.den * b.den;
  return out;
}

RatFunc invert(const RatFunc& a) {
  RatFunc out;
  out.num = a.den;
  out.den = a.num;
  return out;
}

namespace {

void add_term(Series& s, const Key& key, const RatFunc& r) {
  if (r.is_zero()) return;
  auto it = s.terms.find(key);
  if (it == s.terms.end()) {
    s.terms.emplace(key, r);
    return;
  }
  it->second = it->second + r;
  if (it->second.is_zero()) s.terms.erase(it);
}

Key combine(const Key& a, const Key& b, long sign) {
  Key out = a;
  for (const auto& [slope, e] : b) {
    long v = out[slope] + sign * e;
    if (v == 0) {
      out.erase(slope);
    } else {
      out[slope] = v;
    }
  }
  return out;
}

int sign_of(const RatFunc& r) {
  return sgn(r.num.lead()) * sgn(r.den.lead());
}

// Growth of prod (a k)!^e relative to 1: +1 grows, -1 vanishes, 0 when the
// key is empty, nullopt when only polynomial-order factors could decide.
std::optional<int> growth(const Key& d) {
  if (d.empty()) return 0;
  long sigma = 0;
  for (const auto& [a, e] : d) sigma += a * e;
  if (sigma > 0) return 1;
  if (sigma < 0) return -1;
  Integer pos = 1, neg = 1;
  for (const auto& [a, e] : d) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(a * std::labs(e)));
    if (e > 0) {
      pos *= p;
    } else {
      neg *= p;
    }
  }
  if (pos > neg) return 1;
  if (pos < neg) return -1;
  return std::nullopt;
}

Limit ratfunc_limit(const RatFunc& x, const RatFunc& y) {
  // x / y = (xn * yd) / (xd * yn)
  Poly top = x.num * y.den;
  Poly bottom = x.den * y.num;
  Limit out;
  if (top.is_zero()) {
    out.value = 0;
    return out;
  }
  int diff = top.degree() - bottom.degree();
  Rational lead = top.lead() / bottom.lead();
  if (diff < 0) {
    out.value = 0;
  } else if (diff == 0) {
    out.value = lead;
  } else {
    out.kind = lead > 0 ? Limit::Kind::PlusInfinity : Limit::Kind::MinusInfinity;
  }
  return out;
}

// Key of the fastest-growing term, or nullopt on an undecidable tie.
std::optional<Key> dominant(const Series& s) {
  auto it = s.terms.begin();
  Key best = it->first;
  for (++it; it != s.terms.end(); ++it) {
    auto g = growth(combine(it->first, best, -1));
    if (!g) return std::nullopt;
    if (*g > 0) best = it->first;
  }
  for (const auto& [key, r] : s.terms) {
    if (key == best) continue;
    auto g = growth(combine(key, best, -1));
    if (!g || *g >= 0) return std::nullopt;
  }
  return best;
}

std::optional<Series> convert(const BoundExpr::Node& n, const IndexSequence& seq) {
  using Op = BoundExpr::Op;
  switch (n.op) {
    case Op::Const: return Series::constant(Rational(n.value));
    case Op::K: return Series::poly(Poly::linear(1, 0));
    case Op::Seq: {
      auto arg = convert(*n.lhs, seq);
      if (!arg) return std::nullopt;
      auto p = arg->as_poly();
      if (!p) return std::nullopt;
      if (p->degree() <= 0) {
        Rational v = p->is_zero() ? Rational(0) : p->c[0];
        if (v.get_den() != 1) return std::nullopt;
        return Series::constant(Rational(seq.at(v.get_num())));
      }
      if (p->lead() < 0) return std::nullopt;
      return Series::poly(*p + Poly::constant(Rational(seq.tail_offset())));
    }
    case Op::Fact: {
      auto arg = convert(*n.lhs, seq);
      if (!arg) return std::nullopt;
      auto p = arg->as_poly();
      if (!p || p->degree() > 1) return std::nullopt;
      Rational beta = p->is_zero() ? Rational(0) : p->c[0];
      Rational alpha = p->degree() == 1 ? p->c[1] : Rational(0);
      if (beta.get_den() != 1 || alpha.get_den() != 1 || alpha < 0) return std::nullopt;
      if (alpha == 0) {
        if (beta < 0 || beta > kMaxFactorialArgument) return std::nullopt;
        return Series::constant(Rational(factorial(beta.get_num().get_ui())));
      }
      long a = alpha.get_num().get_si();
      long b = beta.get_num().get_si();
      RatFunc r;
      if (b >= 0) {
        for (long i = 1; i <= b; ++i) r.num = r.num * Poly::linear(a, i);
      } else {
        for (long i = 0; i < -b; ++i) r.den = r.den * Poly::linear(a, -i);
      }
      Series s;
      s.terms.emplace(Key{{a, 1}}, r);
      return s;
    }
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      auto l = convert(*n.lhs, seq);
      auto r = convert(*n.rhs, seq);
      if (!l || !r) return std::nullopt;
      if (n.op == Op::Add) return *l + *r;
      if (n.op == Op::Sub) return *l - *r;
      if (n.op == Op::Mul) return *l * *r;
      return divide(*l, *r);
    }
  }
  return std::nullopt;
}

}  // namespace

Series Series::constant(const Rational& v) {
  Series s;
  add_term(s, Key{}, RatFunc{Poly::constant(v), Poly::constant(1)});
  return s;
}

Series Series::poly(const Poly& p) {
  Series s;
  add_term(s, Key{}, RatFunc{p, Poly::constant(1)});
  return s;
}

std::optional<Poly> Series::as_poly() const {
  if (terms.empty()) return Poly{};
  if (terms.size() != 1 || !terms.begin()->first.empty()) return std::nullopt;
  const RatFunc& r = terms.begin()->second;
  if (r.den.degree() != 0) return std::nullopt;
  return r.num * Poly::constant(1 / r.den.c[0]);
}

Series operator+(const Series& a, const Series& b) {
  Series out = a;
  for (const auto& [key, r] : b.terms) add_term(out, key, r);
  return out;
}

Series operator-(const Series& a, const Series& b) {
  Series out = a;
  for (const auto& [key, r] : b.terms) add_term(out, key, RatFunc{negate(r.num), r.den});
  return out;
}

Series operator*(const Series& a, const Series& b) {
  Series out;
  for (const auto& [ka, ra] : a.terms) {
    for (const auto& [kb, rb] : b.terms) add_term(out, combine(ka, kb, 1), ra * rb);
  }
  return out;
}

std::optional<Series> divide(const Series& a, const Series& b) {
  if (b.terms.size() != 1) return std::nullopt;
  const auto& [kb, rb] = *b.terms.begin();
  Series out;
  for (const auto& [ka, ra] : a.terms) add_term(out, combine(ka, kb, -1), ra * invert(rb));
  return out;
}

std::optional<Series> from_bound(const BoundExpr& e, const IndexSequence& n) {
  try {
    return convert(e.root(), n);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<Limit> ratio_limit(const Series& x, const Series& y) {
  if (y.is_zero()) return std::nullopt;
  auto ybest = dominant(y);
  if (!ybest) return std::nullopt;
  const RatFunc& yr = y.terms.at(*ybest);
  if (x.is_zero()) return Limit{};

  Series faster;
  std::optional<Limit> same;
  for (const auto& [key, r] : x.terms) {
    auto g = growth(combine(key, *ybest, -1));
    if (!g) return std::nullopt;
    if (*g > 0) {
      faster.terms.emplace(key, r);
    } else if (*g == 0) {
      same = ratfunc_limit(r, yr);
    }
  }
  if (!faster.is_zero()) {
    auto xbest = dominant(faster);
    if (!xbest) return std::nullopt;
    int s = sign_of(faster.terms.at(*xbest)) * sign_of(yr);
    return Limit{s > 0 ? Limit::Kind::PlusInfinity : Limit::Kind::MinusInfinity, 0};
  }
  if (same) return same;
  return Limit{};
}

std::optional<Limit> limit(const Series& x) { return ratio_limit(x, Series::constant(1)); }

}  // namespace densitylab::setalg::asym
