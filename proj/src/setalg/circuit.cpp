#include "circuit.hpp"

#include <functional>
#include <unordered_map>

namespace densitylab::setalg::detail {

bool Circuit::eval(const std::vector<char>& state) const {
  std::vector<char> v(gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    switch (g.op) {
      case Op::Atom: v[i] = state[g.a]; break;
      case Op::Not: v[i] = !v[g.a]; break;
      case Op::And: v[i] = v[g.a] && v[g.b]; break;
      case Op::Or: v[i] = v[g.a] || v[g.b]; break;
      case Op::Const: v[i] = g.value; break;
    }
  }
  return v[root];
}

IndexSet Circuit::rebuild(const std::vector<IndexSet>& subst) const {
  std::vector<std::optional<IndexSet>> v(gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    switch (g.op) {
      case Op::Atom: v[i] = subst[g.a]; break;
      case Op::Not: v[i] = IndexSet::complement(*v[g.a]); break;
      case Op::And: v[i] = IndexSet::set_inter(*v[g.a], *v[g.b]); break;
      case Op::Or: v[i] = IndexSet::set_union(*v[g.a], *v[g.b]); break;
      case Op::Const: v[i] = g.value ? IndexSet::nat() : IndexSet::empty(); break;
    }
  }
  return *v[root];
}

Circuit compile(const IndexSet& s) {
  Circuit c;
  std::unordered_map<std::string, int> memo;
  std::unordered_map<std::string, int> atom_index;
  auto add = [&](Circuit::Gate g) {
    c.gates.push_back(g);
    return static_cast<int>(c.gates.size()) - 1;
  };
  std::function<int(const IndexSet&)> go = [&](const IndexSet& x) -> int {
    auto it = memo.find(x.key());
    if (it != memo.end()) return it->second;
    int id = -1;
    if (x.is_nat() || x.is_empty_literal()) {
      id = add({Circuit::Op::Const, -1, -1, x.is_nat()});
    } else {
      switch (x.kind()) {
        case Kind::Union: {
          int a = go(x.lhs()), b = go(x.rhs());
          id = add({Circuit::Op::Or, a, b});
          break;
        }
        case Kind::Inter: {
          int a = go(x.lhs()), b = go(x.rhs());
          id = add({Circuit::Op::And, a, b});
          break;
        }
        case Kind::Compl: {
          int a = go(x.lhs());
          id = add({Circuit::Op::Not, a});
          break;
        }
        case Kind::Diff: {
          int a = go(x.lhs()), b = go(x.rhs());
          int nb = add({Circuit::Op::Not, b});
          id = add({Circuit::Op::And, a, nb});
          break;
        }
        default: {
          auto [ait, fresh] = atom_index.emplace(x.key(), static_cast<int>(c.atoms.size()));
          if (fresh) c.atoms.push_back(x);
          id = add({Circuit::Op::Atom, ait->second});
          break;
        }
      }
    }
    memo.emplace(x.key(), id);
    return id;
  };
  c.root = go(s);
  return c;
}

AtomClass classify(const IndexSet& atom) {
  switch (atom.kind()) {
    case Kind::Finite:
    case Kind::FactorialPoints: return AtomClass::Sparse;
    case Kind::ArithProg: return AtomClass::Periodic;
    default: return AtomClass::Block;
  }
}

Congruence combine(const Congruence& x, const Integer& a, const Integer& d) {
  if (!x.ok) return x;
  Integer g;
  mpz_gcd(g.get_mpz_t(), x.m.get_mpz_t(), d.get_mpz_t());
  Integer diff = a - x.c;
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), diff.get_mpz_t(), g.get_mpz_t());
  if (r != 0) return Congruence{false, 0, 1};
  Integer m1 = x.m / g, d1 = d / g;
  Integer j = 0;
  if (d1 != 1) {
    Integer inv;
    Integer mm;
    mpz_fdiv_r(mm.get_mpz_t(), m1.get_mpz_t(), d1.get_mpz_t());
    mpz_invert(inv.get_mpz_t(), mm.get_mpz_t(), d1.get_mpz_t());
    Integer q = diff / g;
    j = q * inv;
    mpz_fdiv_r(j.get_mpz_t(), j.get_mpz_t(), d1.get_mpz_t());
  }
  Congruence out;
  out.m = x.m * d1;
  out.c = x.c + x.m * j;
  mpz_fdiv_r(out.c.get_mpz_t(), out.c.get_mpz_t(), out.m.get_mpz_t());
  return out;
}

Integer count_congruent(const Integer& lo, const Integer& hi, const Congruence& g) {
  if (!g.ok || hi < lo) return 0;
  Integer a = hi - g.c, b = lo - 1 - g.c;
  Integer qa, qb;
  mpz_fdiv_q(qa.get_mpz_t(), a.get_mpz_t(), g.m.get_mpz_t());
  mpz_fdiv_q(qb.get_mpz_t(), b.get_mpz_t(), g.m.get_mpz_t());
  return qa - qb;
}

std::vector<Integer> pattern_counts(const std::vector<IndexSet>& aps, const Integer& lo, const Integer& hi) {
  const std::size_t q = aps.size();
  const std::size_t total = std::size_t{1} << q;
  std::vector<Congruence> g(total);
  std::vector<Integer> cnt(total);
  for (std::size_t mask = 0; mask < total; ++mask) {
    if (mask) {
      std::size_t i = static_cast<std::size_t>(__builtin_ctzll(mask));
      g[mask] = combine(g[mask ^ (std::size_t{1} << i)], aps[i].ap_start(), aps[i].ap_step());
    }
    cnt[mask] = count_congruent(lo, hi, g[mask]);
  }
  for (std::size_t i = 0; i < q; ++i) {
    std::size_t bit = std::size_t{1} << i;
    for (std::size_t mask = 0; mask < total; ++mask) {
      if (!(mask & bit)) cnt[mask] -= cnt[mask | bit];
    }
  }
  return cnt;
}

}  // namespace densitylab::setalg::detail
