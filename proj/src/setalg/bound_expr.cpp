#include "densitylab/setalg/bound_expr.hpp"

#include "densitylab/error.hpp"

namespace densitylab::setalg {

IndexSequence::IndexSequence(std::vector<Natural> prefix) : prefix_(std::move(prefix)) {
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    if (prefix_[i] < 1) {
      throw Error(ErrorCode::InvalidStructure, "sequence entries must be >= 1");
    }
    if (i > 0 && prefix_[i] <= prefix_[i - 1]) {
      throw Error(ErrorCode::InvalidStructure, "sequence must be strictly increasing");
    }
  }
}

Natural IndexSequence::at(const Integer& j) const {
  if (j < 1) {
    throw Error(ErrorCode::InvalidStructure, "sequence index " + j.get_str() + " below 1");
  }
  if (prefix_.empty()) return j;
  Integer len(static_cast<unsigned long>(prefix_.size()));
  if (j <= len) return prefix_[j.get_ui() - 1];
  return prefix_.back() + (j - len);
}

Integer IndexSequence::tail_offset() const {
  if (prefix_.empty()) return 0;
  return prefix_.back() - Integer(static_cast<unsigned long>(prefix_.size()));
}

std::string IndexSequence::to_dsl() const {
  std::string out;
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    if (i) out += ',';
    out += prefix_[i].get_str();
  }
  return out;
}

namespace {

using NodePtr = std::shared_ptr<const BoundExpr::Node>;

NodePtr make(BoundExpr::Op op, Integer v = 0, NodePtr l = nullptr, NodePtr r = nullptr) {
  return std::make_shared<const BoundExpr::Node>(BoundExpr::Node{op, std::move(v), std::move(l), std::move(r)});
}

Integer eval_node(const BoundExpr::Node& n, const Integer* k, const IndexSequence& seq) {
  using Op = BoundExpr::Op;
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::K:
      if (!k) throw Error(ErrorCode::InvalidStructure, "bound uses k outside a block family");
      return *k;
    case Op::Seq: return seq.at(eval_node(*n.lhs, k, seq));
    case Op::Fact: {
      Integer a = eval_node(*n.lhs, k, seq);
      if (a < 0) throw Error(ErrorCode::InvalidStructure, "factorial of negative value");
      if (a > kMaxFactorialArgument) {
        throw Error(ErrorCode::HorizonExceeded, "factorial argument " + a.get_str() + " too large");
      }
      return factorial(a.get_ui());
    }
    case Op::Add: return eval_node(*n.lhs, k, seq) + eval_node(*n.rhs, k, seq);
    case Op::Sub: return eval_node(*n.lhs, k, seq) - eval_node(*n.rhs, k, seq);
    case Op::Mul: return eval_node(*n.lhs, k, seq) * eval_node(*n.rhs, k, seq);
    case Op::Div: {
      Integer d = eval_node(*n.rhs, k, seq);
      if (d == 0) throw Error(ErrorCode::InvalidStructure, "division by zero in bound");
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), eval_node(*n.lhs, k, seq).get_mpz_t(), d.get_mpz_t());
      return q;
    }
  }
  return 0;
}

bool contains(const BoundExpr::Node& n, BoundExpr::Op op) {
  if (n.op == op) return true;
  return (n.lhs && contains(*n.lhs, op)) || (n.rhs && contains(*n.rhs, op));
}

NodePtr shift_node(const NodePtr& n, long s) {
  using Op = BoundExpr::Op;
  if (n->op == Op::K) return make(Op::Add, 0, n, make(Op::Const, Integer(s)));
  if (!n->lhs) return n;
  return make(n->op, n->value, shift_node(n->lhs, s), n->rhs ? shift_node(n->rhs, s) : nullptr);
}

int precedence(BoundExpr::Op op) {
  using Op = BoundExpr::Op;
  switch (op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Fact: return 3;
    default: return 4;
  }
}

std::string print(const BoundExpr::Node& n);

std::string wrap(const BoundExpr::Node& n, int min_prec) {
  std::string s = print(n);
  if (precedence(n.op) < min_prec || (n.op == BoundExpr::Op::Const && n.value < 0 && min_prec > 1)) {
    return "(" + s + ")";
  }
  return s;
}

std::string print(const BoundExpr::Node& n) {
  using Op = BoundExpr::Op;
  switch (n.op) {
    case Op::Const: return n.value.get_str();
    case Op::K: return "k";
    case Op::Seq: return "n(" + print(*n.lhs) + ")";
    case Op::Fact: return wrap(*n.lhs, 4) + "!";
    case Op::Add: return print(*n.lhs) + "+" + wrap(*n.rhs, 2);
    case Op::Sub: return print(*n.lhs) + "-" + wrap(*n.rhs, 2);
    case Op::Mul:
      if (n.lhs->op == Op::Const && n.lhs->value >= 0 && n.rhs->op == Op::K) {
        return n.lhs->value.get_str() + "k";
      }
      return wrap(*n.lhs, 2) + "*" + wrap(*n.rhs, 3);
    case Op::Div: return wrap(*n.lhs, 2) + "/" + wrap(*n.rhs, 3);
  }
  return "";
}

}  // namespace

BoundExpr BoundExpr::constant(const Integer& v) { return BoundExpr(make(Op::Const, v)); }
BoundExpr BoundExpr::k() { return BoundExpr(make(Op::K)); }
BoundExpr BoundExpr::seq(const BoundExpr& arg) { return BoundExpr(make(Op::Seq, 0, arg.root_)); }
BoundExpr BoundExpr::fact(const BoundExpr& arg) { return BoundExpr(make(Op::Fact, 0, arg.root_)); }
BoundExpr BoundExpr::binary(Op op, const BoundExpr& a, const BoundExpr& b) {
  return BoundExpr(make(op, 0, a.root_, b.root_));
}

Integer BoundExpr::eval(const Integer& k, const IndexSequence& n) const { return eval_node(*root_, &k, n); }
Integer BoundExpr::eval(const IndexSequence& n) const { return eval_node(*root_, nullptr, n); }

bool BoundExpr::uses_k() const { return contains(*root_, Op::K); }
bool BoundExpr::uses_seq() const { return contains(*root_, Op::Seq); }
BoundExpr BoundExpr::shift_k(long s) const { return BoundExpr(shift_node(root_, s)); }
std::string BoundExpr::to_dsl() const { return print(*root_); }

}  // namespace densitylab::setalg
