#include "fcs/term.hpp"

#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "fcs/error.hpp"

namespace fcs {

struct Term::Node {
  Kind kind;
  std::string name;
  std::shared_ptr<const Node> a, b;
  std::size_t hash;
  bool minus;
  bool closed;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

const std::shared_ptr<const Term::Node>& zero_node();

}  // namespace

Term::Term() : node_(zero_node()) {}

namespace {

std::shared_ptr<const Term::Node> make(Term::Kind k, std::string name, std::shared_ptr<const Term::Node> a,
                                       std::shared_ptr<const Term::Node> b) {
  std::size_t h = mix(static_cast<std::size_t>(k) * 1315423911u, std::hash<std::string>{}(name));
  bool minus = (k == Term::Kind::Neg || k == Term::Kind::Sub);
  bool closed = (k != Term::Kind::Var);
  if (a) {
    h = mix(h, a->hash);
    minus = minus || a->minus;
    closed = closed && a->closed;
  }
  if (b) {
    h = mix(h, b->hash);
    minus = minus || b->minus;
    closed = closed && b->closed;
  }
  return std::make_shared<const Term::Node>(Term::Node{k, std::move(name), std::move(a), std::move(b), h, minus, closed});
}

const std::shared_ptr<const Term::Node>& zero_node() {
  static const std::shared_ptr<const Term::Node> z = make(Term::Kind::Zero, "", nullptr, nullptr);
  return z;
}

const std::shared_ptr<const Term::Node>& one_node() {
  static const std::shared_ptr<const Term::Node> o = make(Term::Kind::One, "", nullptr, nullptr);
  return o;
}

bool nodes_equal(const Term::Node* x, const Term::Node* y) {
  if (x == y) return true;
  if (x->hash != y->hash || x->kind != y->kind) return false;
  if (x->kind == Term::Kind::Var) return x->name == y->name;
  if (x->a && !nodes_equal(x->a.get(), y->a.get())) return false;
  if (x->b && !nodes_equal(x->b.get(), y->b.get())) return false;
  return true;
}

}  // namespace

Term Term::var(const std::string& name) {
  if (name.empty()) throw Error("empty variable name");
  return Term(make(Kind::Var, name, nullptr, nullptr));
}
Term Term::zero() { return Term(zero_node()); }
Term Term::one() { return Term(one_node()); }
Term Term::add(const Term& a, const Term& b) { return Term(make(Kind::Add, "", a.node_, b.node_)); }
Term Term::mul(const Term& a, const Term& b) { return Term(make(Kind::Mul, "", a.node_, b.node_)); }
Term Term::neg(const Term& a) { return Term(make(Kind::Neg, "", a.node_, nullptr)); }
Term Term::sub(const Term& a, const Term& b) { return Term(make(Kind::Sub, "", a.node_, b.node_)); }

namespace {

Term balanced(unsigned long k) {
  if (k == 1) return Term::one();
  return Term::add(balanced(k - k / 2), balanced(k / 2));
}

}  // namespace

Term Term::numeral(const Int& n) {
  if (sgn(n) < 0) return neg(numeral(-n));
  if (n == 0) return zero();
  if (n <= 64) return balanced(n.get_ui());
  Term t = mul(balanced(2), numeral(n / 2));
  if (mpz_odd_p(n.get_mpz_t())) t = add(t, one());
  return t;
}

Term Term::power(const Term& t, unsigned k) {
  if (k == 0) return one();
  if (k == 1) return t;
  if (k % 2 == 0) {
    Term h = power(t, k / 2);
    return mul(h, h);
  }
  return mul(power(t, k - 1), t);
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
Term Term::left() const {
  if (!node_->a) throw Error("term has no operands");
  return Term(node_->a);
}
Term Term::right() const {
  if (!node_->b) throw Error("term has no second operand");
  return Term(node_->b);
}
bool Term::uses_minus() const { return node_->minus; }
bool Term::closed() const { return node_->closed; }
std::size_t Term::hash() const { return node_->hash; }

bool operator==(const Term& a, const Term& b) { return nodes_equal(a.node_.get(), b.node_.get()); }

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::unordered_set<const void*> seen;
  std::function<void(const Term&)> go = [&](const Term& u) {
    if (u.closed() || !seen.insert(u.id()).second) return;
    switch (u.kind()) {
      case Term::Kind::Var: out.insert(u.name()); break;
      case Term::Kind::Neg: go(u.left()); break;
      case Term::Kind::Add:
      case Term::Kind::Mul:
      case Term::Kind::Sub:
        go(u.left());
        go(u.right());
        break;
      default: break;
    }
  };
  go(t);
  return out;
}

Term substitute(const Term& t, const std::map<std::string, Term>& m) {
  if (m.empty()) return t;
  std::unordered_map<const void*, Term> memo;
  std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
    if (u.closed()) return u;
    auto it = memo.find(u.id());
    if (it != memo.end()) return it->second;
    Term r;
    switch (u.kind()) {
      case Term::Kind::Var: {
        auto f = m.find(u.name());
        r = f == m.end() ? u : f->second;
        break;
      }
      case Term::Kind::Neg: r = Term::neg(go(u.left())); break;
      case Term::Kind::Add: r = Term::add(go(u.left()), go(u.right())); break;
      case Term::Kind::Mul: r = Term::mul(go(u.left()), go(u.right())); break;
      case Term::Kind::Sub: r = Term::sub(go(u.left()), go(u.right())); break;
      default: r = u;
    }
    memo.emplace(u.id(), r);
    return r;
  };
  return go(t);
}

Int eval_term(const Term& t, const Valuation& v) {
  std::unordered_map<const void*, Int> memo;
  std::function<Int(const Term&)> go = [&](const Term& u) -> Int {
    switch (u.kind()) {
      case Term::Kind::Zero: return 0;
      case Term::Kind::One: return 1;
      case Term::Kind::Var: {
        auto f = v.find(u.name());
        if (f == v.end()) throw Error("unbound variable '" + u.name() + "'");
        return f->second;
      }
      default: break;
    }
    auto it = memo.find(u.id());
    if (it != memo.end()) return it->second;
    Int r;
    switch (u.kind()) {
      case Term::Kind::Neg: r = -go(u.left()); break;
      case Term::Kind::Add: r = go(u.left()) + go(u.right()); break;
      case Term::Kind::Mul: r = go(u.left()) * go(u.right()); break;
      case Term::Kind::Sub: r = go(u.left()) - go(u.right()); break;
      default: break;
    }
    memo.emplace(u.id(), r);
    return r;
  };
  return go(t);
}

std::string to_string(const Term& t) {
  std::unordered_map<const void*, std::string> memo;
  std::function<std::string(const Term&)> go = [&](const Term& u) -> std::string {
    switch (u.kind()) {
      case Term::Kind::Zero: return "0";
      case Term::Kind::One: return "1";
      case Term::Kind::Var: return u.name();
      default: break;
    }
    auto it = memo.find(u.id());
    if (it != memo.end()) return it->second;
    std::string s;
    if (u.closed() && !u.uses_minus()) {
      Int v = eval_term(u, {});
      if (Term::numeral(v) == u) s = v.get_str();
    }
    if (s.empty()) {
      switch (u.kind()) {
        case Term::Kind::Neg: s = "(-" + go(u.left()) + ")"; break;
        case Term::Kind::Add: s = "(" + go(u.left()) + " + " + go(u.right()) + ")"; break;
        case Term::Kind::Mul: s = "(" + go(u.left()) + " * " + go(u.right()) + ")"; break;
        case Term::Kind::Sub: s = "(" + go(u.left()) + " - " + go(u.right()) + ")"; break;
        default: break;
      }
    }
    memo.emplace(u.id(), s);
    return s;
  };
  return go(t);
}

Term add_s(const Term& a, const Term& b) {
  if (a.kind() == Term::Kind::Zero) return b;
  if (b.kind() == Term::Kind::Zero) return a;
  return Term::add(a, b);
}

Term mul_s(const Term& a, const Term& b) {
  if (a.kind() == Term::Kind::Zero || b.kind() == Term::Kind::Zero) return Term::zero();
  if (a.kind() == Term::Kind::One) return b;
  if (b.kind() == Term::Kind::One) return a;
  return Term::mul(a, b);
}

Term sum_of_squares(const std::vector<std::string>& names) {
  Term acc = Term::zero();
  for (const auto& n : names) {
    Term v = Term::var(n);
    acc = add_s(acc, Term::mul(v, v));
  }
  return acc;
}

}  // namespace fcs
