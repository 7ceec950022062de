#include "fcs/formula.hpp"

#include <functional>

#include "fcs/error.hpp"

namespace fcs {

std::string to_string(const Atom& a) {
  return to_string(a.lhs) + (a.rel == Atom::Rel::Eq ? " = " : " < ") + to_string(a.rhs);
}

std::set<std::string> free_vars(const Atom& a) {
  auto s = free_vars(a.lhs);
  auto r = free_vars(a.rhs);
  s.insert(r.begin(), r.end());
  return s;
}

Atom substitute(const Atom& a, const std::map<std::string, Term>& m) {
  return {a.rel, substitute(a.lhs, m), substitute(a.rhs, m)};
}

bool eval_atom(const Atom& a, const Valuation& v) {
  Int l = eval_term(a.lhs, v);
  Int r = eval_term(a.rhs, v);
  return a.rel == Atom::Rel::Eq ? l == r : l < r;
}

struct Formula::Node {
  Kind kind;
  fcs::Atom atom;
  std::vector<Formula> kids;
  std::string name;  // quantifier variable or predicate name
  std::vector<Term> args;
  std::size_t hash;
  bool pred;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula Formula::atom(const fcs::Atom& a) {
  std::size_t h = mix(mix(17, static_cast<std::size_t>(a.rel)), mix(a.lhs.hash(), a.rhs.hash()));
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, a, {}, "", {}, h, false}));
}

Formula Formula::conj(const Formula& a, const Formula& b) {
  std::size_t h = mix(mix(31, a.hash()), b.hash());
  return Formula(std::make_shared<const Node>(
      Node{Kind::And, Atom::eq(Term(), Term()), {a, b}, "", {}, h, a.mentions_predicate() || b.mentions_predicate()}));
}

Formula Formula::disj(const Formula& a, const Formula& b) {
  std::size_t h = mix(mix(37, a.hash()), b.hash());
  return Formula(std::make_shared<const Node>(
      Node{Kind::Or, Atom::eq(Term(), Term()), {a, b}, "", {}, h, a.mentions_predicate() || b.mentions_predicate()}));
}

Formula Formula::negation(const Formula& a) {
  std::size_t h = mix(41, a.hash());
  return Formula(std::make_shared<const Node>(
      Node{Kind::Not, Atom::eq(Term(), Term()), {a}, "", {}, h, a.mentions_predicate()}));
}

Formula Formula::implies(const Formula& a, const Formula& b) {
  std::size_t h = mix(mix(43, a.hash()), b.hash());
  return Formula(std::make_shared<const Node>(Node{Kind::Implies, Atom::eq(Term(), Term()), {a, b}, "", {}, h,
                                                   a.mentions_predicate() || b.mentions_predicate()}));
}

Formula Formula::forall(const std::string& var, const Formula& body) {
  std::size_t h = mix(mix(47, std::hash<std::string>{}(var)), body.hash());
  return Formula(std::make_shared<const Node>(
      Node{Kind::Forall, Atom::eq(Term(), Term()), {body}, var, {}, h, body.mentions_predicate()}));
}

Formula Formula::exists(const std::string& var, const Formula& body) {
  std::size_t h = mix(mix(53, std::hash<std::string>{}(var)), body.hash());
  return Formula(std::make_shared<const Node>(
      Node{Kind::Exists, Atom::eq(Term(), Term()), {body}, var, {}, h, body.mentions_predicate()}));
}

Formula Formula::pred(const std::string& name, std::vector<Term> args) {
  std::size_t h = mix(59, std::hash<std::string>{}(name));
  for (const auto& t : args) h = mix(h, t.hash());
  return Formula(std::make_shared<const Node>(
      Node{Kind::Pred, Atom::eq(Term(), Term()), {}, name, std::move(args), h, true}));
}

Formula Formula::conj_list(const std::vector<Formula>& parts) {
  if (parts.empty()) throw Error("empty conjunction");
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = conj(parts[i], acc);
  return acc;
}

Formula::Kind Formula::kind() const { return node_->kind; }
const fcs::Atom& Formula::as_atom() const {
  if (node_->kind != Kind::Atom) throw Error("formula is not an atom");
  return node_->atom;
}
const Formula& Formula::left() const {
  if (node_->kids.empty()) throw Error("formula has no subformula");
  return node_->kids[0];
}
const Formula& Formula::right() const {
  if (node_->kids.size() < 2) throw Error("formula has no second subformula");
  return node_->kids[1];
}
const std::string& Formula::var() const { return node_->name; }
const std::string& Formula::name() const { return node_->name; }
const std::vector<Term>& Formula::args() const { return node_->args; }
bool Formula::is_binary() const {
  return node_->kind == Kind::And || node_->kind == Kind::Or || node_->kind == Kind::Implies;
}
bool Formula::mentions_predicate() const { return node_->pred; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atom: return a.as_atom() == b.as_atom();
    case Formula::Kind::Pred: return a.name() == b.name() && a.args() == b.args();
    case Formula::Kind::Not: return a.left() == b.left();
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return a.var() == b.var() && a.body() == b.body();
    default: return a.left() == b.left() && a.right() == b.right();
  }
}

std::set<std::string> free_vars(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return free_vars(f.as_atom());
    case Formula::Kind::Pred: {
      std::set<std::string> s;
      for (const auto& t : f.args()) {
        auto v = free_vars(t);
        s.insert(v.begin(), v.end());
      }
      return s;
    }
    case Formula::Kind::Not: return free_vars(f.left());
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      auto s = free_vars(f.body());
      s.erase(f.var());
      return s;
    }
    default: {
      auto s = free_vars(f.left());
      auto r = free_vars(f.right());
      s.insert(r.begin(), r.end());
      return s;
    }
  }
}

std::set<std::string> all_vars(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      auto s = all_vars(f.body());
      s.insert(f.var());
      return s;
    }
    case Formula::Kind::Not: return all_vars(f.left());
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
      auto s = all_vars(f.left());
      auto r = all_vars(f.right());
      s.insert(r.begin(), r.end());
      return s;
    }
    default: return free_vars(f);
  }
}

std::set<std::string> predicates_used(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (!g.mentions_predicate()) return;
    switch (g.kind()) {
      case Formula::Kind::Pred: out.insert(g.name()); break;
      case Formula::Kind::Not:
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: go(g.left()); break;
      case Formula::Kind::Atom: break;
      default:
        go(g.left());
        go(g.right());
    }
  };
  go(f);
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string n = base;
  while (avoid.count(n)) n += "'";
  return n;
}

Formula substitute(const Formula& f, const std::map<std::string, Term>& m) {
  if (m.empty()) return f;
  switch (f.kind()) {
    case Formula::Kind::Atom: return Formula::atom(substitute(f.as_atom(), m));
    case Formula::Kind::Pred: {
      std::vector<Term> args;
      for (const auto& t : f.args()) args.push_back(substitute(t, m));
      return Formula::pred(f.name(), std::move(args));
    }
    case Formula::Kind::Not: return Formula::negation(substitute(f.left(), m));
    case Formula::Kind::And: return Formula::conj(substitute(f.left(), m), substitute(f.right(), m));
    case Formula::Kind::Or: return Formula::disj(substitute(f.left(), m), substitute(f.right(), m));
    case Formula::Kind::Implies: return Formula::implies(substitute(f.left(), m), substitute(f.right(), m));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const std::string& x = f.var();
      auto body_free = free_vars(f.body());
      std::map<std::string, Term> inner;
      std::set<std::string> incoming;
      for (const auto& [k, t] : m) {
        if (k == x || !body_free.count(k)) continue;
        inner.emplace(k, t);
        auto fv = free_vars(t);
        incoming.insert(fv.begin(), fv.end());
      }
      if (inner.empty()) return f;
      std::string y = x;
      if (incoming.count(x)) {
        std::set<std::string> avoid = incoming;
        avoid.insert(body_free.begin(), body_free.end());
        for (const auto& [k, t] : inner) avoid.insert(k);
        y = fresh_name(x, avoid);
        inner[x] = Term::var(y);
      }
      Formula b = substitute(f.body(), inner);
      return f.kind() == Formula::Kind::Forall ? Formula::forall(y, b) : Formula::exists(y, b);
    }
  }
  return f;
}

bool eval_qf(const Formula& f, const Valuation& v) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return eval_atom(f.as_atom(), v);
    case Formula::Kind::And: return eval_qf(f.left(), v) && eval_qf(f.right(), v);
    case Formula::Kind::Or: return eval_qf(f.left(), v) || eval_qf(f.right(), v);
    case Formula::Kind::Not: return !eval_qf(f.left(), v);
    case Formula::Kind::Implies: return !eval_qf(f.left(), v) || eval_qf(f.right(), v);
    case Formula::Kind::Pred: throw Error("defined predicate '" + f.name() + "' in quantifier-free evaluation");
    default: throw Error("quantifier in quantifier-free evaluation");
  }
}

std::string to_string(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return to_string(f.as_atom());
    case Formula::Kind::Pred: {
      std::string s = f.name() + "(";
      for (std::size_t i = 0; i < f.args().size(); ++i) s += (i ? ", " : "") + to_string(f.args()[i]);
      return s + ")";
    }
    case Formula::Kind::Not: return "~" + to_string(f.left());
    case Formula::Kind::And: return "(" + to_string(f.left()) + " & " + to_string(f.right()) + ")";
    case Formula::Kind::Or: return "(" + to_string(f.left()) + " | " + to_string(f.right()) + ")";
    case Formula::Kind::Implies: return "(" + to_string(f.left()) + " -> " + to_string(f.right()) + ")";
    case Formula::Kind::Forall: return "(forall " + f.var() + ". " + to_string(f.body()) + ")";
    case Formula::Kind::Exists: return "(exists " + f.var() + ". " + to_string(f.body()) + ")";
  }
  return "";
}

namespace {

// Bound variables are compared by binding depth, free ones by name.
using Scope = std::vector<std::string>;

long depth_of(const Scope& sc, const std::string& v) {
  for (std::size_t i = sc.size(); i-- > 0;)
    if (sc[i] == v) return static_cast<long>(i);
  return -1;
}

bool alpha_terms(const Term& a, const Term& b, const Scope& sa, const Scope& sb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Zero:
    case Term::Kind::One: return true;
    case Term::Kind::Var: {
      long da = depth_of(sa, a.name()), db = depth_of(sb, b.name());
      return da == db && (da >= 0 || a.name() == b.name());
    }
    case Term::Kind::Neg: return alpha_terms(a.left(), b.left(), sa, sb);
    default: return alpha_terms(a.left(), b.left(), sa, sb) && alpha_terms(a.right(), b.right(), sa, sb);
  }
}

bool alpha_formulas(const Formula& a, const Formula& b, Scope& sa, Scope& sb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atom: {
      const auto &x = a.as_atom(), &y = b.as_atom();
      return x.rel == y.rel && alpha_terms(x.lhs, y.lhs, sa, sb) && alpha_terms(x.rhs, y.rhs, sa, sb);
    }
    case Formula::Kind::Pred: {
      if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_terms(a.args()[i], b.args()[i], sa, sb)) return false;
      return true;
    }
    case Formula::Kind::Not: return alpha_formulas(a.left(), b.left(), sa, sb);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      sa.push_back(a.var());
      sb.push_back(b.var());
      bool r = alpha_formulas(a.body(), b.body(), sa, sb);
      sa.pop_back();
      sb.pop_back();
      return r;
    }
    default: return alpha_formulas(a.left(), b.left(), sa, sb) && alpha_formulas(a.right(), b.right(), sa, sb);
  }
}

}  // namespace

bool alpha_equivalent(const Formula& a, const Formula& b) {
  if (a == b) return true;
  Scope sa, sb;
  return alpha_formulas(a, b, sa, sb);
}

}  // namespace fcs
