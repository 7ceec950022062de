#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fcs/term.hpp"

namespace fcs {

struct Atom {
  enum class Rel : std::uint8_t { Eq, Lt };
  Rel rel;
  Term lhs;
  Term rhs;

  static Atom eq(const Term& a, const Term& b) { return {Rel::Eq, a, b}; }
  static Atom lt(const Term& a, const Term& b) { return {Rel::Lt, a, b}; }

  friend bool operator==(const Atom& x, const Atom& y) {
    return x.rel == y.rel && x.lhs == y.lhs && x.rhs == y.rhs;
  }
};

std::string to_string(const Atom& a);
std::set<std::string> free_vars(const Atom& a);
Atom substitute(const Atom& a, const std::map<std::string, Term>& m);
bool eval_atom(const Atom& a, const Valuation& v);

class Formula {
 public:
  enum class Kind : std::uint8_t { Atom, And, Or, Not, Implies, Forall, Exists, Pred };

  static Formula atom(const fcs::Atom& a);
  static Formula eq(const Term& a, const Term& b) { return atom(Atom::eq(a, b)); }
  static Formula lt(const Term& a, const Term& b) { return atom(Atom::lt(a, b)); }
  static Formula conj(const Formula& a, const Formula& b);
  static Formula disj(const Formula& a, const Formula& b);
  static Formula negation(const Formula& a);
  static Formula implies(const Formula& a, const Formula& b);
  static Formula forall(const std::string& var, const Formula& body);
  static Formula exists(const std::string& var, const Formula& body);
  static Formula pred(const std::string& name, std::vector<Term> args);

  // Right-nested conjunction; the list must be nonempty.
  static Formula conj_list(const std::vector<Formula>& parts);

  Kind kind() const;
  const fcs::Atom& as_atom() const;
  const Formula& left() const;  // binary lhs, Not operand, quantifier body
  const Formula& right() const;
  const Formula& body() const { return left(); }
  const std::string& var() const;    // quantifier variable
  const std::string& name() const;   // predicate name
  const std::vector<Term>& args() const;

  bool is_binary() const;
  bool is_quantifier() const { return kind() == Kind::Forall || kind() == Kind::Exists; }
  bool mentions_predicate() const;
  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 public:
  struct Node;  // implementation detail

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::set<std::string> free_vars(const Formula& f);
// Every variable name occurring anywhere, bound or free.
std::set<std::string> all_vars(const Formula& f);
std::set<std::string> predicates_used(const Formula& f);

// Equality up to renaming of bound variables.
bool alpha_equivalent(const Formula& a, const Formula& b);

// Capture-avoiding simultaneous substitution.
Formula substitute(const Formula& f, const std::map<std::string, Term>& m);

bool eval_qf(const Formula& f, const Valuation& v);
std::string to_string(const Formula& f);

// base, base', base'', ... first one not in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

}  // namespace fcs
