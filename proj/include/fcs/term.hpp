#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fcs/integer.hpp"

namespace fcs {

using Valuation = std::map<std::string, Int>;

// Immutable term tree. Subterms may be shared, so large terms built by the
// transformations are DAGs; traversals below memoize on node identity.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Zero, One, Add, Mul, Neg, Sub };

  Term();  // the constant 0

  static Term var(const std::string& name);
  static Term zero();
  static Term one();
  static Term add(const Term& a, const Term& b);
  static Term mul(const Term& a, const Term& b);
  static Term neg(const Term& a);
  static Term sub(const Term& a, const Term& b);

  // Decimal literal as a tree over 0, 1, +, * (and unary minus if negative).
  static Term numeral(const Int& n);
  // t^k by repeated squaring; both factors of a square are the same node.
  static Term power(const Term& t, unsigned k);

  Kind kind() const;
  const std::string& name() const;
  Term left() const;   // Add/Mul/Sub lhs, Neg operand
  Term right() const;  // Add/Mul/Sub rhs

  bool is_var() const { return kind() == Kind::Var; }
  bool uses_minus() const;
  bool closed() const;  // no variables
  std::size_t hash() const;
  const void* id() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 public:
  struct Node;  // implementation detail

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::set<std::string> free_vars(const Term& t);
Term substitute(const Term& t, const std::map<std::string, Term>& m);
Int eval_term(const Term& t, const Valuation& v);

// Fully parenthesized; closed subterms that are exactly a numeral's tree print
// as decimals so that parsing the output rebuilds the same tree.
std::string to_string(const Term& t);

// Builders that fold 0 and 1; used when assembling terms programmatically.
Term add_s(const Term& a, const Term& b);
Term mul_s(const Term& a, const Term& b);
// v1*v1 + ... + vk*vk
Term sum_of_squares(const std::vector<std::string>& names);

}  // namespace fcs
