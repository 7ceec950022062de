#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fcs/integer.hpp"
#include "fcs/signature.hpp"
#include "fcs/term.hpp"

namespace fcs {

// Variable -> exponent pairs sorted by name, exponents >= 1; empty = constant.
using Monomial = std::vector<std::pair<std::string, unsigned>>;

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Int& c);  // NOLINT: implicit constant
  static Polynomial var(const std::string& name);
  static Polynomial monomial(const Monomial& m, const Int& c);

  const std::map<Monomial, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Int constant_term() const;
  unsigned degree() const;
  unsigned degree_in(const std::string& v) const;
  std::set<std::string> variables() const;
  bool nonnegative_coefficients() const;

  Int eval(const Valuation& v) const;
  // Replace a variable by a polynomial.
  Polynomial compose(const std::string& v, const Polynomial& p) const;
  Polynomial pow(unsigned k) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void add_term(const Monomial& m, const Int& c);
  std::map<Monomial, Int> terms_;
};

Polynomial term_to_polynomial(const Term& t);

// Sum of monomials c*x1^e1*...; minus appears only for negative coefficients,
// so a nonnegative polynomial yields a minus-free term.
Term polynomial_to_term(const Polynomial& p);

// Human-readable form, e.g. "x^2 - 3*x + 2".
std::string to_string(const Polynomial& p);

}  // namespace fcs
