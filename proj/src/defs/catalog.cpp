#include "fcs/catalog.hpp"

#include <cmath>
#include <map>

#include "catalog_text.hpp"
#include "fcs/error.hpp"
#include "fcs/parser.hpp"

namespace fcs {

namespace {

Int root_floor(const Int& a, unsigned k) {
  Int r;
  mpz_root(r.get_mpz_t(), Int(abs(a)).get_mpz_t(), k);
  return r;
}

struct BoundRule {
  std::string formula;
  std::function<Int(const std::vector<Int>&)> fn;
  std::string description;
};

std::map<std::string, BoundRule> bound_rules() {
  auto a0 = [](const std::vector<Int>& t) -> Int { return Int(abs(t.at(0))); };
  auto root = [](unsigned k) {
    return [k](const std::vector<Int>& t) -> Int { return root_floor(t.at(0), k); };
  };
  auto half_root = [](const std::vector<Int>& t) -> Int { return isqrt(Int(abs(t.at(0)) / 2)) + 1; };
  std::map<std::string, BoundRule> r;
  r["even"] = {"|a|", a0, "even integers"};
  r["odd"] = {"|a|", a0, "odd integers"};
  r["composite"] = {"isqrt(|a|/2) + 1", half_root,
                    "products of two integers >= 2; each factor minus 2 is a sum of four squares"};
  r["perfect_square"] = {"isqrt(|a|)", root(2), "perfect squares"};
  r["cube"] = {"floor(cbrt(|a|))", root(3), "perfect cubes"};
  for (unsigned k = 1; k <= 5; ++k)
    r["nth_power_" + std::to_string(k)] = {"floor(|a|^(1/" + std::to_string(k) + "))", root(k),
                                           std::to_string(k) + "-th powers"};
  r["m_ary_3"] = {"max(a, m)", [](const std::vector<Int>& t) -> Int { return std::max(t.at(0), t.at(1)); },
                  "pairs (a, m) with a written by exactly three base-m digits"};
  r["even_nat"] = {"a", a0, "even naturals"};
  r["odd_nat"] = {"a", a0, "odd naturals"};
  r["composite_nat"] = {"a/2", [](const std::vector<Int>& t) -> Int { return Int(t.at(0) / 2); }, "composite naturals"};
  r["square_nat"] = {"isqrt(a)", root(2), "squares of naturals"};
  r["cube_nat"] = {"floor(cbrt(a))", root(3), "cubes of naturals"};
  return r;
}

std::vector<CatalogEntry> build_catalog() {
  auto rules = bound_rules();
  std::vector<CatalogEntry> out;
  for (auto& d : parse_definition_file(detail::kCatalogText)) {
    auto it = rules.find(d.name);
    if (it == rules.end()) throw Error("catalog entry '" + d.name + "' has no documented bound");
    CatalogEntry e;
    e.def = d;
    e.description = it->second.description;
    e.sufficient_bound = it->second.fn;
    e.bound_formula = it->second.formula;
    e.instance = [d](const std::vector<Int>&) { return d; };
    out.push_back(std::move(e));
  }

  CatalogEntry perfect;
  perfect.def = perfect_number_instance(6);
  perfect.def.name = "perfect_number";
  perfect.description = "perfect numbers, one instance per candidate n";
  perfect.sufficient_bound = [](const std::vector<Int>& t) -> Int { return std::max(Int(abs(t.at(0))), divisor_sum(t.at(0))); };
  perfect.bound_formula = "max(|a|, sigma(a))";
  perfect.instance = [](const std::vector<Int>& t) {
    FcsDefinition d = perfect_number_instance(t.at(0));
    d.name = "perfect_number";
    return d;
  };
  out.push_back(std::move(perfect));

  CatalogEntry jones;
  jones.def.name = "jones_prime";
  jones.def.arity = 1;
  jones.def.signature = Signature::Lminus_nat;
  jones.def.bound_vars = jones_variables();
  jones.def.out_terms = {Term::add(Term::var("k"), Term::numeral(2))};
  Polynomial pos, neg;
  for (const auto& [m, c] : jones_polynomial().terms())
    (sgn(c) > 0 ? pos : neg) += Polynomial::monomial(m, abs(c));
  jones.def.atoms = {Atom::lt(polynomial_to_term(neg), polynomial_to_term(pos))};
  jones.description = "primes as k + 2 where the Jones polynomial is positive (atom P2 < P1)";
  jones.sufficient_bound = [](const std::vector<Int>&) -> Int { throw Error("jones_prime has no practical witness bound"); };
  jones.bound_formula = "none (witnesses are astronomically large)";
  jones.witness_search = false;
  out.push_back(std::move(jones));
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = build_catalog();
  return c;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.def.name == name) return e;
  throw Error("no catalog entry named '" + name + "'");
}

std::vector<FcsDefinition> catalog_definitions() {
  std::vector<FcsDefinition> out;
  for (const auto& e : catalog()) out.push_back(e.def);
  return out;
}

Int divisor_sum(const Int& N) {
  if (sgn(N) <= 0) return 0;
  Int s = 0;
  for (Int d = 1; d * d <= N; ++d) {
    if (N % d != 0) continue;
    s += d;
    if (d * d != N) s += N / d;
  }
  return s;
}

FcsDefinition perfect_number_instance(const Int& N) {
  FcsDefinition d;
  d.name = "perfect_" + to_string(N);
  if (sgn(N) < 0) d.name = "perfect_minus_" + to_string(Int(-N));
  d.arity = 1;
  d.signature = Signature::L_int;
  d.bound_vars = {"n", "s"};
  d.out_terms = {Term::var("n")};
  Term n = Term::var("n"), s = Term::var("s");
  d.atoms.push_back(Atom::eq(n, Term::numeral(N)));
  if (sgn(N) <= 0) {
    // No positive number is its own divisor sum here: 0 = 1 closes the instance.
    d.atoms.push_back(Atom::eq(Term::zero(), Term::one()));
    return d;
  }
  Term sum;
  bool first = true;
  for (Int k = 1; k <= N; ++k) {
    if (N % k != 0) continue;
    sum = first ? Term::numeral(k) : Term::add(sum, Term::numeral(k));
    first = false;
  }
  d.atoms.push_back(Atom::eq(s, sum));
  d.atoms.push_back(Atom::eq(Term::mul(Term::numeral(2), n), s));
  return d;
}

namespace {

const char* kJonesText =
    "(k+2)*(1 - (w*z+h+j-q)^2 - ((g*k+2*g+k+1)*(h+j)+h-z)^2 - (2*n+p+q+z-e)^2"
    " - (16*(k+1)^3*(k+2)*(n+1)^2+1-f^2)^2 - (e^3*(e+2)*(a+1)^2+1-o^2)^2"
    " - ((a^2-1)*y^2+1-x^2)^2 - (16*r^2*y^4*(a^2-1)+1-u^2)^2"
    " - (((a+u^2*(u^2-a))^2-1)*(n+4*d*y)^2+1-(x+c*u)^2)^2 - (n+l+v-y)^2"
    " - ((a^2-1)*l^2+1-m^2)^2 - (a*i+k+1-l-i)^2"
    " - (p+l*(a-n-1)+b*(2*a*n+2*a-n^2-2*n-2)-m)^2"
    " - (q+y*(a-p-1)+s*(2*a*p+2*a-p^2-2*p-2)-x)^2"
    " - (z+p*l*(a-p)+t*(2*a*p-p^2-1)-p*m)^2)";

}  // namespace

const std::vector<std::string>& jones_variables() {
  static const std::vector<std::string> v = [] {
    std::vector<std::string> out{"k"};
    for (char c = 'a'; c <= 'z'; ++c)
      if (c != 'k') out.push_back(std::string(1, c));
    return out;
  }();
  return v;
}

const Term& jones_term() {
  static const Term t = parse_term(kJonesText, Signature::L_int);
  return t;
}

const Polynomial& jones_polynomial() {
  static const Polynomial p = term_to_polynomial(jones_term());
  return p;
}

Int jones_value(const Valuation& v) {
  for (const auto& x : jones_variables())
    if (!v.count(x)) throw Error("jones_value: variable '" + x + "' is not assigned");
  return eval_term(jones_term(), v);
}

namespace {

// 1 + floor(-(sum_{s=1..j} (floor(j/s) - floor((j-1)/s)) - 2) / j)
Int ruiz_summand(const Int& j) {
  Int divisors = 0;
  for (Int s = 1; s <= j; ++s) divisors += floor_div(j, s) - floor_div(j - 1, s);
  return 1 + floor_div(-(divisors - 2), j);
}

}  // namespace

Int ruiz_prime_count(const Int& k) {
  Int total = 0;
  for (Int j = 2; j <= k; ++j) total += ruiz_summand(j);
  return total;
}

Int ruiz_nth_prime(unsigned n) {
  if (n == 0) throw Error("ruiz_nth_prime needs n >= 1");
  long double x = static_cast<long double>(n) * std::log(static_cast<long double>(n));
  long double fl = std::floor(x);
  if (n > 1 && (x - fl < 1e-9L || fl + 1 - x < 1e-9L)) throw Error("floor(n ln n) too close to an integer to trust");
  Int limit = 2 * (Int(static_cast<unsigned long>(fl)) + 1);
  // pi(k) is a running sum, so it is accumulated along k.
  Int result = 1, pi = 0;
  for (Int k = 1; k <= limit; ++k) {
    if (k >= 2) pi += ruiz_summand(k);
    result += 1 - floor_div(pi, Int(n));
  }
  return result;
}

}  // namespace fcs
