#include "fcs/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "fcs/error.hpp"

namespace fcs {

namespace {

Monomial mul_monomials(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(const Int& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Polynomial Polynomial::var(const std::string& name) { return monomial({{name, 1}}, 1); }

Polynomial Polynomial::monomial(const Monomial& m, const Int& c) {
  Polynomial p;
  p.add_term(m, c);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Int& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Int Polynomial::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Int(0) : it->second;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    unsigned s = 0;
    for (const auto& [v, e] : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

unsigned Polynomial::degree_in(const std::string& v) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& [x, e] : m)
      if (x == v) d = std::max(d, e);
  return d;
}

std::set<std::string> Polynomial::variables() const {
  std::set<std::string> s;
  for (const auto& [m, c] : terms_)
    for (const auto& [x, e] : m) s.insert(x);
  return s;
}

bool Polynomial::nonnegative_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return sgn(kv.second) >= 0; });
}

Int Polynomial::eval(const Valuation& v) const {
  Int total = 0;
  Int mono, pw;
  for (const auto& [m, c] : terms_) {
    mono = c;
    for (const auto& [x, e] : m) {
      auto it = v.find(x);
      if (it == v.end()) throw Error("unbound variable '" + x + "'");
      mpz_pow_ui(pw.get_mpz_t(), it->second.get_mpz_t(), e);
      mono *= pw;
    }
    total += mono;
  }
  return total;
}

Polynomial Polynomial::compose(const std::string& v, const Polynomial& p) const {
  Polynomial out;
  std::map<unsigned, Polynomial> powers;
  for (const auto& [m, c] : terms_) {
    Monomial rest;
    unsigned e = 0;
    for (const auto& ve : m) {
      if (ve.first == v)
        e = ve.second;
      else
        rest.push_back(ve);
    }
    if (e == 0) {
      out.add_term(m, c);
      continue;
    }
    auto it = powers.find(e);
    if (it == powers.end()) it = powers.emplace(e, p.pow(e)).first;
    out += monomial(rest, c) * it->second;
  }
  return out;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result(1), base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(mul_monomials(ma, mb), ca * cb);
  return out;
}

Polynomial term_to_polynomial(const Term& t) {
  std::unordered_map<const void*, Polynomial> memo;
  std::function<Polynomial(const Term&)> go = [&](const Term& u) -> Polynomial {
    switch (u.kind()) {
      case Term::Kind::Zero: return Polynomial();
      case Term::Kind::One: return Polynomial(1);
      case Term::Kind::Var: return Polynomial::var(u.name());
      default: break;
    }
    auto it = memo.find(u.id());
    if (it != memo.end()) return it->second;
    Polynomial r;
    switch (u.kind()) {
      case Term::Kind::Neg: r = -go(u.left()); break;
      case Term::Kind::Add: r = go(u.left()) + go(u.right()); break;
      case Term::Kind::Sub: r = go(u.left()) - go(u.right()); break;
      case Term::Kind::Mul: {
        if (u.left() == u.right()) {
          Polynomial h = go(u.left());
          r = h * h;
        } else {
          r = go(u.left()) * go(u.right());
        }
        break;
      }
      default: break;
    }
    memo.emplace(u.id(), r);
    return r;
  };
  return go(t);
}

namespace {

Term monomial_term(const Monomial& m, const Int& c) {
  Term acc = c == 1 && !m.empty() ? Term::one() : Term::numeral(c);
  bool first = true;
  for (const auto& [v, e] : m) {
    Term p = Term::power(Term::var(v), e);
    if (first && c == 1) {
      acc = p;
    } else {
      acc = Term::mul(acc, p);
    }
    first = false;
  }
  return acc;
}

}  // namespace

Term polynomial_to_term(const Polynomial& p) {
  Term acc;
  bool first = true;
  // Highest degree first reads naturally.
  std::vector<std::pair<Monomial, Int>> items(p.terms().begin(), p.terms().end());
  std::stable_sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
    unsigned dx = 0, dy = 0;
    for (const auto& [v, e] : x.first) dx += e;
    for (const auto& [v, e] : y.first) dy += e;
    return dx > dy;
  });
  for (const auto& [m, c] : items) {
    Term mt = monomial_term(m, abs(c));
    if (first) {
      acc = sgn(c) < 0 ? Term::neg(mt) : mt;
      first = false;
    } else {
      acc = sgn(c) < 0 ? Term::sub(acc, mt) : Term::add(acc, mt);
    }
  }
  return acc;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Monomial, Int>> items(p.terms().begin(), p.terms().end());
  std::stable_sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
    unsigned dx = 0, dy = 0;
    for (const auto& [v, e] : x.first) dx += e;
    for (const auto& [v, e] : y.first) dy += e;
    return dx > dy;
  });
  std::string s;
  bool first = true;
  for (const auto& [m, c] : items) {
    Int a = abs(c);
    if (first) {
      if (sgn(c) < 0) s += "-";
    } else {
      s += sgn(c) < 0 ? " - " : " + ";
    }
    first = false;
    std::string body;
    for (const auto& [v, e] : m) {
      if (!body.empty()) body += "*";
      body += v;
      if (e > 1) body += "^" + std::to_string(e);
    }
    if (body.empty())
      s += a.get_str();
    else if (a == 1)
      s += body;
    else
      s += a.get_str() + "*" + body;
  }
  return s;
}

}  // namespace fcs
