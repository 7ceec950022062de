#include <algorithm>
#include <map>
#include <optional>

#include "fcs/dioph.hpp"
#include "fcs/error.hpp"

namespace fcs::dioph {

namespace {

struct Range {
  std::optional<Int> lo, hi;  // inclusive
};

std::map<std::string, Range> box_ranges(const Polynomial& f, const std::vector<Atom>& box, search::Domain domain) {
  std::map<std::string, Range> r;
  for (const auto& v : f.variables()) r[v];
  for (const auto& a : box) {
    if (a.rel != Atom::Rel::Lt) throw Error("box atom is not a strict inequality: " + to_string(a));
    if (a.lhs.is_var() && a.rhs.closed()) {
      Int c = eval_term(a.rhs, {}) - 1;
      auto& hi = r[a.lhs.name()].hi;
      hi = hi ? std::min(*hi, c) : c;
    } else if (a.rhs.is_var() && a.lhs.closed()) {
      Int c = eval_term(a.lhs, {}) + 1;
      auto& lo = r[a.rhs.name()].lo;
      lo = lo ? std::max(*lo, c) : c;
    } else {
      throw Error("box atom must be x < c or c < x: " + to_string(a));
    }
  }
  if (domain == search::Domain::Nat)
    for (auto& [v, rg] : r) rg.lo = rg.lo ? std::max(*rg.lo, Int(0)) : Int(0);
  for (const auto& [v, rg] : r)
    if (rg.lo && rg.hi && *rg.lo > *rg.hi) throw Error("box is empty in variable '" + v + "'");
  return r;
}

bool in_box(const Valuation& p, const std::vector<Atom>& box, search::Domain domain) {
  for (const auto& a : box)
    if (!eval_atom(a, p)) return false;
  if (domain == search::Domain::Nat)
    for (const auto& [v, x] : p)
      if (sgn(x) < 0) return false;
  return true;
}

class Refuter {
 public:
  Refuter(const Polynomial& f, std::uint64_t budget) : f_(f), budget_(budget) {}

  Int eval(const Valuation& v) {
    if (++evals_ > budget_) throw Error("refute_prime_box: budget of " + std::to_string(budget_) + " evaluations exhausted");
    return f_.eval(v);
  }

  std::uint64_t evals() const { return evals_; }

 private:
  const Polynomial& f_;
  std::uint64_t budget_;
  std::uint64_t evals_ = 0;
};

// A value at a box point that is <= 1 or has a proper factor below 10^6
// refutes directly; otherwise nullopt and the value serves as a modulus.
std::optional<Refutation> direct(const Valuation& point, const Int& value) {
  Refutation r;
  r.point = point;
  r.value = value;
  if (value <= 1) {
    r.kind = Refutation::Kind::NonpositiveOrUnitValue;
    return r;
  }
  auto f = small_factor(value, Int(1000000));
  if (!f || *f == value) return std::nullopt;
  r.kind = Refutation::Kind::CompositeValue;
  r.factor = *f;
  return r;
}

// The restriction of f to the axis line through d in direction `dir` is non-constant.
bool moves_along(const Polynomial& f, const Valuation& d, const std::string& dir) {
  Polynomial g = f;
  for (const auto& [v, x] : d)
    if (v != dir) g = g.compose(v, Polynomial(x));
  return !g.is_constant();
}

}  // namespace

Refutation refute_prime_box(const Polynomial& f, const std::vector<Atom>& box, const RefuteOptions& opts) {
  if (f.is_constant()) throw Error("refute_prime_box: f is constant; the argument needs a non-constant polynomial");
  auto ranges = box_ranges(f, box, opts.domain);
  Refuter ev(f, opts.budget);

  // Over Z, a variable bounded only above is flipped (y = -x) so every open
  // direction runs upwards from a lower bound. Over N every variable already
  // has lower bound 0 and nothing is flipped.
  std::map<std::string, bool> flipped;
  std::vector<std::string> finite, open;
  for (auto& [v, rg] : ranges) {
    flipped[v] = false;
    if (rg.lo && rg.hi) {
      finite.push_back(v);
    } else {
      if (!rg.lo && rg.hi) {
        flipped[v] = true;
        rg.lo = -*rg.hi;
        rg.hi.reset();
      } else if (!rg.lo) {
        rg.lo = 0;  // unconstrained: start anywhere
      }
      open.push_back(v);
    }
  }
  auto actual = [&](const std::string& v, const Int& y) -> Int { return flipped[v] ? Int(-y) : y; };

  // Enumerate admissible constants for the finitely constrained variables.
  std::vector<Int> fixed(finite.size());
  for (std::size_t i = 0; i < finite.size(); ++i) fixed[i] = *ranges[finite[i]].lo;
  auto next_combo = [&]() {
    for (std::size_t i = finite.size(); i-- > 0;) {
      if (fixed[i] < *ranges[finite[i]].hi) {
        ++fixed[i];
        return true;
      }
      fixed[i] = *ranges[finite[i]].lo;
    }
    return false;
  };

  for (;;) {
    Valuation base;
    for (std::size_t i = 0; i < finite.size(); ++i) base[finite[i]] = fixed[i];
    if (open.empty()) {
      if (auto r = direct(base, ev.eval(base))) {
        r->evaluations = ev.evals();
        if (!r->verify(f, box, opts.domain)) throw Error("internal: refutation failed self-check");
        return *r;
      }
    } else {
      // Base points d: open coordinates at lo + k for k = 0, 1, 2, ... (same k for all).
      for (Int k = 0;; ++k) {
        Valuation d = base;
        for (const auto& v : open) d[v] = actual(v, *ranges[v].lo + k);
        Int p = ev.eval(d);
        if (auto r = direct(d, p)) {
          r->evaluations = ev.evals();
          if (!r->verify(f, box, opts.domain)) throw Error("internal: refutation failed self-check");
          return *r;
        }
        std::optional<std::string> dir;
        for (const auto& v : open)
          if (moves_along(f, d, v)) {
            dir = v;
            break;
          }
        if (!dir) continue;
        // f(d + p*z*e) = f(d) = 0 mod p; a value other than p is not prime.
        Refutation forced;
        forced.kind = Refutation::Kind::ForcedConstant;
        forced.prime = p;
        forced.base = d;
        forced.direction = *dir;
        unsigned deg = f.degree_in(*dir);
        for (Int z = 1;; ++z) {
          Valuation q = d;
          q[*dir] = d[*dir] + actual(*dir, p * z);
          Int v = ev.eval(q);
          if (v != p) {
            // v is a multiple of p other than p itself: either v <= 1 or p is a proper factor.
            Refutation r;
            r.point = q;
            r.value = v;
            r.kind = v <= 1 ? Refutation::Kind::NonpositiveOrUnitValue : Refutation::Kind::CompositeValue;
            if (v > 1) r.factor = p;
            r.evaluations = ev.evals();
            if (!r.verify(f, box, opts.domain)) throw Error("internal: refutation failed self-check");
            return r;
          }
          forced.congruence_witnesses.emplace_back(z, v);
          if (forced.congruence_witnesses.size() >= deg + 1) {
            forced.evaluations = ev.evals();
            if (!forced.verify(f, box, opts.domain)) throw Error("internal: refutation failed self-check");
            return forced;
          }
        }
      }
    }
    if (!next_combo()) break;
  }
  throw Error("refute_prime_box: no value on the finite box refutes; its image may consist of primes");
}

bool Refutation::verify(const Polynomial& f, const std::vector<Atom>& box, search::Domain domain) const {
  switch (kind) {
    case Kind::CompositeValue:
      return in_box(point, box, domain) && f.eval(point) == value && sgn(factor) > 0 && factor > 1 &&
             factor < value && value % factor == 0;
    case Kind::NonpositiveOrUnitValue:
      return in_box(point, box, domain) && f.eval(point) == value && value <= 1;
    case Kind::ForcedConstant: {
      if (!in_box(base, box, domain) || f.eval(base) != prime) return false;
      if (mpz_probab_prime_p(prime.get_mpz_t(), 30) == 0) return false;
      if (congruence_witnesses.size() < f.degree_in(direction) + 1) return false;
      // The values along the line, taken with sign of the open direction.
      for (const auto& [z, v] : congruence_witnesses) {
        bool ok = false;
        for (int s : {1, -1}) {
          Valuation q = base;
          q[direction] = base.at(direction) + s * prime * z;
          if (in_box(q, box, domain) && f.eval(q) == v && v == prime) ok = true;
        }
        if (!ok) return false;
      }
      return true;
    }
  }
  return false;
}

std::string to_string(const Refutation& r) {
  auto point = [](const Valuation& v) {
    std::string s;
    for (const auto& [k, x] : v) s += (s.empty() ? "" : ", ") + k + "=" + fcs::to_string(x);
    return s;
  };
  switch (r.kind) {
    case Refutation::Kind::CompositeValue:
      return "composite_value at (" + point(r.point) + "): f = " + fcs::to_string(r.value) + " = " +
             fcs::to_string(r.factor) + " * " + fcs::to_string(Int(r.value / r.factor));
    case Refutation::Kind::NonpositiveOrUnitValue:
      return "nonpositive_or_unit_value at (" + point(r.point) + "): f = " + fcs::to_string(r.value);
    case Refutation::Kind::ForcedConstant:
      return "forced_constant p = " + fcs::to_string(r.prime) + " at base (" + point(r.base) + ") along " +
             r.direction + " with " + std::to_string(r.congruence_witnesses.size()) + " witnesses";
  }
  return "";
}

}  // namespace fcs::dioph
