#include "fcs/search.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "fcs/error.hpp"

namespace fcs::search {

namespace {

using i128 = __int128;

constexpr int kLeaf = 3;

bool to_i128(const Int& v, i128& out) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 120) return false;
  Int a = abs(v);
  Int hi = a >> 64;
  Int lo = a - (hi << 64);
  unsigned __int128 u = (static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t())) << 64) |
                        static_cast<unsigned __int128>(mpz_get_ui(lo.get_mpz_t()));
  out = sgn(v) < 0 ? -static_cast<i128>(u) : static_cast<i128>(u);
  return true;
}

Int from_i128(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Int hi(static_cast<unsigned long>(u >> 64));
  Int lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  Int r = (hi << 64) + lo;
  return neg ? Int(-r) : r;
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Interval bounds saturate instead of overflowing. A lower bound of -kSat
// stands for -infinity and an upper bound of +kSat for +infinity; any other
// saturated bound is a valid finite bound, so pruning stays sound.
constexpr i128 kSat = static_cast<i128>(1) << 125;

i128 clamp_sat(i128 v) { return v > kSat ? kSat : (v < -kSat ? -kSat : v); }

struct Ext {
  int inf;  // -1, 0, +1
  i128 v;
  int sign() const { return inf ? inf : (v > 0) - (v < 0); }
  bool operator<(const Ext& o) const { return inf != o.inf ? inf < o.inf : v < o.v; }
};

Ext from_lo(i128 v) { return v <= -kSat ? Ext{-1, 0} : Ext{0, v}; }
Ext from_hi(i128 v) { return v >= kSat ? Ext{1, 0} : Ext{0, v}; }
i128 to_bound(const Ext& e) { return e.inf ? e.inf * kSat : clamp_sat(e.v); }

Ext mul_ext(const Ext& a, const Ext& b) {
  int s = a.sign() * b.sign();
  if (s == 0) return {0, 0};
  if (a.inf || b.inf) return {s, 0};
  i128 r;
  if (__builtin_mul_overflow(a.v, b.v, &r) || r >= kSat || r <= -kSat) return {s, 0};
  return {0, r};
}

// [la, ha] * [lb, hb] from the four endpoint products.
void mul_bounds(i128 la, i128 ha, i128 lb, i128 hb, i128& lo, i128& hi) {
  Ext p[4] = {mul_ext(from_lo(la), from_lo(lb)), mul_ext(from_lo(la), from_hi(hb)), mul_ext(from_hi(ha), from_lo(lb)),
              mul_ext(from_hi(ha), from_hi(hb))};
  lo = to_bound(*std::min_element(p, p + 4));
  hi = to_bound(*std::max_element(p, p + 4));
}

enum Code : std::uint8_t { kConst, kVar, kAdd, kSub, kNeg, kMul, kSq };

struct Op {
  Code code;
  int a = -1, b = -1;
  int level = -1;
  int slot = -1;  // constant index or variable level
};

class Engine {
 public:
  Engine(const Problem& p, const Int& bound, Stats* stats) : p_(p), stats_(stats) {
    if (!to_i128(bound, bound_) || bound_ > (static_cast<i128>(1) << 62) || bound_ < 0)
      throw Error("search bound out of range");
    n_ = static_cast<int>(p.vars.size());
    for (int i = 0; i < n_; ++i) {
      if (!level_of_.emplace(p.vars[i], i).second) throw Error("duplicate search variable '" + p.vars[i] + "'");
      if (p.fixed.count(p.vars[i])) throw Error("variable '" + p.vars[i] + "' is both fixed and searched");
    }
    for (const auto& c : p.constraints) roots_.push_back(compile(c.expr));
    std::size_t m = ops_.size();
    lo_.assign(m, 0);
    hi_.assign(m, 0);
    iok_.assign(m, 0);
    cr_.assign(m, 0);
    cg_.assign(m, 1);
    vals_.assign(n_, 0);
    from_level_.resize(n_ + 1);
    cons_from_.resize(n_ + 1);
    for (int L = 0; L <= n_; ++L) {
      for (std::size_t i = 0; i < m; ++i)
        if (ops_[i].level >= L) from_level_[L].push_back(static_cast<int>(i));
      for (std::size_t c = 0; c < roots_.size(); ++c)
        if (ops_[roots_[c]].level >= L) cons_from_[L].push_back(static_cast<int>(c));
    }
    for (std::size_t i = 0; i < m; ++i)
      if (ops_[i].level < 0) eval(static_cast<int>(i));
  }

  std::optional<Valuation> run() {
    for (std::size_t c = 0; c < roots_.size(); ++c) {
      if (ops_[roots_[c]].level < 0 && !exact_holds(static_cast<int>(c), -1)) return std::nullopt;
    }
    if (n_ == 0) return accepted() ? std::optional<Valuation>(witness()) : std::nullopt;
    if (!dfs(0)) return std::nullopt;
    return witness();
  }

 private:
  int compile(const Term& t) {
    auto it = memo_.find(t.id());
    if (it != memo_.end()) return it->second;
    auto& bucket = structural_[t.hash()];
    for (const auto& [u, idx] : bucket)
      if (u == t) {
        memo_.emplace(t.id(), idx);
        return idx;
      }
    Op op;
    switch (t.kind()) {
      case Term::Kind::Zero:
      case Term::Kind::One:
        op.code = kConst;
        op.slot = add_const(t.kind() == Term::Kind::One ? 1 : 0);
        break;
      case Term::Kind::Var: {
        auto f = p_.fixed.find(t.name());
        if (f != p_.fixed.end()) {
          op.code = kConst;
          op.slot = add_const(f->second);
          break;
        }
        auto l = level_of_.find(t.name());
        if (l == level_of_.end()) throw Error("unbound variable '" + t.name() + "' in search problem");
        op.code = kVar;
        op.slot = l->second;
        op.level = l->second;
        break;
      }
      case Term::Kind::Neg:
        op.code = kNeg;
        op.a = compile(t.left());
        break;
      case Term::Kind::Add:
      case Term::Kind::Sub:
      case Term::Kind::Mul: {
        Term l = t.left(), r = t.right();
        op.a = compile(l);
        op.b = compile(r);
        if (t.kind() == Term::Kind::Mul && op.a == op.b) {
          op.code = kSq;
          op.b = -1;
        } else {
          op.code = t.kind() == Term::Kind::Add ? kAdd : t.kind() == Term::Kind::Sub ? kSub : kMul;
        }
        break;
      }
    }
    if (op.a >= 0) op.level = std::max(op.level, ops_[op.a].level);
    if (op.b >= 0) op.level = std::max(op.level, ops_[op.b].level);
    int idx = static_cast<int>(ops_.size());
    ops_.push_back(op);
    memo_.emplace(t.id(), idx);
    bucket.emplace_back(t, idx);
    return idx;
  }

  int add_const(const Int& v) {
    consts_.push_back(v);
    i128 s = 0;
    bool ok = to_i128(v, s);
    const_small_.push_back(s);
    const_ok_.push_back(ok);
    return static_cast<int>(consts_.size()) - 1;
  }

  void set_exact(int i, i128 v) {
    lo_[i] = hi_[i] = v;
    iok_[i] = 1;
    cr_[i] = v;
    cg_[i] = 0;
  }

  void set_unknown(int i) {
    iok_[i] = 0;
    cr_[i] = 0;
    cg_[i] = 1;
  }

  void normalize_cong(int i) {
    if (iok_[i] && lo_[i] == hi_[i] && lo_[i] < kSat && lo_[i] > -kSat) {
      cr_[i] = lo_[i];
      cg_[i] = 0;
      return;
    }
    if (cg_[i] == 1 || cg_[i] < 0) {
      cr_[i] = 0;
      cg_[i] = 1;
      return;
    }
    if (cg_[i] > 0) {
      i128 r = cr_[i] % cg_[i];
      if (r < 0) r += cg_[i];
      cr_[i] = r;
    }
  }

  void eval(int i) {
    const Op& op = ops_[i];
    switch (op.code) {
      case kConst:
        if (const_ok_[op.slot])
          set_exact(i, const_small_[op.slot]);
        else
          set_unknown(i);
        return;
      case kVar:
        if (op.slot < cur_ || (op.slot == cur_ && exact_cur_)) {
          set_exact(i, op.slot == cur_ ? rlo_ : vals_[op.slot]);
        } else {
          lo_[i] = op.slot == cur_ ? rlo_ : dlo_;
          hi_[i] = op.slot == cur_ ? rhi_ : dhi_;
          iok_[i] = 1;
          cr_[i] = 0;
          cg_[i] = 1;
          normalize_cong(i);
        }
        return;
      case kNeg: {
        int a = op.a;
        if (iok_[a]) {
          lo_[i] = -hi_[a];
          hi_[i] = -lo_[a];
          iok_[i] = 1;
        } else {
          iok_[i] = 0;
        }
        cr_[i] = -cr_[a];
        cg_[i] = cg_[a];
        normalize_cong(i);
        return;
      }
      case kAdd:
      case kSub: {
        int a = op.a, b = op.b;
        bool sub = op.code == kSub;
        iok_[i] = 0;
        if (iok_[a] && iok_[b]) {
          if (sub) {
            lo_[i] = lo_[a] <= -kSat || hi_[b] >= kSat ? -kSat : clamp_sat(lo_[a] - hi_[b]);
            hi_[i] = hi_[a] >= kSat || lo_[b] <= -kSat ? kSat : clamp_sat(hi_[a] - lo_[b]);
          } else {
            lo_[i] = lo_[a] <= -kSat || lo_[b] <= -kSat ? -kSat : clamp_sat(lo_[a] + lo_[b]);
            hi_[i] = hi_[a] >= kSat || hi_[b] >= kSat ? kSat : clamp_sat(hi_[a] + hi_[b]);
          }
          iok_[i] = 1;
        }
        i128 g = (cg_[a] == 0) ? cg_[b] : (cg_[b] == 0 ? cg_[a] : gcd128(cg_[a], cg_[b]));
        i128 r;
        bool ok = sub ? !__builtin_sub_overflow(cr_[a], cr_[b], &r) : !__builtin_add_overflow(cr_[a], cr_[b], &r);
        if (!ok || cg_[a] == 1 || cg_[b] == 1) {
          cr_[i] = 0;
          cg_[i] = 1;
        } else {
          cr_[i] = r;
          cg_[i] = g;
        }
        normalize_cong(i);
        return;
      }
      case kMul: {
        int a = op.a, b = op.b;
        iok_[i] = 0;
        if (iok_[a] && iok_[b]) {
          mul_bounds(lo_[a], hi_[a], lo_[b], hi_[b], lo_[i], hi_[i]);
          iok_[i] = 1;
        }
        mul_cong(i, cr_[a], cg_[a], cr_[b], cg_[b]);
        normalize_cong(i);
        return;
      }
      case kSq: {
        int a = op.a;
        iok_[i] = 0;
        if (iok_[a]) {
          if (lo_[a] >= 0 || hi_[a] <= 0) {
            mul_bounds(lo_[a], hi_[a], lo_[a], hi_[a], lo_[i], hi_[i]);
          } else {
            i128 l1, h1, l2, h2;
            mul_bounds(lo_[a], lo_[a], lo_[a], lo_[a], l1, h1);
            mul_bounds(hi_[a], hi_[a], hi_[a], hi_[a], l2, h2);
            lo_[i] = 0;
            hi_[i] = std::max(h1, h2);
          }
          iok_[i] = 1;
        }
        i128 r = cr_[a], g = cg_[a];
        if (g == 1) {
          cr_[i] = 0;
          cg_[i] = 1;
        } else if (g == 0) {
          i128 v;
          if (__builtin_mul_overflow(r, r, &v)) {
            cr_[i] = 0;
            cg_[i] = 1;
          } else {
            cr_[i] = v;
            cg_[i] = 0;
          }
        } else {
          i128 t1, t2, v;
          if (__builtin_mul_overflow(r, g, &t1) || __builtin_add_overflow(t1, t1, &t1) ||
              __builtin_mul_overflow(g, g, &t2) || __builtin_mul_overflow(r, r, &v)) {
            cr_[i] = 0;
            cg_[i] = 1;
          } else {
            cg_[i] = gcd128(t1, t2);
            cr_[i] = v;
          }
        }
        normalize_cong(i);
        return;
      }
    }
  }

  // (ra + ga*Z)(rb + gb*Z) lies in ra*rb + gcd(ra*gb, rb*ga, ga*gb)*Z. An unknown
  // factor is 0 + 1*Z, so an exact factor c still makes the product 0 mod c.
  void mul_cong(int i, i128 ra, i128 ga, i128 rb, i128 gb) {
    i128 t1, t2, t3, r;
    if (__builtin_mul_overflow(ra, gb, &t1) || __builtin_mul_overflow(rb, ga, &t2) ||
        __builtin_mul_overflow(ga, gb, &t3) || __builtin_mul_overflow(ra, rb, &r)) {
      cr_[i] = 0;
      cg_[i] = 1;
      return;
    }
    cg_[i] = gcd128(gcd128(t1, t2), t3);
    cr_[i] = r;
  }

  void recompute(int L) {
    for (int i : from_level_[L]) eval(i);
  }

  bool interval_ok(int c) const {
    int i = roots_[c];
    const auto kind = p_.constraints[c].kind;
    if (iok_[i]) {
      if (kind == Constraint::Kind::EqZero && (lo_[i] > 0 || hi_[i] < 0)) return false;
      if (kind == Constraint::Kind::Positive && hi_[i] <= 0) return false;
    }
    if (kind == Constraint::Kind::EqZero) {
      if (cg_[i] == 0) return cr_[i] == 0;
      if (cg_[i] > 1 && cr_[i] % cg_[i] != 0) return false;
    }
    return true;
  }

  // Decide a constraint whose variables are all assigned (levels <= L).
  bool exact_holds(int c, int L) {
    int i = roots_[c];
    const auto kind = p_.constraints[c].kind;
    if (iok_[i] && lo_[i] == hi_[i])
      return kind == Constraint::Kind::EqZero ? lo_[i] == 0 : lo_[i] > 0;
    Valuation v = p_.fixed;
    for (int k = 0; k <= L && k < n_; ++k) v[p_.vars[k]] = from_i128(vals_[k]);
    Int val = eval_term(p_.constraints[c].expr, v);
    return kind == Constraint::Kind::EqZero ? val == 0 : sgn(val) > 0;
  }

  bool check(int L) {
    for (int c : cons_from_[L]) {
      if (exact_cur_ && ops_[roots_[c]].level == L) {
        if (!exact_holds(c, L)) return false;
      } else if (!interval_ok(c)) {
        return false;
      }
    }
    return true;
  }

  bool try_value(int L, i128 v) {
    if (stats_) ++stats_->nodes;
    cur_ = L;
    exact_cur_ = true;
    rlo_ = rhi_ = v;
    vals_[L] = v;
    recompute(L);
    return check(L);
  }

  bool range_ok(int L, i128 lo, i128 hi) {
    if (stats_) ++stats_->nodes;
    cur_ = L;
    exact_cur_ = (lo == hi);
    rlo_ = lo;
    rhi_ = hi;
    if (exact_cur_) vals_[L] = lo;
    recompute(L);
    return check(L);
  }

  bool descend(int L) { return L + 1 == n_ ? accepted() : dfs(L + 1); }

  bool accepted() const {
    if (!p_.accept) return true;
    Valuation v = p_.fixed;
    for (int k = 0; k < n_; ++k) v[p_.vars[k]] = from_i128(vals_[k]);
    return p_.accept(v);
  }

  bool dfs(int L) {
    if (p_.domain == Domain::Int) return scan_int(L, 0, bound_, 3);
    return scan_nat(L, 0, bound_);
  }

  // Magnitudes in [lo, hi]; bit 1 = positive side (with 0), bit 2 = negative side.
  bool scan_int(int L, i128 lo, i128 hi, int signs) {
    if (hi - lo < kLeaf) {
      for (i128 m = lo; m <= hi; ++m) {
        if ((signs & 1) && try_value(L, m) && descend(L)) return true;
        if (m != 0 && (signs & 2) && try_value(L, -m) && descend(L)) return true;
      }
      return false;
    }
    int ok = 0;
    if ((signs & 1) && range_ok(L, lo, hi)) ok |= 1;
    if ((signs & 2) && range_ok(L, -hi, lo == 0 ? -1 : -lo)) ok |= 2;
    if (!ok) return false;
    i128 mid = lo + (hi - lo) / 2;
    return scan_int(L, lo, mid, ok) || scan_int(L, mid + 1, hi, ok);
  }

  bool scan_nat(int L, i128 lo, i128 hi) {
    if (hi - lo < kLeaf) {
      for (i128 v = lo; v <= hi; ++v)
        if (try_value(L, v) && descend(L)) return true;
      return false;
    }
    if (!range_ok(L, lo, hi)) return false;
    i128 mid = lo + (hi - lo) / 2;
    return scan_nat(L, lo, mid) || scan_nat(L, mid + 1, hi);
  }

  Valuation witness() const {
    Valuation v;
    for (int k = 0; k < n_; ++k) v[p_.vars[k]] = from_i128(vals_[k]);
    return v;
  }

 public:
  void set_box() {
    dlo_ = p_.domain == Domain::Int ? -bound_ : 0;
    dhi_ = bound_;
  }

 private:
  const Problem& p_;
  Stats* stats_;
  i128 bound_ = 0;
  int n_ = 0;
  std::unordered_map<std::string, int> level_of_;
  std::vector<Op> ops_;
  std::vector<Int> consts_;
  std::vector<i128> const_small_;
  std::vector<bool> const_ok_;
  std::vector<int> roots_;
  std::unordered_map<const void*, int> memo_;
  std::unordered_map<std::size_t, std::vector<std::pair<Term, int>>> structural_;
  std::vector<i128> lo_, hi_, cr_, cg_;
  std::vector<std::uint8_t> iok_;
  std::vector<i128> vals_;
  std::vector<std::vector<int>> from_level_, cons_from_;
  int cur_ = -1;
  bool exact_cur_ = false;
  i128 rlo_ = 0, rhi_ = 0, dlo_ = 0, dhi_ = 0;
};

}  // namespace

std::optional<Valuation> first_solution(const Problem& p, const Int& bound, Stats* stats) {
  if (sgn(bound) < 0) return std::nullopt;
  Engine e(p, bound, stats);
  e.set_box();
  return e.run();
}

namespace {

Int max_abs(const Problem& p, const Valuation& v) {
  Int m = 0;
  for (const auto& x : p.vars) m = std::max(m, Int(abs(v.at(x))));
  return m;
}

}  // namespace

std::optional<Valuation> first_solution_graded(const Problem& p, const Int& bound, const Int& min_shell, Stats* stats) {
  if (min_shell > bound) return std::nullopt;
  auto sol = first_solution(p, bound, stats);
  if (!sol) return std::nullopt;
  Int hi = std::max(max_abs(p, *sol), min_shell);
  Int lo = min_shell;
  std::optional<Valuation> best = sol;
  Int best_at = hi;
  while (lo < hi) {
    Int mid = (lo + hi) / 2;
    auto s = first_solution(p, mid, stats);
    if (s) {
      hi = mid;
      best = s;
      best_at = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (best_at != lo) best = first_solution(p, lo, stats);
  return best;
}

bool satisfies(const Problem& p, const Valuation& v) {
  Valuation all = p.fixed;
  for (const auto& [k, x] : v) all[k] = x;
  for (const auto& c : p.constraints) {
    Int val = eval_term(c.expr, all);
    if (c.kind == Constraint::Kind::EqZero ? val != 0 : sgn(val) <= 0) return false;
  }
  return !p.accept || p.accept(all);
}

std::optional<Valuation> brute_force(const Problem& p, const Int& bound) {
  std::vector<Int> order;
  if (p.domain == Domain::Int) {
    order.push_back(0);
    for (Int m = 1; m <= bound; ++m) {
      order.push_back(m);
      order.push_back(-m);
    }
  } else {
    for (Int m = 0; m <= bound; ++m) order.push_back(m);
  }
  Valuation v;
  std::size_t n = p.vars.size();
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    for (std::size_t k = 0; k < n; ++k) v[p.vars[k]] = order[idx[k]];
    if (satisfies(p, v)) return v;
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++idx[k] < order.size()) break;
      idx[k] = 0;
      if (k == 0) return std::nullopt;
    }
    if (n == 0) return std::nullopt;
  }
}

std::pair<Int, Int> term_range(const Term& t, const Int& bound, Domain domain, const Valuation& fixed) {
  std::unordered_map<const void*, std::pair<Int, Int>> memo;
  const Int dlo = domain == Domain::Int ? Int(-bound) : Int(0);
  std::function<std::pair<Int, Int>(const Term&)> go = [&](const Term& u) -> std::pair<Int, Int> {
    auto it = memo.find(u.id());
    if (it != memo.end()) return it->second;
    std::pair<Int, Int> r;
    switch (u.kind()) {
      case Term::Kind::Var: {
        auto f = fixed.find(u.name());
        r = f != fixed.end() ? std::make_pair(f->second, f->second) : std::make_pair(dlo, bound);
        break;
      }
      case Term::Kind::Zero: r = {0, 0}; break;
      case Term::Kind::One: r = {1, 1}; break;
      case Term::Kind::Neg: {
        auto a = go(u.left());
        r = {-a.second, -a.first};
        break;
      }
      case Term::Kind::Add: {
        auto a = go(u.left()), b = go(u.right());
        r = {a.first + b.first, a.second + b.second};
        break;
      }
      case Term::Kind::Sub: {
        auto a = go(u.left()), b = go(u.right());
        r = {a.first - b.second, a.second - b.first};
        break;
      }
      case Term::Kind::Mul: {
        auto a = go(u.left());
        if (u.left() == u.right()) {
          Int l2 = a.first * a.first, h2 = a.second * a.second;
          if (sgn(a.first) >= 0) r = {l2, h2};
          else if (sgn(a.second) <= 0) r = {h2, l2};
          else r = {0, std::max(l2, h2)};
          break;
        }
        auto b = go(u.right());
        Int c[4] = {a.first * b.first, a.first * b.second, a.second * b.first, a.second * b.second};
        r = {std::min({c[0], c[1], c[2], c[3]}), std::max({c[0], c[1], c[2], c[3]})};
        break;
      }
    }
    memo.emplace(u.id(), r);
    return r;
  };
  return go(t);
}

}  // namespace fcs::search
