#include <algorithm>
#include <functional>
#include <set>

#include "fcs/error.hpp"
#include "fcs/sequent.hpp"

namespace fcs::sequent {

namespace {

using Fs = std::vector<Formula>;

bool same(const Fs& a, const Fs& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!alpha_equivalent(a[i], b[i])) return false;
  return true;
}

Fs splice(const Fs& xs, std::size_t i, const Fs& repl) {
  Fs out(xs.begin(), xs.begin() + static_cast<long>(i));
  out.insert(out.end(), repl.begin(), repl.end());
  out.insert(out.end(), xs.begin() + static_cast<long>(i) + 1, xs.end());
  return out;
}

Fs remove_at(const Fs& xs, std::size_t i) { return splice(xs, i, {}); }

std::string list_text(const Fs& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + to_string(xs[i]);
  return s;
}

std::set<std::string> free_in(const Sequent& s) {
  std::set<std::string> out;
  for (const auto* side : {&s.ant, &s.suc})
    for (const auto& f : *side) {
      auto v = free_vars(f);
      out.insert(v.begin(), v.end());
    }
  return out;
}

std::optional<std::string> symbols_ok(const Formula& f, const RuleSet& rs) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return std::nullopt;
    case Formula::Kind::Pred: {
      if (!rs.admits_predicates()) return "defined predicate '" + f.name() + "' is not admitted in LKe";
      const FcsDefinition* d = rs.find(f.name());
      if (!d) return "undeclared predicate '" + f.name() + "'";
      if (d->arity != f.args().size()) return "predicate '" + f.name() + "' applied to wrong number of arguments";
      return std::nullopt;
    }
    case Formula::Kind::Not:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return symbols_ok(f.left(), rs);
    default: {
      auto l = symbols_ok(f.left(), rs);
      return l ? l : symbols_ok(f.right(), rs);
    }
  }
}

bool is_left_rule(const std::string& r) {
  return r == "weak_l" || r == "contr_l" || r == "exch_l" || r == "and_l" || r == "or_l" || r == "not_l" ||
         r == "imp_l" || r == "all_l" || r == "ex_l" || r == "eq_l" || r == "D_L" || r == "D_L_fcs";
}

struct Local {
  const ProofNode& n;
  const RuleSet& rs;
  const Theory& th;
  const Sequent& c;

  std::optional<std::string> premises(const std::vector<Sequent>& want) const {
    if (n.premises.size() != want.size())
      return "expected " + std::to_string(want.size()) + " premise(s), found " + std::to_string(n.premises.size());
    for (std::size_t i = 0; i < want.size(); ++i)
      if (!alpha_equal(n.premises[i].conclusion, want[i]))
        return "premise " + std::to_string(i) + " should be " + to_string(want[i]) + " but is " +
               to_string(n.premises[i].conclusion);
    return std::nullopt;
  }

  std::optional<std::string> run() const {
    const std::string& r = n.rule;
    const auto& names = rule_names();
    if (std::find(names.begin(), names.end(), r) == names.end()) return "unknown rule '" + r + "'";
    if (r == "ax") {
      if (c.ant.size() != 1 || c.suc.size() != 1 || !alpha_equivalent(c.ant[0], c.suc[0]))
        return "identity axiom must have the form A → A";
      return premises({});
    }
    if (r == "refl") {
      if (!c.ant.empty() || c.suc.size() != 1 || c.suc[0].kind() != Formula::Kind::Atom ||
          c.suc[0].as_atom().rel != Atom::Rel::Eq || !(c.suc[0].as_atom().lhs == c.suc[0].as_atom().rhs))
        return "reflexivity axiom must have the form → t = t";
      return premises({});
    }
    if (r == "theory") return theory();
    if (r == "cut") return cut();

    bool left = is_left_rule(r);
    const Fs& side = left ? c.ant : c.suc;
    if (side.empty()) return std::string("no principal formula in the ") + (left ? "antecedent" : "succedent");
    std::size_t i = n.detail.index.value_or(left ? 0 : side.size() - 1);
    if (i >= side.size()) return "principal index " + std::to_string(i) + " out of range";
    const Formula& pf = side[i];

    auto with_left = [&](const Fs& repl) { return Sequent{splice(c.ant, i, repl), c.suc}; };
    auto with_right = [&](const Fs& repl) { return Sequent{c.ant, splice(c.suc, i, repl)}; };
    auto with = [&](const Fs& repl) { return left ? with_left(repl) : with_right(repl); };
    auto need = [&](Formula::Kind k, const char* what) -> std::optional<std::string> {
      if (pf.kind() != k) return "principal formula " + to_string(pf) + " is not " + what;
      return std::nullopt;
    };

    if (r == "weak_l" || r == "weak_r") return premises({with({})});
    if (r == "contr_l" || r == "contr_r") return premises({with({pf, pf})});
    if (r == "exch_l" || r == "exch_r") {
      if (i + 1 >= side.size()) return "exchange index out of range";
      Fs sw = side;
      std::swap(sw[i], sw[i + 1]);
      return premises({left ? Sequent{sw, c.suc} : Sequent{c.ant, sw}});
    }
    if (r == "and_l") {
      if (auto e = need(Formula::Kind::And, "a conjunction")) return e;
      return premises({with_left({pf.left(), pf.right()})});
    }
    if (r == "and_r") {
      if (auto e = need(Formula::Kind::And, "a conjunction")) return e;
      return premises({with_right({pf.left()}), with_right({pf.right()})});
    }
    if (r == "or_l") {
      if (auto e = need(Formula::Kind::Or, "a disjunction")) return e;
      return premises({with_left({pf.left()}), with_left({pf.right()})});
    }
    if (r == "or_r") {
      if (auto e = need(Formula::Kind::Or, "a disjunction")) return e;
      return premises({with_right({pf.left(), pf.right()})});
    }
    if (r == "not_l") {
      if (auto e = need(Formula::Kind::Not, "a negation")) return e;
      Sequent s{remove_at(c.ant, i), c.suc};
      s.suc.push_back(pf.left());
      return premises({s});
    }
    if (r == "not_r") {
      if (auto e = need(Formula::Kind::Not, "a negation")) return e;
      Sequent s{c.ant, remove_at(c.suc, i)};
      s.ant.insert(s.ant.begin(), pf.left());
      return premises({s});
    }
    if (r == "imp_l") {
      if (auto e = need(Formula::Kind::Implies, "an implication")) return e;
      Sequent s0{remove_at(c.ant, i), c.suc};
      s0.suc.push_back(pf.left());
      return premises({s0, with_left({pf.right()})});
    }
    if (r == "imp_r") {
      if (auto e = need(Formula::Kind::Implies, "an implication")) return e;
      Sequent s = with_right({pf.right()});
      s.ant.insert(s.ant.begin(), pf.left());
      return premises({s});
    }
    if (r == "all_l" || r == "ex_r") {
      if (auto e = need(r == "all_l" ? Formula::Kind::Forall : Formula::Kind::Exists, "suitably quantified")) return e;
      if (!n.detail.term) return "missing instance term";
      return premises({with({substitute(pf.body(), {{pf.var(), *n.detail.term}})})});
    }
    if (r == "all_r" || r == "ex_l") {
      if (auto e = need(r == "all_r" ? Formula::Kind::Forall : Formula::Kind::Exists, "suitably quantified")) return e;
      if (!n.detail.eigenvariable) return "missing eigenvariable";
      const std::string& a = *n.detail.eigenvariable;
      if (free_in(c).count(a)) return "eigenvariable '" + a + "' occurs free in the conclusion";
      return premises({with({substitute(pf.body(), {{pf.var(), Term::var(a)}})})});
    }
    if (r == "eq_l" || r == "eq_r") return equality(left, i);
    if (r == "D_L" || r == "D_R") {
      if (!rs.admits_unfolding()) return "rule " + r + " is not admitted in " + calculus_name(rs.calculus);
      if (auto e = need(Formula::Kind::Pred, "a defined predicate")) return e;
      const FcsDefinition* d = rs.find(pf.name());
      return premises({with({definition_formula(*d, pf.args())})});
    }
    if (r == "D_L_fcs") {
      if (!rs.admits_fcs()) return "rule D_L_fcs is not admitted in " + calculus_name(rs.calculus);
      if (auto e = need(Formula::Kind::Pred, "a defined predicate")) return e;
      const FcsDefinition* d = rs.find(pf.name());
      const auto& zs = n.detail.eigenvariables;
      if (zs.size() != d->bound_vars.size())
        return "expected " + std::to_string(d->bound_vars.size()) + " eigenvariable(s)";
      auto fv = free_in(c);
      std::vector<Term> ws;
      for (std::size_t k = 0; k < zs.size(); ++k) {
        if (fv.count(zs[k])) return "eigenvariable '" + zs[k] + "' occurs free in the conclusion";
        if (std::find(zs.begin(), zs.begin() + static_cast<long>(k), zs[k]) != zs.begin() + static_cast<long>(k))
          return "eigenvariable '" + zs[k] + "' repeated";
        ws.push_back(Term::var(zs[k]));
      }
      return premises({with_left(definition_conjuncts(*d, pf.args(), ws))});
    }
    if (r == "D_R_fcs") {
      if (!rs.admits_fcs()) return "rule D_R_fcs is not admitted in " + calculus_name(rs.calculus);
      if (auto e = need(Formula::Kind::Pred, "a defined predicate")) return e;
      const FcsDefinition* d = rs.find(pf.name());
      const auto& us = n.detail.terms;
      if (us.size() != d->bound_vars.size()) return "expected " + std::to_string(d->bound_vars.size()) + " term(s)";
      std::map<std::string, Term> m;
      for (std::size_t k = 0; k < us.size(); ++k) m.emplace(d->bound_vars[k], us[k]);
      for (std::size_t k = 0; k < d->out_terms.size(); ++k)
        if (!(substitute(d->out_terms[k], m) == pf.args()[k]))
          return "argument " + std::to_string(k) + " is not " + to_string(substitute(d->out_terms[k], m));
      std::vector<Sequent> want;
      for (const auto& a : d->atoms) want.push_back(with_right({Formula::atom(substitute(a, m))}));
      return premises(want);
    }
    return "unknown rule '" + r + "'";
  }

  std::optional<std::string> theory() const {
    auto it = std::find_if(th.begin(), th.end(), [&](const TheoryAxiom& a) { return a.name == n.detail.axiom; });
    if (it == th.end()) return "unknown theory axiom '" + n.detail.axiom + "'";
    Sequent inst;
    for (const auto& f : it->sequent.ant) inst.ant.push_back(substitute(f, n.detail.subst));
    for (const auto& f : it->sequent.suc) inst.suc.push_back(substitute(f, n.detail.subst));
    if (!alpha_equal(inst, c)) return "conclusion is not an instance of axiom '" + it->name + "': " + to_string(inst);
    return premises({});
  }

  std::optional<std::string> cut() const {
    if (!n.detail.formula) return "missing cut formula";
    if (n.premises.size() != 2) return "cut needs 2 premises";
    const Formula& chi = *n.detail.formula;
    const Sequent& p = n.premises[0].conclusion;
    const Sequent& q = n.premises[1].conclusion;
    if (p.suc.empty() || !alpha_equivalent(p.suc.back(), chi)) return "left premise does not end in the cut formula";
    if (q.ant.empty() || !alpha_equivalent(q.ant.front(), chi)) return "right premise does not start with the cut formula";
    Sequent want{p.ant, Fs(p.suc.begin(), p.suc.end() - 1)};
    want.ant.insert(want.ant.end(), q.ant.begin() + 1, q.ant.end());
    want.suc.insert(want.suc.end(), q.suc.begin(), q.suc.end());
    if (!alpha_equal(want, c)) return "conclusion should be " + to_string(want);
    return std::nullopt;
  }

  std::optional<std::string> equality(bool left, std::size_t i) const {
    const auto& d = n.detail;
    if (!d.formula || d.formula->kind() != Formula::Kind::Atom || d.formula->as_atom().rel != Atom::Rel::Eq)
      return "missing equation s = t";
    if (!d.pattern || d.var.empty()) return "missing replacement pattern";
    const Atom& e = d.formula->as_atom();
    Formula at_t = substitute(*d.pattern, {{d.var, e.rhs}});
    Formula at_s = substitute(*d.pattern, {{d.var, e.lhs}});
    const Formula& pf = left ? c.ant[i] : c.suc[i];
    if (!alpha_equivalent(pf, at_t)) return "principal formula should be " + to_string(at_t);
    if (left) {
      Sequent s0{remove_at(c.ant, i), c.suc};
      s0.suc.push_back(*d.formula);
      return premises({s0, Sequent{splice(c.ant, i, {at_s}), c.suc}});
    }
    return premises({Sequent{c.ant, splice(c.suc, i, {*d.formula})}, Sequent{c.ant, splice(c.suc, i, {at_s})}});
  }
};

}  // namespace

bool alpha_equal(const Sequent& a, const Sequent& b) { return same(a.ant, b.ant) && same(a.suc, b.suc); }

std::string to_string(const Sequent& s) {
  std::string l = list_text(s.ant), r = list_text(s.suc);
  return (l.empty() ? "" : l + " ") + "-->" + (r.empty() ? "" : " " + r);
}

const std::vector<std::string>& rule_names() {
  static const std::vector<std::string> names{
      "ax",    "refl",  "theory", "weak_l", "weak_r", "contr_l", "contr_r", "exch_l", "exch_r", "and_l",
      "and_r", "or_l",  "or_r",   "not_l",  "not_r",  "imp_l",   "imp_r",   "all_l",  "all_r",  "ex_l",
      "ex_r",  "eq_l",  "eq_r",   "cut",    "D_L",    "D_R",     "D_L_fcs", "D_R_fcs"};
  return names;
}

const FcsDefinition* RuleSet::find(const std::string& name) const {
  for (const auto& d : definitions)
    if (d.name == name) return &d;
  return nullptr;
}

std::string calculus_name(Calculus c) {
  switch (c) {
    case Calculus::LKe: return "LKe";
    case Calculus::LKe_D: return "LKe_D";
    case Calculus::LKe_fcs_D: return "LKe_fcs_D";
    case Calculus::LKe_D_fcs_D: return "LKe_D_fcs_D";
  }
  return "";
}

Calculus parse_calculus(const std::string& name) {
  for (Calculus c : {Calculus::LKe, Calculus::LKe_D, Calculus::LKe_fcs_D, Calculus::LKe_D_fcs_D})
    if (calculus_name(c) == name) return c;
  throw Error("unknown rule set '" + name + "'");
}

Calculus join(Calculus a, Calculus b) {
  bool d = a == Calculus::LKe_D || a == Calculus::LKe_D_fcs_D || b == Calculus::LKe_D || b == Calculus::LKe_D_fcs_D;
  bool f = a == Calculus::LKe_fcs_D || a == Calculus::LKe_D_fcs_D || b == Calculus::LKe_fcs_D ||
           b == Calculus::LKe_D_fcs_D;
  if (d && f) return Calculus::LKe_D_fcs_D;
  if (d) return Calculus::LKe_D;
  if (f) return Calculus::LKe_fcs_D;
  return Calculus::LKe;
}

std::optional<std::string> check_node(const ProofNode& n, const RuleSet& rs, const Theory& th) {
  for (const auto* side : {&n.conclusion.ant, &n.conclusion.suc})
    for (const auto& f : *side)
      if (auto e = symbols_ok(f, rs)) return e;
  for (const auto* f : {n.detail.formula ? &*n.detail.formula : nullptr, n.detail.pattern ? &*n.detail.pattern : nullptr})
    if (f)
      if (auto e = symbols_ok(*f, rs)) return e;
  return Local{n, rs, th, n.conclusion}.run();
}

CheckResult check_proof(const ProofNode& p, const RuleSet& rs, const Theory& th) {
  for (const auto& ax : th)
    for (const auto* side : {&ax.sequent.ant, &ax.sequent.suc})
      for (const auto& f : *side)
        if (f.mentions_predicate()) return {false, "root", "theory axiom '" + ax.name + "' mentions a defined predicate"};
  std::function<CheckResult(const ProofNode&, const std::string&)> go = [&](const ProofNode& n,
                                                                          const std::string& path) -> CheckResult {
    for (std::size_t i = 0; i < n.premises.size(); ++i) {
      CheckResult r = go(n.premises[i], path + "." + std::to_string(i));
      if (!r) return r;
    }
    if (auto e = check_node(n, rs, th)) return {false, path, n.rule + ": " + *e};
    return {};
  };
  return go(p, "root");
}

}  // namespace fcs::sequent
