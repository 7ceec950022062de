#include <functional>
#include <set>

#include "fcs/error.hpp"
#include "fcs/sequent.hpp"

namespace fcs::sequent {

namespace {

using Fs = std::vector<Formula>;

Fs cat(Fs a, const Fs& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

ProofNode node(const std::string& rule, Sequent c, Detail d, std::vector<ProofNode> ps) {
  return ProofNode{rule, std::move(c), std::move(d), std::move(ps)};
}

Detail at(std::size_t i) {
  Detail d;
  d.index = i;
  return d;
}

ProofNode axiom(const Formula& f) { return node("ax", {{f}, {f}}, {}, {}); }
ProofNode reflexivity(const Term& t) { return node("refl", {{}, {Formula::eq(t, t)}}, {}, {}); }

void require_checked(const ProofNode& p, const RuleSet& rs, const Theory& th, const char* who) {
  CheckResult r = check_proof(p, rs, th);
  if (!r) throw Error(std::string(who) + ": input fails checking at " + r.path + ": " + r.reason);
}

void ensure_checked(const ProofNode& p, const RuleSet& rs, const Theory& th, const char* who) {
  CheckResult r = check_proof(p, rs, th);
  if (!r) throw Error(std::string(who) + ": output fails checking at " + r.path + ": " + r.reason);
}

// phi, phi.body()[y1\w1], ... peeling one quantifier per step.
Fs peel(const Formula& phi, const std::vector<Term>& ws) {
  Fs out{phi};
  for (const auto& w : ws) {
    const Formula& f = out.back();
    out.push_back(substitute(f.body(), {{f.var(), w}}));
  }
  return out;
}

// G_1 = body, G_{j+1} = right part of G_j; returns the k conjuncts and the k suffixes.
void split_conj(const Formula& body, std::size_t k, Fs& pieces, Fs& suffixes) {
  Formula g = body;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    suffixes.push_back(g);
    pieces.push_back(g.left());
    g = g.right();
  }
  suffixes.push_back(g);
  pieces.push_back(g);
}

std::vector<Term> vars_as_terms(const std::vector<std::string>& vs) {
  std::vector<Term> out;
  for (const auto& v : vs) out.push_back(Term::var(v));
  return out;
}

void collect_vars(const Formula& f, std::set<std::string>& out) {
  auto v = all_vars(f);
  out.insert(v.begin(), v.end());
}

}  // namespace

Formula unfold(const Formula& f, const RuleSet& rs) {
  if (!f.mentions_predicate()) return f;
  switch (f.kind()) {
    case Formula::Kind::Pred: {
      const FcsDefinition* d = rs.find(f.name());
      if (!d) throw Error("undeclared predicate '" + f.name() + "'");
      return definition_formula(*d, f.args());
    }
    case Formula::Kind::Not: return Formula::negation(unfold(f.left(), rs));
    case Formula::Kind::And: return Formula::conj(unfold(f.left(), rs), unfold(f.right(), rs));
    case Formula::Kind::Or: return Formula::disj(unfold(f.left(), rs), unfold(f.right(), rs));
    case Formula::Kind::Implies: return Formula::implies(unfold(f.left(), rs), unfold(f.right(), rs));
    case Formula::Kind::Forall: return Formula::forall(f.var(), unfold(f.body(), rs));
    case Formula::Kind::Exists: return Formula::exists(f.var(), unfold(f.body(), rs));
    default: return f;
  }
}

Sequent unfold(const Sequent& s, const RuleSet& rs) {
  Sequent out;
  for (const auto& f : s.ant) out.ant.push_back(unfold(f, rs));
  for (const auto& f : s.suc) out.suc.push_back(unfold(f, rs));
  return out;
}

ProofNode weaken_to(const ProofNode& p, const Sequent& target) {
  auto embed = [](const Fs& have, const Fs& want) {
    std::vector<bool> matched(want.size(), false);
    std::size_t j = 0;
    for (std::size_t k = 0; k < want.size() && j < have.size(); ++k)
      if (alpha_equivalent(have[j], want[k])) {
        matched[k] = true;
        ++j;
      }
    if (j != have.size()) throw Error("weaken_to: " + to_string(Sequent{have, {}}) + " does not embed");
    return matched;
  };
  std::vector<bool> ma = embed(p.conclusion.ant, target.ant), ms = embed(p.conclusion.suc, target.suc);
  ProofNode cur = p;
  Sequent s = p.conclusion;
  for (std::size_t k = 0; k < target.ant.size(); ++k)
    if (!ma[k]) {
      s.ant.insert(s.ant.begin() + static_cast<long>(k), target.ant[k]);
      cur = node("weak_l", s, at(k), {cur});
    }
  for (std::size_t k = 0; k < target.suc.size(); ++k)
    if (!ms[k]) {
      s.suc.insert(s.suc.begin() + static_cast<long>(k), target.suc[k]);
      cur = node("weak_r", s, at(k), {cur});
    }
  return cur;
}

ProofNode unfold_D(const ProofNode& p, const RuleSet& rs, const Theory& th) {
  require_checked(p, rs, th, "unfold_D");
  std::function<ProofNode(const ProofNode&)> go = [&](const ProofNode& n) -> ProofNode {
    if (n.rule == "D_L_fcs" || n.rule == "D_R_fcs")
      throw Error("unfold_D: rule " + n.rule + " needs simulate_fcs");
    if (n.rule == "D_L" || n.rule == "D_R") return go(n.premises[0]);
    ProofNode out{n.rule, unfold(n.conclusion, rs), n.detail, {}};
    if (out.detail.formula) out.detail.formula = unfold(*out.detail.formula, rs);
    if (out.detail.pattern) out.detail.pattern = unfold(*out.detail.pattern, rs);
    for (const auto& q : n.premises) out.premises.push_back(go(q));
    return out;
  };
  ProofNode out = go(p);
  ensure_checked(out, rs.with(Calculus::LKe), th, "unfold_D");
  return out;
}

ProofNode simulate_fcs(const ProofNode& p, const RuleSet& rs, const Theory& th, bool keep_d) {
  require_checked(p, rs, th, "simulate_fcs");
  auto U = [&](const Formula& f) { return keep_d ? f : unfold(f, rs); };
  auto Us = [&](const Fs& xs, std::size_t b, std::size_t e) {
    Fs out;
    for (std::size_t i = b; i < e; ++i) out.push_back(U(xs[i]));
    return out;
  };

  std::function<ProofNode(const ProofNode&)> go = [&](const ProofNode& n) -> ProofNode {
    const Sequent& c = n.conclusion;
    if (n.rule == "D_L_fcs") {
      std::size_t i = n.detail.index.value_or(0);
      const Formula& pf = c.ant[i];
      const FcsDefinition& d = *rs.find(pf.name());
      Fs g1 = Us(c.ant, 0, i), g2 = Us(c.ant, i + 1, c.ant.size()), delta = Us(c.suc, 0, c.suc.size());
      auto seq = [&](const Fs& mid) { return Sequent{cat(cat(g1, mid), g2), delta}; };

      std::size_t k = d.out_terms.size() + d.atoms.size();
      Fs chain = peel(definition_formula(d, pf.args()), vars_as_terms(n.detail.eigenvariables));
      Fs pieces, suffixes;
      split_conj(chain.back(), k, pieces, suffixes);

      ProofNode cur = go(n.premises[0]);
      for (std::size_t j = k - 1; j >= 1; --j) {
        Fs mid(pieces.begin(), pieces.begin() + static_cast<long>(j - 1));
        mid.push_back(suffixes[j - 1]);
        cur = node("and_l", seq(mid), at(i + j - 1), {cur});
      }
      for (std::size_t l = n.detail.eigenvariables.size(); l >= 1; --l) {
        Detail dt = at(i);
        dt.eigenvariable = n.detail.eigenvariables[l - 1];
        cur = node("ex_l", seq({chain[l - 1]}), dt, {cur});
      }
      if (keep_d) cur = node("D_L", seq({pf}), at(i), {cur});
      return cur;
    }
    if (n.rule == "D_R_fcs") {
      std::size_t j = n.detail.index.value_or(c.suc.size() - 1);
      const Formula& pf = c.suc[j];
      const FcsDefinition& d = *rs.find(pf.name());
      Fs gamma = Us(c.ant, 0, c.ant.size()), d1 = Us(c.suc, 0, j), d2 = Us(c.suc, j + 1, c.suc.size());
      auto seq = [&](const Formula& f) { return Sequent{gamma, cat(cat(d1, {f}), d2)}; };

      std::size_t r = d.out_terms.size(), k = r + d.atoms.size();
      Fs chain = peel(definition_formula(d, pf.args()), n.detail.terms);
      Fs pieces, suffixes;
      split_conj(chain.back(), k, pieces, suffixes);

      std::vector<ProofNode> prems;
      for (const auto& q : n.premises) prems.push_back(go(q));
      auto leaf = [&](std::size_t l) -> ProofNode {
        if (l < r) return weaken_to(reflexivity(pieces[l].as_atom().lhs), seq(pieces[l]));
        return prems[l - r];
      };
      ProofNode cur = leaf(k - 1);
      for (std::size_t l = k - 1; l >= 1; --l) cur = node("and_r", seq(suffixes[l - 1]), at(j), {leaf(l - 1), cur});
      for (std::size_t l = n.detail.terms.size(); l >= 1; --l) {
        Detail dt = at(j);
        dt.term = n.detail.terms[l - 1];
        cur = node("ex_r", seq(chain[l - 1]), dt, {cur});
      }
      if (keep_d) cur = node("D_R", seq(pf), at(j), {cur});
      return cur;
    }
    if (!keep_d && (n.rule == "D_L" || n.rule == "D_R")) return go(n.premises[0]);
    ProofNode out{n.rule, {Us(c.ant, 0, c.ant.size()), Us(c.suc, 0, c.suc.size())}, n.detail, {}};
    if (out.detail.formula) out.detail.formula = U(*out.detail.formula);
    if (out.detail.pattern) out.detail.pattern = U(*out.detail.pattern);
    for (const auto& q : n.premises) out.premises.push_back(go(q));
    return out;
  };
  ProofNode out = go(p);
  ensure_checked(out, rs.with(keep_d ? Calculus::LKe_D : Calculus::LKe), th, "simulate_fcs");
  return out;
}

namespace {

struct Builder {
  const RuleSet& rs;

  // A proof of src → dst, where (src, dst) is (psi, psi') when `forward`, else (psi', psi).
  ProofNode imp(const Formula& psi, bool forward) {
    if (!psi.mentions_predicate()) return axiom(psi);
    Formula psu = unfold(psi, rs);
    const Formula& src = forward ? psi : psu;
    const Formula& dst = forward ? psu : psi;
    switch (psi.kind()) {
      case Formula::Kind::Pred: return forward ? pred_forward(psi, psu) : pred_backward(psi, psu);
      case Formula::Kind::Not: {
        ProofNode sub = imp(psi.left(), !forward);  // T → S
        ProofNode l = node("not_l", {{dst.left(), src}, {}}, at(1), {sub});
        return node("not_r", {{src}, {dst}}, at(0), {l});
      }
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        ProofNode a = imp(psi.left(), forward), b = imp(psi.right(), forward);
        if (psi.kind() == Formula::Kind::And) {
          Fs both{src.left(), src.right()};
          ProofNode r = node("and_r", {both, {dst}}, at(0),
                             {weaken_to(a, {both, {dst.left()}}), weaken_to(b, {both, {dst.right()}})});
          return node("and_l", {{src}, {dst}}, at(0), {r});
        }
        Fs both{dst.left(), dst.right()};
        ProofNode ra = node("or_r", {{src.left()}, {dst}}, at(0), {weaken_to(a, {{src.left()}, both})});
        ProofNode rb = node("or_r", {{src.right()}, {dst}}, at(0), {weaken_to(b, {{src.right()}, both})});
        return node("or_l", {{src}, {dst}}, at(0), {ra, rb});
      }
      case Formula::Kind::Implies: {
        ProofNode a = imp(psi.left(), !forward);  // T1 → S1
        ProofNode b = imp(psi.right(), forward);  // S2 → T2
        Sequent mid{{dst.left(), src}, {dst.right()}};
        ProofNode l = node("imp_l", mid, at(1),
                           {weaken_to(a, {{dst.left()}, {dst.right(), src.left()}}),
                            weaken_to(b, {{dst.left(), src.right()}, {dst.right()}})});
        return node("imp_r", {{src}, {dst}}, at(0), {l});
      }
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        std::set<std::string> avoid = free_vars(src);
        auto more = free_vars(dst);
        avoid.insert(more.begin(), more.end());
        std::string a = fresh_name(psi.var(), avoid);
        Term ta = Term::var(a);
        Formula s_a = substitute(src.body(), {{src.var(), ta}});
        Formula d_a = substitute(dst.body(), {{dst.var(), ta}});
        ProofNode sub = imp(substitute(psi.body(), {{psi.var(), ta}}), forward);
        Detail eig = at(0), inst = at(0);
        eig.eigenvariable = a;
        inst.term = ta;
        if (psi.kind() == Formula::Kind::Forall) {
          ProofNode l = node("all_l", {{src}, {d_a}}, inst, {sub});
          return node("all_r", {{src}, {dst}}, eig, {l});
        }
        ProofNode r = node("ex_r", {{s_a}, {dst}}, inst, {sub});
        return node("ex_l", {{src}, {dst}}, eig, {r});
      }
      default: return axiom(psi);
    }
  }

  std::vector<std::string> eigenvariables(const FcsDefinition& d, const Formula& psi, const Formula& phi) {
    std::set<std::string> avoid;
    collect_vars(psi, avoid);
    collect_vars(phi, avoid);
    std::vector<std::string> zs;
    for (const auto& x : d.bound_vars) {
      zs.push_back(fresh_name(x, avoid));
      avoid.insert(zs.back());
    }
    return zs;
  }

  // D(v) → phi(v)
  ProofNode pred_forward(const Formula& psi, const Formula& phi) {
    const FcsDefinition& d = *rs.find(psi.name());
    if (!rs.admits_fcs()) {
      if (!rs.admits_unfolding()) throw Error("rule set admits no definition rules");
      return node("D_L", {{psi}, {phi}}, at(0), {axiom(phi)});
    }
    auto zs = eigenvariables(d, psi, phi);
    Fs conj = definition_conjuncts(d, psi.args(), vars_as_terms(zs));
    std::size_t k = conj.size();
    Fs chain = peel(phi, vars_as_terms(zs));
    Fs pieces, suffixes;
    split_conj(chain.back(), k, pieces, suffixes);

    auto leaf = [&](std::size_t l) { return weaken_to(axiom(pieces[l]), {conj, {pieces[l]}}); };
    ProofNode cur = leaf(k - 1);
    for (std::size_t l = k - 1; l >= 1; --l) cur = node("and_r", {conj, {suffixes[l - 1]}}, at(0), {leaf(l - 1), cur});
    for (std::size_t l = zs.size(); l >= 1; --l) {
      Detail dt = at(0);
      dt.term = Term::var(zs[l - 1]);
      cur = node("ex_r", {conj, {chain[l - 1]}}, dt, {cur});
    }
    Detail dt = at(0);
    dt.eigenvariables = zs;
    return node("D_L_fcs", {{psi}, {phi}}, dt, {cur});
  }

  // phi(v) → D(v)
  ProofNode pred_backward(const Formula& psi, const Formula& phi) {
    const FcsDefinition& d = *rs.find(psi.name());
    if (!rs.admits_fcs()) {
      if (!rs.admits_unfolding()) throw Error("rule set admits no definition rules");
      return node("D_R", {{phi}, {psi}}, at(0), {axiom(phi)});
    }
    auto zs = eigenvariables(d, psi, phi);
    std::vector<Term> ws = vars_as_terms(zs);
    std::size_t r = d.out_terms.size(), k = r + d.atoms.size();
    Fs chain = peel(phi, ws);
    Fs pieces, suffixes;
    split_conj(chain.back(), k, pieces, suffixes);
    const Fs& gamma = pieces;

    std::map<std::string, Term> m;
    for (std::size_t l = 0; l < zs.size(); ++l) m.emplace(d.bound_vars[l], ws[l]);
    std::vector<Term> ts;
    for (const auto& t : d.out_terms) ts.push_back(substitute(t, m));

    std::vector<ProofNode> atom_proofs;
    for (const auto& a : d.atoms) {
      Formula f = Formula::atom(substitute(a, m));
      atom_proofs.push_back(weaken_to(axiom(f), {gamma, {f}}));
    }
    Detail dr = at(0);
    dr.terms = ws;
    ProofNode cur = node("D_R_fcs", {gamma, {Formula::pred(psi.name(), ts)}}, dr, atom_proofs);

    std::set<std::string> avoid;
    collect_vars(psi, avoid);
    collect_vars(phi, avoid);
    avoid.insert(zs.begin(), zs.end());
    std::string z = fresh_name("z", avoid);
    Term tz = Term::var(z);
    const auto& vs = psi.args();
    std::vector<Term> state = ts;
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<Term> pat = state;
      pat[i] = tz;
      state[i] = vs[i];
      Detail sd = at(0);
      sd.formula = Formula::eq(vs[i], ts[i]);
      sd.pattern = Formula::eq(tz, vs[i]);
      sd.var = z;
      ProofNode sym = node("eq_r", {gamma, {Formula::eq(ts[i], vs[i])}}, sd,
                           {weaken_to(axiom(pieces[i]), {gamma, {pieces[i]}}),
                            weaken_to(reflexivity(vs[i]), {gamma, {Formula::eq(vs[i], vs[i])}})});
      Detail ed = at(0);
      ed.formula = Formula::eq(ts[i], vs[i]);
      ed.pattern = Formula::pred(psi.name(), pat);
      ed.var = z;
      cur = node("eq_r", {gamma, {Formula::pred(psi.name(), state)}}, ed, {sym, cur});
    }
    for (std::size_t j = k - 1; j >= 1; --j) {
      Fs mid(pieces.begin(), pieces.begin() + static_cast<long>(j - 1));
      mid.push_back(suffixes[j - 1]);
      cur = node("and_l", {mid, {psi}}, at(j - 1), {cur});
    }
    for (std::size_t l = zs.size(); l >= 1; --l) {
      Detail dt = at(0);
      dt.eigenvariable = zs[l - 1];
      cur = node("ex_l", {{chain[l - 1]}, {psi}}, dt, {cur});
    }
    return cur;
  }
};

}  // namespace

ProofNode build_unfold_implication(const Formula& psi, const RuleSet& rs, bool to_unfolded) {
  if (auto r = check_node(ProofNode{"ax", {{psi}, {psi}}}, rs)) throw Error("ill-formed formula: " + *r);
  return Builder{rs}.imp(psi, to_unfolded);
}

ProofNode build_unfold_equivalence(const Formula& psi, const RuleSet& rs) {
  Formula psu = unfold(psi, rs);
  ProofNode a = node("imp_r", {{}, {Formula::implies(psi, psu)}}, at(0), {build_unfold_implication(psi, rs, true)});
  ProofNode b = node("imp_r", {{}, {Formula::implies(psu, psi)}}, at(0), {build_unfold_implication(psi, rs, false)});
  return node("and_r", {{}, {Formula::conj(Formula::implies(psi, psu), Formula::implies(psu, psi))}}, at(0), {a, b});
}

ProofNode compose_by_cut(const ProofNode& p, const Formula& chi, const ProofNode& q) {
  const Sequent &ps = p.conclusion, &qs = q.conclusion;
  if (ps.suc.empty() || !alpha_equivalent(ps.suc.back(), chi))
    throw Error("cut formula mismatch: left proof does not end in " + to_string(chi));
  if (qs.ant.empty() || !alpha_equivalent(qs.ant.front(), chi))
    throw Error("cut formula mismatch: right proof does not start with " + to_string(chi));
  Sequent c{cat(ps.ant, Fs(qs.ant.begin() + 1, qs.ant.end())), cat(Fs(ps.suc.begin(), ps.suc.end() - 1), qs.suc)};
  Detail d;
  d.formula = chi;
  return node("cut", c, d, {p, q});
}

std::vector<std::string> node_paths(const ProofNode& p) {
  std::vector<std::string> out;
  std::function<void(const ProofNode&, const std::string&)> go = [&](const ProofNode& n, const std::string& path) {
    out.push_back(path);
    for (std::size_t i = 0; i < n.premises.size(); ++i) go(n.premises[i], path + "." + std::to_string(i));
  };
  go(p, "root");
  return out;
}

ProofNode& node_at(ProofNode& p, const std::string& path) {
  if (path.rfind("root", 0) != 0) throw Error("bad node path '" + path + "'");
  ProofNode* cur = &p;
  std::size_t pos = 4;
  while (pos < path.size()) {
    if (path[pos] != '.') throw Error("bad node path '" + path + "'");
    std::size_t e = path.find('.', pos + 1);
    std::size_t k = std::stoul(path.substr(pos + 1, e == std::string::npos ? std::string::npos : e - pos - 1));
    if (k >= cur->premises.size()) throw Error("no node at '" + path + "'");
    cur = &cur->premises[k];
    pos = e == std::string::npos ? path.size() : e;
  }
  return *cur;
}

const ProofNode& node_at(const ProofNode& p, const std::string& path) {
  return node_at(const_cast<ProofNode&>(p), path);
}

std::map<std::string, std::size_t> rule_counts(const ProofNode& p) {
  std::map<std::string, std::size_t> out;
  std::function<void(const ProofNode&)> go = [&](const ProofNode& n) {
    ++out[n.rule];
    for (const auto& q : n.premises) go(q);
  };
  go(p);
  return out;
}

std::size_t size(const ProofNode& p) {
  std::size_t s = 1;
  for (const auto& q : p.premises) s += size(q);
  return s;
}

}  // namespace fcs::sequent
