#include <set>

#include "fcs/dioph.hpp"
#include "fcs/error.hpp"
#include "fcs/membership.hpp"

namespace fcs::dioph {

namespace {

Polynomial flip(const Polynomial& f, const std::set<std::string>& negated) {
  Polynomial out;
  for (const auto& [m, c] : f.terms()) {
    unsigned odd = 0;
    for (const auto& [v, e] : m)
      if (negated.count(v)) odd += e;
    out += Polynomial::monomial(m, odd % 2 ? Int(-c) : c);
  }
  return out;
}

std::set<std::string> all_names(const FcsDefinition& d) {
  std::set<std::string> s(d.bound_vars.begin(), d.bound_vars.end());
  for (const auto& t : d.out_terms)
    for (const auto& v : free_vars(t)) s.insert(v);
  for (const auto& a : d.atoms)
    for (const auto& v : free_vars(a)) s.insert(v);
  return s;
}

void require_valid(const FcsDefinition& def, Signature expected) {
  if (def.signature != expected)
    throw Error("definition '" + def.name + "' must be over " + signature_tag(expected));
  auto v = validate_fcs_shape(def);
  if (v.empty()) return;
  std::string msg = "definition '" + def.name + "' is not FCS-shaped:";
  for (const auto& x : v) msg += " [" + fcs::to_string(x) + "]";
  throw Error(msg);
}

Term product(const std::vector<Term>& fs) {
  Term t = fs.at(0);
  for (std::size_t i = 1; i < fs.size(); ++i) t = Term::mul(t, fs[i]);
  return t;
}

}  // namespace

SignExpansion sign_expand(const Polynomial& f, const std::vector<std::string>& vars) {
  if (vars.size() > kMaxSignVariables)
    throw Error("sign expansion over " + std::to_string(vars.size()) + " variables exceeds the limit of " +
                std::to_string(kMaxSignVariables) + " (2^" + std::to_string(vars.size()) + " instances)");
  SignExpansion out;
  out.instances = std::size_t{1} << vars.size();
  std::set<std::map<Monomial, Int>> seen;
  out.phi = Polynomial(1);
  for (std::size_t mask = 0; mask < out.instances; ++mask) {
    std::set<std::string> neg;
    std::map<std::string, bool> fl;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      bool b = (mask >> i) & 1;
      if (b) neg.insert(vars[i]);
      fl[vars[i]] = b;
    }
    Polynomial g = flip(f, neg);
    if (seen.count(g.terms()) || seen.count((-g).terms())) continue;
    seen.insert(g.terms());
    out.factors.push_back(g);
    out.flips.push_back(fl);
    out.phi = out.phi * g;
  }
  return out;
}

TransformReport int_to_nat(const FcsDefinition& def, const IntToNatOptions& opts) {
  require_valid(def, Signature::L_int);
  TransformReport rep;
  std::set<std::string> used = all_names(def);
  FcsDefinition cur = def;
  cur.name = def.name + "_nat";

  // (1) one fresh output variable per out-term
  std::string before = fcs::to_string(def);
  std::vector<std::string> outs;
  std::vector<Atom> eqs;
  for (std::size_t i = 0; i < def.out_terms.size(); ++i) {
    std::string z = fresh_name(def.out_terms.size() == 1 ? "z" : "z" + std::to_string(i + 1), used);
    used.insert(z);
    outs.push_back(z);
    eqs.push_back(Atom::eq(Term::var(z), def.out_terms[i]));
  }
  cur.bound_vars = outs;
  cur.bound_vars.insert(cur.bound_vars.end(), def.bound_vars.begin(), def.bound_vars.end());
  cur.out_terms.clear();
  for (const auto& z : outs) cur.out_terms.push_back(Term::var(z));
  std::vector<Atom> atoms = eqs;
  atoms.insert(atoms.end(), def.atoms.begin(), def.atoms.end());
  cur.atoms = atoms;
  auto terms = def.out_terms;
  WitnessBoundMap out_map("max(B, maxabs[" + [&] {
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) s += (i ? ", " : "") + fcs::to_string(terms[i]);
    return s;
  }() + "](B))",
                          [terms](const Int& B) -> Int {
                            Int m = B;
                            for (const auto& t : terms) {
                              auto [lo, hi] = search::term_range(t, B, search::Domain::Int);
                              m = std::max({m, Int(abs(lo)), Int(abs(hi))});
                            }
                            return m;
                          });
  rep.bound_map = out_map;
  rep.steps.push_back({"output variables z = t", before, fcs::to_string(cur), out_map.expression(), {}});

  // (2) strict inequalities to four squares
  for (auto& a : cur.atoms) {
    if (a.rel != Atom::Rel::Lt) continue;
    before = fcs::to_string(cur);
    LtBlock blk = strict_lt_to_eq(a, Signature::L_int, used);
    used.insert(blk.zs.begin(), blk.zs.end());
    cur.bound_vars.insert(cur.bound_vars.end(), blk.zs.begin(), blk.zs.end());
    a = blk.eq;
    rep.bound_map = rep.bound_map.then(blk.bound_map);
    rep.steps.push_back({"strict inequality to four squares (subtraction form)", before, fcs::to_string(cur),
                         blk.bound_map.expression(), {}});
  }

  // (3) one equation f = 0
  before = fcs::to_string(cur);
  std::vector<Term> hs;
  for (const auto& a : cur.atoms) hs.push_back(Term::sub(a.lhs, a.rhs));
  Term f_term = hs[0];
  std::vector<std::string> notes;
  if (hs.size() >= 2) {
    f_term = Term::mul(hs[0], hs[0]);
    for (std::size_t i = 1; i < hs.size(); ++i) f_term = Term::add(f_term, Term::mul(hs[i], hs[i]));
    notes.push_back(std::to_string(hs.size()) + " equations collapsed to a sum of squares");
  } else {
    notes.push_back("single equation, no collapse needed");
  }
  cur.atoms = {Atom::eq(f_term, Term::zero())};
  rep.steps.push_back({"conjunction to one equation", before, fcs::to_string(cur), "B", notes});
  Polynomial f = term_to_polynomial(f_term);

  // (4) sign expansion: every variable now ranges over N with both signs tried
  before = fcs::to_string(cur);
  std::vector<std::string> signed_vars;
  std::set<std::string> out_set(outs.begin(), outs.end());
  for (const auto& v : cur.bound_vars)
    if (opts.expand_output_sign || !out_set.count(v)) signed_vars.push_back(v);
  if (cur.bound_vars.size() > kMaxSignVariables)
    throw Error("int_to_nat: " + std::to_string(cur.bound_vars.size()) + " variables after steps 1-2 exceed the limit of " +
                std::to_string(kMaxSignVariables));
  SignExpansion se = sign_expand(f, signed_vars);
  std::vector<Term> factor_terms;
  for (const auto& fl : se.flips) {
    std::map<std::string, Term> m;
    for (const auto& [v, neg] : fl)
      if (neg) m.emplace(v, Term::neg(Term::var(v)));
    factor_terms.push_back(substitute(f_term, m));
  }
  Term phi_factored = product(factor_terms);
  cur.atoms = {Atom::eq(phi_factored, Term::zero())};
  rep.steps.push_back({"sign expansion into a product over sign instances", before, fcs::to_string(cur), "B",
                       {std::to_string(se.instances) + " sign instances over " + std::to_string(signed_vars.size()) +
                            " variables",
                        std::to_string(se.factors.size()) + " distinct up to sign kept as factors",
                        opts.expand_output_sign ? "output variables sign-expanded"
                                                : "output variables kept nonnegative"}});

  // (5) gamma1 = gamma2 with nonnegative coefficients
  before = fcs::to_string(cur);
  auto [g1, g2] = split_positive(se.phi);
  cur.atoms = {Atom::eq(polynomial_to_term(g1), polynomial_to_term(g2))};
  cur.signature = Signature::Lminus_nat;
  rep.steps.push_back({"split into positive parts", before, fcs::to_string(cur), "B",
                       {"expanded product has " + std::to_string(se.phi.terms().size()) + " monomials"}});
  require_valid(cur, Signature::Lminus_nat);
  rep.output = cur;
  rep.search_form = std::vector<search::Constraint>{{phi_factored, search::Constraint::Kind::EqZero}};
  return rep;
}

TransformReport nat_to_int(const FcsDefinition& def, const std::vector<search::Constraint>* search_form) {
  require_valid(def, Signature::Lminus_nat);
  TransformReport rep;
  std::set<std::string> used = all_names(def);
  FcsDefinition out = def;
  out.name = def.name + "_int";
  out.signature = Signature::L_int;
  out.bound_vars.clear();
  std::map<std::string, Term> m;
  SquareLifting lift{def, {}, {}};
  if (search_form) lift.source_search_form = *search_form;
  for (const auto& x : def.bound_vars) {
    std::vector<std::string> ys;
    for (int k = 1; k <= 4; ++k) {
      std::string y = fresh_name(x + "_" + std::to_string(k), used);
      used.insert(y);
      ys.push_back(y);
    }
    out.bound_vars.insert(out.bound_vars.end(), ys.begin(), ys.end());
    m.emplace(x, sum_of_squares(ys));
    lift.groups.emplace_back(x, ys);
  }
  for (auto& t : out.out_terms) t = substitute(t, m);
  for (auto& a : out.atoms) a = substitute(a, m);
  WitnessBoundMap root("ceil(sqrt(B))", [](const Int& B) -> Int { return ceil_sqrt(B); });
  rep.bound_map = def.bound_vars.empty() ? WitnessBoundMap() : root;
  rep.steps.push_back({"four-square substitution x = y1^2 + y2^2 + y3^2 + y4^2", fcs::to_string(def),
                       fcs::to_string(out), rep.bound_map.expression(),
                       {std::to_string(def.bound_vars.size()) + " variable(s) replaced"}});
  if (search_form) {
    std::vector<search::Constraint> h;
    for (const auto& c : *search_form) h.push_back({substitute(c.expr, m), c.kind});
    rep.search_form = h;
  }
  rep.output = out;
  rep.lifting = std::move(lift);
  return rep;
}

MembershipResult membership_lifted(const TransformReport& rep, const std::vector<Int>& tuple, const Int& bound) {
  if (!rep.lifting) throw Error("membership_lifted: report has no four-square lifting");
  const SquareLifting& lift = *rep.lifting;
  const FcsDefinition& out = rep.definition();
  std::map<std::string, Term> m;
  std::vector<std::string> parts;
  for (const auto& [x, ys] : lift.groups) {
    m.emplace(x, sum_of_squares(ys));
    parts.insert(parts.end(), ys.begin(), ys.end());
  }
  // The reduction is only sound if the output really is the substituted source.
  bool same = parts == out.bound_vars && out.out_terms.size() == lift.source.out_terms.size() &&
              out.atoms.size() == lift.source.atoms.size();
  for (std::size_t i = 0; same && i < out.out_terms.size(); ++i)
    same = out.out_terms[i] == substitute(lift.source.out_terms[i], m);
  for (std::size_t i = 0; same && i < out.atoms.size(); ++i)
    same = out.atoms[i] == substitute(lift.source.atoms[i], m);
  if (!same) throw Error("membership_lifted: output is not the four-square substitution of its source");

  MembershipResult res;
  res.bound = bound;
  if (sgn(bound) < 0) return res;
  MembershipOptions o;
  if (lift.source_search_form) o.search_form = &*lift.source_search_form;
  o.accept = [&](const Valuation& v) {
    for (const auto& [x, ys] : lift.groups)
      if (!four_square_within(v.at(x), bound)) return false;
    return true;
  };
  auto src = membership_bounded(lift.source, tuple, 4 * bound * bound, o);
  if (!src.member()) return res;

  Valuation w;
  for (const auto& [x, ys] : lift.groups) {
    auto q = *four_square_within(src.witness.at(x), bound);
    for (std::size_t k = 0; k < 4; ++k) w[ys[k]] = q[k];
  }
  for (std::size_t i = 0; i < tuple.size(); ++i)
    if (eval_term(out.out_terms[i], w) != tuple[i]) throw Error("internal: lifted witness fails out-term replay");
  for (const auto& a : out.atoms)
    if (!eval_atom(a, w)) throw Error("internal: lifted witness fails atom replay");
  res.status = MembershipResult::Status::Member;
  res.witness = w;
  return res;
}

}  // namespace fcs::dioph
