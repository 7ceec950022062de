#include <algorithm>
#include <functional>

#include <json.hpp>

#include "fcs/dioph.hpp"
#include "fcs/error.hpp"
#include "fcs/membership.hpp"

namespace fcs::dioph {

std::string to_string(const DiophantineForm& f) {
  auto list = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
  };
  return "params " + list(f.params) + " exists " + list(f.existentials) + " over " + signature_tag(f.signature) +
         " : " + fcs::to_string(f.poly) + " = 0";
}

std::string TransformReport::output_text() const {
  if (std::holds_alternative<FcsDefinition>(output)) return fcs::to_string(definition());
  return to_string(form());
}

std::string to_text(const TransformReport& r) {
  std::string s;
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const auto& st = r.steps[i];
    s += "step " + std::to_string(i + 1) + ": " + st.name + "\n";
    s += "  before: " + st.before + "\n";
    s += "  after:  " + st.after + "\n";
    s += "  bound:  B -> " + st.bound_map + "\n";
    for (const auto& n : st.notes) s += "  note:   " + n + "\n";
  }
  s += "output: " + r.output_text() + "\n";
  s += "bound map: B -> " + r.bound_map.expression() + "\n";
  return s;
}

std::string to_json(const TransformReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = "fcs/1";
  j["output_kind"] = std::holds_alternative<FcsDefinition>(r.output) ? "definition" : "diophantine";
  j["output"] = r.output_text();
  j["bound_map"] = r.bound_map.expression();
  j["steps"] = nlohmann::ordered_json::array();
  for (const auto& st : r.steps) {
    nlohmann::ordered_json s;
    s["name"] = st.name;
    s["before"] = st.before;
    s["after"] = st.after;
    s["bound_map"] = st.bound_map;
    s["notes"] = st.notes;
    j["steps"].push_back(s);
  }
  return j.dump(2);
}

LtBlock strict_lt_to_eq(const Atom& a, Signature sig, const std::set<std::string>& avoid) {
  if (a.rel != Atom::Rel::Lt) throw Error("strict_lt_to_eq: atom is not a strict inequality: " + fcs::to_string(a));
  LtBlock b;
  std::set<std::string> used = avoid;
  for (int i = 1; i <= 4; ++i) {
    std::string z = fresh_name("z" + std::to_string(i), used);
    used.insert(z);
    b.zs.push_back(z);
  }
  Term squares_plus_one = Term::add(sum_of_squares(b.zs), Term::one());
  if (allows_minus(sig)) b.eq = Atom::eq(Term::sub(a.rhs, a.lhs), squares_plus_one);
  else b.eq = Atom::eq(a.rhs, Term::add(a.lhs, squares_plus_one));
  Term gap = Term::sub(a.rhs, a.lhs);
  auto dom = domain_of(sig);
  b.bound_map = WitnessBoundMap("max(B, ceil(sqrt(2*maxgap[" + fcs::to_string(gap) + "](B))))",
                                [gap, dom](const Int& B) -> Int {
                                  Int ub = search::term_range(gap, B, dom).second;
                                  if (sgn(ub) <= 0) return B;
                                  return std::max(B, ceil_sqrt(2 * ub));
                                });
  return b;
}

Polynomial conjunction_to_single(const std::vector<Polynomial>& eqs) {
  if (eqs.empty()) throw Error("conjunction_to_single: empty conjunction");
  Polynomial s;
  for (const auto& h : eqs) s += h * h;
  return s;
}

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string state_text(const std::vector<std::string>& params, const std::vector<std::string>& exists,
                       const std::vector<std::string>& conditions) {
  return "params " + join(params, ", ") + " exists " + join(exists, ", ") + " : " + join(conditions, " & ");
}

void require_valid(const FcsDefinition& def) {
  auto v = validate_fcs_shape(def);
  if (v.empty()) return;
  std::string msg = "definition '" + def.name + "' is not FCS-shaped:";
  for (const auto& x : v) msg += " [" + fcs::to_string(x) + "]";
  throw Error(msg);
}

std::set<std::string> names_of(const FcsDefinition& d) {
  std::set<std::string> s(d.bound_vars.begin(), d.bound_vars.end());
  for (const auto& t : d.out_terms) {
    auto fv = free_vars(t);
    s.insert(fv.begin(), fv.end());
  }
  for (const auto& a : d.atoms) {
    auto fv = free_vars(a);
    s.insert(fv.begin(), fv.end());
  }
  return s;
}

}  // namespace

TransformReport compile_to_diophantine(const FcsDefinition& def) {
  require_valid(def);
  TransformReport rep;
  std::set<std::string> used = names_of(def);
  DiophantineForm form;
  form.signature = def.signature;
  for (std::size_t i = 0; i < def.out_terms.size(); ++i) {
    std::string y = fresh_name("y" + std::to_string(i + 1), used);
    used.insert(y);
    form.params.push_back(y);
  }
  form.existentials = def.bound_vars;

  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < def.out_terms.size(); ++i)
    atoms.push_back(Atom::eq(Term::var(form.params[i]), def.out_terms[i]));
  atoms.insert(atoms.end(), def.atoms.begin(), def.atoms.end());
  auto snapshot = [&] {
    std::vector<std::string> cs;
    for (const auto& a : atoms) cs.push_back(fcs::to_string(a));
    return state_text(form.params, form.existentials, cs);
  };
  std::string before = fcs::to_string(def);
  rep.steps.push_back({"introduce parameters y_i = t_i", before, snapshot(), "B", {}});

  for (auto& a : atoms) {
    if (a.rel != Atom::Rel::Lt) continue;
    before = snapshot();
    LtBlock blk = strict_lt_to_eq(a, def.signature, used);
    used.insert(blk.zs.begin(), blk.zs.end());
    form.existentials.insert(form.existentials.end(), blk.zs.begin(), blk.zs.end());
    std::string what = fcs::to_string(a);
    a = blk.eq;
    rep.bound_map = rep.bound_map.then(blk.bound_map);
    rep.steps.push_back({allows_minus(def.signature) ? "strict inequality to four squares (subtraction form)"
                                                     : "strict inequality to four squares (addition form)",
                         before, snapshot(), blk.bound_map.expression(), {"eliminated " + what}});
  }

  before = snapshot();
  std::vector<Polynomial> hs;
  std::vector<std::string> cs;
  std::vector<search::Constraint> hint;
  for (const auto& a : atoms) {
    Term h = Term::sub(a.lhs, a.rhs);
    hs.push_back(term_to_polynomial(h));
    cs.push_back(fcs::to_string(hs.back()) + " = 0");
    hint.push_back({h, search::Constraint::Kind::EqZero});
  }
  rep.steps.push_back({"equations to h = 0", before, state_text(form.params, form.existentials, cs), "B", {}});

  form.poly = conjunction_to_single(hs);
  rep.steps.push_back({"conjunction to a single sum of squares", rep.steps.back().after, to_string(form), "B",
                       {std::to_string(hs.size()) + " equation(s) squared and summed"}});
  rep.output = form;
  rep.search_form = hint;
  return rep;
}

std::optional<Valuation> solve_bounded(const DiophantineForm& f, const std::vector<Int>& params, const Int& bound,
                                       const std::vector<search::Constraint>* search_form, search::Stats* stats) {
  if (params.size() != f.params.size())
    throw Error("expected " + std::to_string(f.params.size()) + " parameter values, got " + std::to_string(params.size()));
  search::Problem p;
  p.domain = domain_of(f.signature);
  p.vars = f.existentials;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (p.domain == search::Domain::Nat && sgn(params[i]) < 0) throw Error("negative parameter under Lminus");
    p.fixed[f.params[i]] = params[i];
  }
  if (search_form) p.constraints = *search_form;
  else p.constraints.push_back({polynomial_to_term(f.poly), search::Constraint::Kind::EqZero});
  // Existentials that H does not mention stay at 0 in shell order.
  auto sol = search::first_solution_graded(p, bound, 0, stats);
  if (!sol) return std::nullopt;
  Valuation all = p.fixed;
  for (const auto& [k, v] : *sol) all[k] = v;
  if (f.poly.eval(all) != 0) throw Error("internal: witness does not solve H = 0");
  return sol;
}

std::optional<std::array<Int, 4>> four_square_within(const Int& n, const Int& cap) {
  if (sgn(n) < 0) throw Error("four_square_decompose: negative input " + fcs::to_string(n));
  std::array<Int, 4> out;
  // Descending greedy choice with backtracking; the last square is forced.
  std::function<bool(int, const Int&, const Int&)> go = [&](int k, const Int& rest, const Int& cap) -> bool {
    if (k == 3) {
      Int d = isqrt(rest);
      if (d * d != rest || d > cap) return false;
      out[3] = d;
      return true;
    }
    Int hi = std::min(cap, isqrt(rest));
    for (Int a = hi; sgn(a) >= 0; --a) {
      if (a * a * (4 - k) < rest) break;  // remaining squares cannot catch up
      out[k] = a;
      if (go(k + 1, rest - a * a, a)) return true;
    }
    return false;
  };
  if (!go(0, n, std::min(cap, isqrt(n)))) return std::nullopt;
  return out;
}

std::array<Int, 4> four_square_decompose(const Int& n) {
  auto q = four_square_within(n, isqrt(n));
  if (!q) throw Error("internal: no four-square decomposition found");
  return *q;
}

std::pair<Polynomial, Polynomial> split_positive(const Polynomial& p) {
  Polynomial pos, neg;
  for (const auto& [m, c] : p.terms()) {
    if (sgn(c) > 0) pos += Polynomial::monomial(m, c);
    else neg += Polynomial::monomial(m, Int(-c));
  }
  return {pos, neg};
}

}  // namespace fcs::dioph
