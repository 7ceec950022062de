#include "fcs/membership.hpp"

#include <map>
#include <set>

#include "fcs/error.hpp"

namespace fcs {

search::Domain domain_of(Signature s) { return s == Signature::L_int ? search::Domain::Int : search::Domain::Nat; }

std::vector<search::Constraint> atom_constraints(const std::vector<Atom>& atoms) {
  std::vector<search::Constraint> out;
  for (const auto& a : atoms) {
    if (a.rel == Atom::Rel::Eq) out.push_back({Term::sub(a.lhs, a.rhs), search::Constraint::Kind::EqZero});
    else out.push_back({Term::sub(a.rhs, a.lhs), search::Constraint::Kind::Positive});
  }
  return out;
}

MembershipResult membership_bounded(const FcsDefinition& d, const std::vector<Int>& tuple, const Int& bound,
                                    const MembershipOptions& opts) {
  if (tuple.size() != d.out_terms.size())
    throw Error("'" + d.name + "' has arity " + std::to_string(d.out_terms.size()) + ", got " +
                std::to_string(tuple.size()) + " values");
  const bool nat = d.signature == Signature::Lminus_nat;
  if (nat)
    for (const auto& a : tuple)
      if (sgn(a) < 0) throw Error("negative value " + to_string(a) + " under Lminus");
  MembershipResult res;
  res.bound = bound;
  if (sgn(bound) < 0) return res;

  // Out-terms that are a bare bound variable fix that variable outright.
  std::map<std::string, Int> pinned;
  std::vector<bool> is_pin(tuple.size(), false);
  std::set<std::string> bound_set(d.bound_vars.begin(), d.bound_vars.end());
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const Term& t = d.out_terms[i];
    if (!t.is_var() || !bound_set.count(t.name())) continue;
    auto [it, fresh] = pinned.emplace(t.name(), tuple[i]);
    if (!fresh && it->second != tuple[i]) return res;
    is_pin[i] = true;
  }
  Int min_shell = 0;
  for (const auto& [x, v] : pinned) {
    if (abs(v) > bound || (nat && sgn(v) < 0)) return res;
    min_shell = std::max(min_shell, Int(abs(v)));
  }

  search::Problem p;
  p.domain = domain_of(d.signature);
  for (const auto& x : d.bound_vars)
    if (!pinned.count(x)) p.vars.push_back(x);
  for (const auto& [x, v] : pinned) p.fixed[x] = v;
  for (std::size_t i = 0; i < tuple.size(); ++i)
    if (!is_pin[i])
      p.constraints.push_back({Term::sub(d.out_terms[i], Term::numeral(tuple[i])), search::Constraint::Kind::EqZero});
  auto atoms = opts.search_form ? *opts.search_form : atom_constraints(d.atoms);
  p.constraints.insert(p.constraints.end(), atoms.begin(), atoms.end());
  p.accept = opts.accept;

  auto sol = search::first_solution_graded(p, bound, min_shell, opts.stats);
  if (!sol) return res;

  Valuation w = p.fixed;
  for (const auto& [x, v] : *sol) w[x] = v;
  for (std::size_t i = 0; i < tuple.size(); ++i)
    if (eval_term(d.out_terms[i], w) != tuple[i]) throw Error("internal: witness fails out-term replay");
  for (const auto& a : d.atoms)
    if (!eval_atom(a, w)) throw Error("internal: witness fails atom replay");
  res.status = MembershipResult::Status::Member;
  res.witness = w;
  return res;
}

}  // namespace fcs
