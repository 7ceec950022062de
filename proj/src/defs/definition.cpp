#include "fcs/definition.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "fcs/error.hpp"
#include "fcs/parser.hpp"

namespace fcs {

std::vector<Violation> validate_fcs_shape(const FcsDefinition& d) {
  std::vector<Violation> out;
  if (!is_identifier(d.name)) out.push_back({"name", "'" + d.name + "' is not an identifier"});
  if (d.out_terms.empty()) out.push_back({"arity", "a definition needs at least one out-term"});
  if (d.arity != d.out_terms.size())
    out.push_back({"arity", "declared arity " + std::to_string(d.arity) + " but " +
                                std::to_string(d.out_terms.size()) + " out-terms"});
  std::set<std::string> bound;
  for (const auto& x : d.bound_vars) {
    if (!is_identifier(x)) out.push_back({"bound variable", "'" + x + "' is not an identifier"});
    if (!bound.insert(x).second) out.push_back({"bound variable", "'" + x + "' is listed twice"});
  }
  auto scope = [&](const std::set<std::string>& vars, const std::string& where) {
    for (const auto& v : vars)
      if (!bound.count(v)) out.push_back({"unbound variable", "'" + v + "' in " + where + " is not a bound variable"});
  };
  bool minus_ok = allows_minus(d.signature);
  for (std::size_t i = 0; i < d.out_terms.size(); ++i) {
    std::string where = "out-term " + std::to_string(i + 1);
    scope(free_vars(d.out_terms[i]), where);
    if (!minus_ok && d.out_terms[i].uses_minus()) out.push_back({"signature", "minus in " + where + " under Lminus"});
  }
  for (std::size_t j = 0; j < d.atoms.size(); ++j) {
    std::string where = "atom " + std::to_string(j + 1);
    scope(free_vars(d.atoms[j]), where);
    if (!minus_ok && (d.atoms[j].lhs.uses_minus() || d.atoms[j].rhs.uses_minus()))
      out.push_back({"signature", "minus in " + where + " under Lminus"});
  }
  return out;
}

std::string to_string(const Violation& v) { return v.kind + ": " + v.message; }

namespace {

std::string strip_comments(const std::string& text) {
  std::string out;
  bool comment = false;
  for (char c : text) {
    if (c == '#') comment = true;
    if (c == '\n') comment = false;
    out += comment ? ' ' : c;
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

// Position of keyword `kw` as a whole word at or after `from`.
std::size_t find_word(const std::string& s, const std::string& kw, std::size_t from) {
  auto is_word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  for (std::size_t p = s.find(kw, from); p != std::string::npos; p = s.find(kw, p + 1)) {
    bool left = p == 0 || !is_word(s[p - 1]);
    bool right = p + kw.size() >= s.size() || !is_word(s[p + kw.size()]);
    if (left && right) return p;
  }
  return std::string::npos;
}

}  // namespace

FcsDefinition parse_definition(const std::string& raw) {
  std::string s = strip_comments(raw);
  std::size_t p_def = find_word(s, "def", 0);
  if (p_def == std::string::npos || !trim(s.substr(0, p_def)).empty()) throw ParseError("expected 'def'", 0);
  std::size_t p_over = find_word(s, "over", p_def);
  std::size_t p_bound = find_word(s, "bound", p_def);
  std::size_t p_out = find_word(s, "out", p_def);
  if (p_over == std::string::npos) throw ParseError("expected 'over'", p_def);
  if (p_bound == std::string::npos) throw ParseError("expected 'bound'", p_over);
  if (p_out == std::string::npos) throw ParseError("expected 'out'", p_bound);
  if (!(p_over < p_bound && p_bound < p_out)) throw ParseError("sections must appear as def/over/bound/out/where", p_def);
  std::size_t p_where = find_word(s, "where", p_out);

  FcsDefinition d;
  std::string head = trim(s.substr(p_def + 3, p_over - p_def - 3));
  std::size_t slash = head.find('/');
  if (slash == std::string::npos) throw ParseError("expected NAME/ARITY", p_def + 3);
  d.name = trim(head.substr(0, slash));
  std::string ar = trim(head.substr(slash + 1));
  if (ar.empty() || !std::all_of(ar.begin(), ar.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("arity must be a number", p_def + 3 + slash + 1);
  d.arity = std::stoul(ar);
  d.signature = parse_signature_tag(trim(s.substr(p_over + 4, p_bound - p_over - 4)));

  std::string bound = trim(s.substr(p_bound + 5, p_out - p_bound - 5));
  if (!bound.empty()) {
    for (const auto& v : split(bound, ',')) {
      if (!is_identifier(v)) throw ParseError("bad bound variable '" + v + "'", p_bound + 5);
      d.bound_vars.push_back(v);
    }
  }
  std::size_t out_end = p_where == std::string::npos ? s.size() : p_where;
  std::string outs = trim(s.substr(p_out + 3, out_end - p_out - 3));
  if (outs.empty()) throw ParseError("expected out-terms", p_out + 3);
  for (const auto& t : split(outs, ',')) {
    try {
      d.out_terms.push_back(parse_term(t, d.signature));
    } catch (const ParseError& e) {
      throw ParseError(std::string("in out-term '") + t + "': " + e.what(), p_out + 3);
    }
  }
  if (p_where != std::string::npos) {
    for (const auto& a : split(s.substr(p_where + 5), ';')) {
      if (a.empty()) continue;
      try {
        d.atoms.push_back(parse_atom(a, d.signature));
      } catch (const ParseError& e) {
        throw ParseError(std::string("in atom '") + a + "': " + e.what(), p_where + 5);
      }
    }
  }
  return d;
}

std::vector<FcsDefinition> parse_definition_file(const std::string& raw) {
  std::string s = strip_comments(raw);
  std::vector<FcsDefinition> out;
  std::size_t p = find_word(s, "def", 0);
  if (p == std::string::npos) {
    if (!trim(s).empty()) throw ParseError("expected 'def'", 0);
    return out;
  }
  if (!trim(s.substr(0, p)).empty()) throw ParseError("expected 'def'", 0);
  while (p != std::string::npos) {
    std::size_t next = find_word(s, "def", p + 3);
    out.push_back(parse_definition(s.substr(p, next == std::string::npos ? std::string::npos : next - p)));
    p = next;
  }
  return out;
}

std::string to_string(const FcsDefinition& d) {
  std::string s = "def " + d.name + "/" + std::to_string(d.arity) + " over " + signature_tag(d.signature) + " bound ";
  for (std::size_t i = 0; i < d.bound_vars.size(); ++i) s += (i ? ", " : "") + d.bound_vars[i];
  s += d.bound_vars.empty() ? "out " : " out ";
  for (std::size_t i = 0; i < d.out_terms.size(); ++i) s += (i ? ", " : "") + to_string(d.out_terms[i]);
  if (!d.atoms.empty()) {
    s += " where ";
    for (std::size_t j = 0; j < d.atoms.size(); ++j) s += (j ? "; " : "") + to_string(d.atoms[j]);
  }
  return s;
}

namespace {

std::vector<std::string> parameter_names(const FcsDefinition& d) {
  std::set<std::string> avoid(d.bound_vars.begin(), d.bound_vars.end());
  std::vector<std::string> ps;
  for (std::size_t i = 0; i < d.arity; ++i) {
    std::string p = fresh_name("_p" + std::to_string(i + 1), avoid);
    avoid.insert(p);
    ps.push_back(p);
  }
  return ps;
}

}  // namespace

Formula definition_formula(const FcsDefinition& d, const std::vector<Term>& args) {
  if (args.size() != d.out_terms.size()) throw Error("arity mismatch for '" + d.name + "'");
  auto ps = parameter_names(d);
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < d.out_terms.size(); ++i) parts.push_back(Formula::eq(Term::var(ps[i]), d.out_terms[i]));
  for (const auto& a : d.atoms) parts.push_back(Formula::atom(a));
  Formula body = Formula::conj_list(parts);
  for (std::size_t k = d.bound_vars.size(); k-- > 0;) body = Formula::exists(d.bound_vars[k], body);
  std::map<std::string, Term> m;
  for (std::size_t i = 0; i < ps.size(); ++i) m.emplace(ps[i], args[i]);
  return substitute(body, m);
}

std::vector<Formula> definition_conjuncts(const FcsDefinition& d, const std::vector<Term>& args,
                                          const std::vector<Term>& witnesses) {
  if (args.size() != d.out_terms.size()) throw Error("arity mismatch for '" + d.name + "'");
  if (witnesses.size() != d.bound_vars.size()) throw Error("witness count mismatch for '" + d.name + "'");
  std::map<std::string, Term> m;
  for (std::size_t k = 0; k < witnesses.size(); ++k) m.emplace(d.bound_vars[k], witnesses[k]);
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < d.out_terms.size(); ++i)
    parts.push_back(Formula::eq(args[i], substitute(d.out_terms[i], m)));
  for (const auto& a : d.atoms) parts.push_back(Formula::atom(substitute(a, m)));
  return parts;
}

namespace {

void flatten_conj(const Formula& f, std::vector<Atom>& out) {
  switch (f.kind()) {
    case Formula::Kind::And:
      flatten_conj(f.left(), out);
      flatten_conj(f.right(), out);
      return;
    case Formula::Kind::Atom: out.push_back(f.as_atom()); return;
    case Formula::Kind::Pred: throw Error("not primitive positive: defined predicate '" + f.name() + "'");
    case Formula::Kind::Exists: throw Error("not primitive positive: existential inside a conjunction");
    case Formula::Kind::Forall: throw Error("not primitive positive: universal quantifier");
    case Formula::Kind::Not: throw Error("not primitive positive: negation");
    case Formula::Kind::Or: throw Error("not primitive positive: disjunction");
    case Formula::Kind::Implies: throw Error("not primitive positive: implication");
  }
}

}  // namespace

FcsDefinition pp_to_fcs(const Formula& f, const std::vector<std::string>& params, Signature sig,
                        const std::string& name) {
  if (params.empty()) throw Error("pp_to_fcs needs at least one parameter");
  std::vector<std::string> xs;
  const Formula* g = &f;
  while (g->kind() == Formula::Kind::Exists) {
    xs.push_back(g->var());
    g = &g->body();
  }
  std::vector<Atom> atoms;
  flatten_conj(*g, atoms);
  std::set<std::string> pset(params.begin(), params.end());
  if (pset.size() != params.size()) throw Error("repeated parameter");
  for (const auto& x : xs)
    if (pset.count(x)) throw Error("parameter '" + x + "' is quantified");
  for (const auto& v : free_vars(f))
    if (!pset.count(v)) throw Error("free variable '" + v + "' is not a parameter");
  for (const auto& a : atoms)
    if (!allows_minus(sig) && (a.lhs.uses_minus() || a.rhs.uses_minus())) throw Error("minus under Lminus");

  std::set<std::string> used = all_vars(f);
  used.insert(params.begin(), params.end());
  FcsDefinition d;
  d.name = name;
  d.arity = params.size();
  d.signature = sig;
  d.bound_vars = xs;
  std::map<std::string, Term> rename;
  std::vector<bool> dropped(atoms.size(), false);
  for (const auto& a : params) {
    std::vector<std::size_t> occ;
    for (std::size_t j = 0; j < atoms.size(); ++j)
      if (free_vars(atoms[j]).count(a)) occ.push_back(j);
    std::optional<Term> solved;
    if (occ.size() == 1 && atoms[occ[0]].rel == Atom::Rel::Eq) {
      const Atom& at = atoms[occ[0]];
      auto clean = [&](const Term& t) {
        for (const auto& v : free_vars(t))
          if (pset.count(v)) return false;
        return true;
      };
      if (at.lhs == Term::var(a) && clean(at.rhs)) solved = at.rhs;
      else if (at.rhs == Term::var(a) && clean(at.lhs)) solved = at.lhs;
    }
    if (solved) {
      dropped[occ[0]] = true;
      d.out_terms.push_back(*solved);
    } else {
      std::string x = fresh_name(a, used);
      used.insert(x);
      d.bound_vars.push_back(x);
      d.out_terms.push_back(Term::var(x));
      rename.emplace(a, Term::var(x));
    }
  }
  for (std::size_t j = 0; j < atoms.size(); ++j)
    if (!dropped[j]) d.atoms.push_back(substitute(atoms[j], rename));
  return d;
}

FcsDefinition pp_to_fcs(const Formula& f, std::size_t arity, Signature sig, const std::string& name) {
  auto fv = free_vars(f);
  if (fv.size() != arity)
    throw Error("formula has " + std::to_string(fv.size()) + " free variables, expected " + std::to_string(arity));
  return pp_to_fcs(f, std::vector<std::string>(fv.begin(), fv.end()), sig, name);
}

}  // namespace fcs
