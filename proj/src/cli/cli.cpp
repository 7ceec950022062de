#include "fcs/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "fcs/catalog.hpp"
#include "fcs/dioph.hpp"
#include "fcs/error.hpp"
#include "fcs/membership.hpp"
#include "fcs/parser.hpp"
#include "fcs/polynomial.hpp"
#include "fcs/sequent.hpp"

namespace fcs::cli {

namespace {

using Json = nlohmann::ordered_json;

// Raised for malformed command input; reported with exit code 2.
struct UsageError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json envelope(const std::string& verb) { return Json{{"schema", "fcs/1"}, {"verb", verb}}; }

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, sep)) {
    auto b = cur.find_first_not_of(" \t"), e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

// name=value pairs separated by commas or given as separate words.
Valuation parse_valuation(const std::vector<std::string>& words) {
  Valuation v;
  for (const auto& w : words)
    for (const auto& item : split_list(w, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("expected name=value, got '" + item + "'");
      try {
        v[item.substr(0, eq)] = Int(item.substr(eq + 1));
      } catch (const std::invalid_argument&) {
        throw UsageError("not an integer: '" + item.substr(eq + 1) + "'");
      }
    }
  return v;
}

Int parse_int(const std::string& s) {
  try {
    return Int(s);
  } catch (const std::invalid_argument&) {
    throw UsageError("not an integer: '" + s + "'");
  }
}

Signature sig_of(const std::string& tag) { return parse_signature_tag(tag); }

struct Target {
  FcsDefinition def;
  const CatalogEntry* entry = nullptr;
};

// A catalog name or a definition file (first definition, or the one named by `pick`).
Target resolve(const std::string& what, const std::string& pick) {
  for (const auto& e : catalog())
    if (e.def.name == what) return {e.def, &e};
  auto defs = parse_definition_file(read_file(what));
  if (defs.empty()) throw UsageError("no definitions in '" + what + "'");
  if (pick.empty()) return {defs.front(), nullptr};
  for (const auto& d : defs)
    if (d.name == pick) return {d, nullptr};
  throw UsageError("no definition named '" + pick + "' in '" + what + "'");
}

std::string witness_text(const FcsDefinition& d, const Valuation& w) {
  std::string s;
  for (const auto& x : d.bound_vars) {
    auto it = w.find(x);
    if (it != w.end()) s += (s.empty() ? "" : " ") + x + "=" + it->second.get_str();
  }
  return s;
}

Json witness_json(const FcsDefinition& d, const Valuation& w) {
  Json j = Json::object();
  for (const auto& x : d.bound_vars) {
    auto it = w.find(x);
    if (it != w.end()) j[x] = it->second.get_str();
  }
  return j;
}

struct Options {
  bool json = false;
  std::string bound;
  std::uint64_t seed = 1;

  // verb-specific
  std::string text, target, def_name, sig = "L", eval, subst, pp, ruleset, direction = "both", cut, box, params;
  std::vector<std::string> words;
  std::size_t arity = 0;
  bool term = false, poly = false, keep_d = false, nat = false, count = false, no_output_sign = false;
  std::string four_square, member_values;
  std::uint64_t budget = 1000000, random = 0;
};

int print_report(const dioph::TransformReport& r, const Options& o, std::ostream& out) {
  out << (o.json ? dioph::to_json(r) + "\n" : dioph::to_text(r));
  return 0;
}

int verb_parse(const Options& o, std::ostream& out) {
  Signature sig = sig_of(o.sig);
  Json j = envelope("parse");
  if (o.term || o.poly) {
    Term t = parse_term(o.text, sig);
    if (!o.subst.empty()) {
      std::map<std::string, Term> m;
      for (const auto& item : split_list(o.subst, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("expected name=term in --subst");
        m.emplace(item.substr(0, eq), parse_term(item.substr(eq + 1), sig));
      }
      t = substitute(t, m);
    }
    std::string text = o.poly ? to_string(term_to_polynomial(t)) : to_string(t);
    j["term"] = text;
    if (!o.eval.empty()) j["value"] = eval_term(t, parse_valuation({o.eval})).get_str();
    if (o.json) {
      out << j.dump() << "\n";
    } else {
      out << text << "\n";
      if (j.contains("value")) out << j["value"].get<std::string>() << "\n";
    }
    return 0;
  }
  Formula f = parse_formula(o.text, sig);
  if (!o.subst.empty()) {
    std::map<std::string, Term> m;
    for (const auto& item : split_list(o.subst, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("expected name=term in --subst");
      m.emplace(item.substr(0, eq), parse_term(item.substr(eq + 1), sig));
    }
    f = substitute(f, m);
  }
  j["formula"] = to_string(f);
  if (!o.eval.empty()) j["value"] = eval_qf(f, parse_valuation({o.eval}));
  if (o.json) {
    out << j.dump() << "\n";
  } else {
    out << to_string(f) << "\n";
    if (j.contains("value")) out << (j["value"].get<bool>() ? "true" : "false") << "\n";
  }
  return 0;
}

int verb_validate(const Options& o, std::ostream& out) {
  std::vector<FcsDefinition> defs;
  if (!o.pp.empty()) {
    Formula f = parse_formula(o.pp, sig_of(o.sig));
    defs.push_back(o.arity ? pp_to_fcs(f, o.arity, sig_of(o.sig), o.def_name.empty() ? "D" : o.def_name)
                           : pp_to_fcs(f, std::vector<std::string>(free_vars(f).begin(), free_vars(f).end()),
                                       sig_of(o.sig), o.def_name.empty() ? "D" : o.def_name));
  } else {
    if (o.target.empty()) throw UsageError("validate needs a definition file or --pp");
    defs = parse_definition_file(read_file(o.target));
  }
  bool all_ok = true;
  Json list = Json::array();
  std::ostringstream text;
  for (const auto& d : defs) {
    auto vs = validate_fcs_shape(d);
    all_ok = all_ok && vs.empty();
    Json jv = Json::array();
    if (!o.pp.empty()) text << to_string(d) << "\n";
    if (vs.empty()) text << "ok " << d.name << "\n";
    for (const auto& v : vs) {
      text << d.name << ": " << to_string(v) << "\n";
      jv.push_back(Json{{"kind", v.kind}, {"message", v.message}});
    }
    list.push_back(Json{{"name", d.name}, {"definition", to_string(d)}, {"violations", jv}});
  }
  if (o.json) {
    Json j = envelope("validate");
    j["ok"] = all_ok;
    j["definitions"] = list;
    out << j.dump() << "\n";
  } else {
    out << text.str();
  }
  return all_ok ? 0 : 1;
}

int verb_member(const Options& o, std::ostream& out, std::ostream& err) {
  Target t = resolve(o.target, o.def_name);
  std::vector<Int> tuple;
  for (const auto& w : o.words) tuple.push_back(parse_int(w));
  if (tuple.size() != t.def.arity) throw UsageError("expected " + std::to_string(t.def.arity) + " value(s)");
  FcsDefinition d = t.entry ? t.entry->instance(tuple) : t.def;
  if (t.entry && !t.entry->witness_search) {
    err << "witness search is not supported for " << t.def.name << "\n";
    return 2;
  }
  Int bound;
  if (!o.bound.empty()) {
    bound = parse_int(o.bound);
  } else if (t.entry) {
    bound = t.entry->sufficient_bound(tuple);
  } else {
    throw UsageError("--bound is required for definitions outside the catalog");
  }
  if (sgn(bound) < 0) throw UsageError("bound must be nonnegative");
  MembershipResult r = membership_bounded(d, tuple, bound);
  if (o.json) {
    Json j = envelope("member");
    j["definition"] = d.name;
    j["status"] = r.member() ? "member" : "unknown_at_bound";
    j["bound"] = bound.get_str();
    if (r.member()) j["witness"] = witness_json(d, r.witness);
    out << j.dump() << "\n";
  } else if (r.member()) {
    std::string w = witness_text(d, r.witness);
    out << "member" << (w.empty() ? "" : " " + w) << "\n";
  } else {
    out << "unknown at bound " << bound.get_str() << "\n";
  }
  return r.member() ? 0 : 1;
}

int verb_to_int(const Options& o, std::ostream& out) {
  if (!o.four_square.empty()) {
    auto q = dioph::four_square_decompose(parse_int(o.four_square));
    if (o.json) {
      Json j = envelope("to-int");
      j["four_square"] = {q[0].get_str(), q[1].get_str(), q[2].get_str(), q[3].get_str()};
      out << j.dump() << "\n";
    } else {
      out << q[0].get_str() << " " << q[1].get_str() << " " << q[2].get_str() << " " << q[3].get_str() << "\n";
    }
    return 0;
  }
  if (o.target.empty()) throw UsageError("to-int needs a definition or --four-square");
  auto rep = dioph::nat_to_int(resolve(o.target, o.def_name).def);
  if (o.member_values.empty()) return print_report(rep, o, out);

  // Membership of the translated definition in its box, via the four-square groups.
  const FcsDefinition& d = rep.definition();
  std::vector<Int> tuple;
  for (const auto& w : split_list(o.member_values, ',')) tuple.push_back(parse_int(w));
  if (tuple.size() != d.arity) throw UsageError("expected " + std::to_string(d.arity) + " value(s)");
  for (const auto& a : tuple)
    if (sgn(a) < 0) throw UsageError("values must be nonnegative");
  if (o.bound.empty()) throw UsageError("--member needs --bound");
  Int bound = parse_int(o.bound);
  if (sgn(bound) < 0) throw UsageError("bound must be nonnegative");
  MembershipResult r = dioph::membership_lifted(rep, tuple, bound);
  if (o.json) {
    Json j = envelope("to-int");
    j["definition"] = d.name;
    j["status"] = r.member() ? "member" : "unknown_at_bound";
    j["bound"] = bound.get_str();
    if (r.member()) j["witness"] = witness_json(d, r.witness);
    out << j.dump() << "\n";
  } else if (r.member()) {
    std::string w = witness_text(d, r.witness);
    out << "member" << (w.empty() ? "" : " " + w) << "\n";
  } else {
    out << "unknown at bound " << bound.get_str() << "\n";
  }
  return r.member() ? 0 : 1;
}

int verb_split(const Options& o, std::ostream& out) {
  auto [p1, p2] = dioph::split_positive(term_to_polynomial(parse_term(o.text, Signature::L_int)));
  if (o.json) {
    Json j = envelope("split");
    j["positive"] = to_string(p1);
    j["negative"] = to_string(p2);
    out << j.dump() << "\n";
  } else {
    out << "P1: " << to_string(p1) << "\nP2: " << to_string(p2) << "\n";
  }
  return 0;
}

int verb_refute(const Options& o, std::ostream& out, std::ostream& err) {
  Polynomial f = term_to_polynomial(parse_term(o.text, Signature::L_int));
  std::vector<Atom> box;
  for (const auto& a : split_list(o.box, ';')) box.push_back(parse_atom(a, Signature::L_int));
  dioph::RefuteOptions ro;
  ro.budget = o.budget;
  if (o.nat) ro.domain = search::Domain::Nat;
  dioph::Refutation r;
  try {
    r = dioph::refute_prime_box(f, box, ro);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    std::string msg = e.what();
    if (msg.find("budget") == std::string::npos) throw;
    err << msg << "\n";
    return 1;
  }
  bool ok = r.verify(f, box, ro.domain);
  if (o.json) {
    Json j = envelope("refute-prime-box");
    j["refutation"] = dioph::to_string(r);
    j["verified"] = ok;
    j["evaluations"] = r.evaluations;
    out << j.dump() << "\n";
  } else {
    out << dioph::to_string(r) << "\n" << (ok ? "verified" : "NOT verified") << "\n";
  }
  return ok ? 0 : 1;
}

int verb_classify(const Options& o, std::ostream& out) {
  Polynomial h = term_to_polynomial(parse_term(o.text, Signature::Lminus_nat));
  dioph::DiophantineForm form;
  form.signature = Signature::Lminus_nat;
  form.params = split_list(o.params, ',');
  if (form.params.empty()) throw UsageError("classify needs --params");
  for (const auto& v : h.variables())
    if (std::find(form.params.begin(), form.params.end(), v) == form.params.end()) form.existentials.push_back(v);
  form.poly = h;
  auto table = dioph::zero_pattern_classify(form, o.bound.empty() ? Int(8) : parse_int(o.bound));
  if (o.json) {
    Json j = envelope("classify");
    j["consistent"] = table.consistent;
    Json ps = Json::array();
    for (const auto& p : table.patterns) ps.push_back(Json{{"zero", p.zero}, {"in", p.in}, {"out", p.out}});
    j["patterns"] = ps;
    out << j.dump() << "\n";
  } else {
    out << table.describe();
  }
  return table.consistent ? 0 : 1;
}

sequent::ProofFile load_proof(const std::string& path, const std::string& ruleset) {
  sequent::ProofFile f = sequent::parse_proof_file(read_file(path));
  if (!ruleset.empty()) f.rules.calculus = sequent::parse_calculus(ruleset);
  return f;
}

int verb_check(const Options& o, std::ostream& out) {
  auto f = load_proof(o.target, o.ruleset);
  auto r = sequent::check_proof(f.proof, f.rules, f.theory);
  if (o.json) {
    Json j = envelope("check-proof");
    j["ok"] = r.ok;
    j["ruleset"] = sequent::calculus_name(f.rules.calculus);
    if (!r.ok) {
      j["path"] = r.path;
      j["reason"] = r.reason;
    }
    out << j.dump() << "\n";
  } else if (r.ok) {
    out << "ok\n";
  } else {
    out << "fail at " << r.path << ": " << r.reason << "\n";
  }
  return r.ok ? 0 : 1;
}

int verb_transform(const std::string& verb, const Options& o, std::ostream& out, std::ostream& err) {
  auto f = load_proof(o.target, o.ruleset);
  auto r = sequent::check_proof(f.proof, f.rules, f.theory);
  if (!r) {
    err << "input proof fails at " << r.path << ": " << r.reason << "\n";
    return 1;
  }
  sequent::ProofFile g = f;
  if (verb == "simulate") {
    g.proof = sequent::simulate_fcs(f.proof, f.rules, f.theory, o.keep_d);
    g.rules.calculus = o.keep_d ? sequent::Calculus::LKe_D : sequent::Calculus::LKe;
  } else {
    g.proof = sequent::unfold_D(f.proof, f.rules, f.theory);
    g.rules.calculus = sequent::Calculus::LKe;
  }
  out << sequent::to_json(g);
  return 0;
}

int verb_equiv(const Options& o, std::ostream& out) {
  sequent::ProofFile pf;
  pf.signature = sig_of(o.sig);
  bool from_catalog = false;
  for (const auto& e : catalog())
    if (e.def.name == o.target) {
      pf.rules.definitions.push_back(e.def);
      from_catalog = true;
    }
  if (!from_catalog) pf.rules.definitions = parse_definition_file(read_file(o.target));
  pf.rules.calculus = sequent::parse_calculus(o.ruleset.empty() ? "LKe_fcs_D" : o.ruleset);
  Formula psi = parse_formula(o.text, pf.signature);
  if (!o.cut.empty()) {
    // An LKe proof of → psi[D\phi] becomes a proof of → psi.
    sequent::ProofFile given = load_proof(o.cut, "");
    auto r = sequent::check_proof(given.proof, given.rules, given.theory);
    if (!r) throw UsageError("proof in '" + o.cut + "' fails at " + r.path + ": " + r.reason);
    sequent::ProofNode back = sequent::build_unfold_implication(psi, pf.rules, false);
    pf.proof = sequent::compose_by_cut(given.proof, sequent::unfold(psi, pf.rules), back);
    pf.rules.calculus = sequent::join(given.rules.calculus, pf.rules.calculus);
    pf.theory = given.theory;
  } else if (o.direction == "both") {
    pf.proof = sequent::build_unfold_equivalence(psi, pf.rules);
  } else if (o.direction == "forward" || o.direction == "backward") {
    pf.proof = sequent::build_unfold_implication(psi, pf.rules, o.direction == "forward");
  } else {
    throw UsageError("--direction must be both, forward or backward");
  }
  out << sequent::to_json(pf);
  return 0;
}

int verb_catalog(const Options& o, std::ostream& out) {
  Json list = Json::array();
  std::ostringstream text;
  for (const auto& e : catalog()) {
    if (!o.target.empty() && e.def.name != o.target) continue;
    list.push_back(Json{{"name", e.def.name},
                        {"definition", to_string(e.def)},
                        {"description", e.description},
                        {"sufficient_bound", e.bound_formula},
                        {"witness_search", e.witness_search}});
    if (o.target.empty()) {
      text << e.def.name << "/" << e.def.arity << " over " << signature_tag(e.def.signature) << ": " << e.description
           << "\n";
    } else {
      text << to_string(e.def) << "\n" << e.description << "\nsufficient bound: " << e.bound_formula << "\n";
    }
  }
  if (list.empty()) throw UsageError("no catalog entry '" + o.target + "'");
  if (o.json) {
    Json j = envelope("catalog");
    j["entries"] = list;
    out << j.dump() << "\n";
  } else {
    out << text.str();
  }
  return 0;
}

int verb_ruiz(const Options& o, std::ostream& out) {
  Int n = parse_int(o.text);
  if (o.count) {
    Int c = ruiz_prime_count(n);
    out << (o.json ? [&] {
      Json j = envelope("ruiz");
      j["count"] = c.get_str();
      return j.dump();
    }()
                   : c.get_str())
        << "\n";
    return 0;
  }
  if (sgn(n) <= 0 || n > 100000) throw UsageError("n must be in 1..100000");
  Int p = ruiz_nth_prime(static_cast<unsigned>(n.get_ui()));
  if (o.json) {
    Json j = envelope("ruiz");
    j["n"] = n.get_str();
    j["prime"] = p.get_str();
    out << j.dump() << "\n";
  } else {
    out << p.get_str() << "\n";
  }
  return 0;
}

bool is_prime(const Int& n) { return sgn(n) > 0 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

int verb_jones(const Options& o, std::ostream& out) {
  if (o.random == 0) {
    Valuation v = parse_valuation(o.words);
    Int val = jones_value(v);
    if (o.json) {
      Json j = envelope("jones-eval");
      j["value"] = val.get_str();
      out << j.dump() << "\n";
    } else {
      out << val.get_str() << "\n";
    }
    return 0;
  }
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> entry(0, 20);
  std::uint64_t positive = 0, bad = 0;
  for (std::uint64_t i = 0; i < o.random; ++i) {
    Valuation v;
    for (const auto& x : jones_variables()) v[x] = entry(rng);
    Int val = jones_value(v);
    if (sgn(val) > 0) {
      ++positive;
      if (!is_prime(v["k"] + 2)) ++bad;
    }
  }
  if (o.json) {
    Json j = envelope("jones-eval");
    j["samples"] = o.random;
    j["positive"] = positive;
    j["violations"] = bad;
    out << j.dump() << "\n";
  } else {
    out << o.random << " samples, " << positive << " positive, " << bad << " violations\n";
  }
  return bad == 0 ? 0 : 1;
}

}  // namespace

const std::vector<std::string>& verbs() {
  static const std::vector<std::string> v{"parse",    "validate",    "member", "compile", "to-nat",   "to-int",
                                          "split",    "refute-prime-box", "classify", "check-proof", "simulate",
                                          "unfold",   "equiv",       "catalog", "ruiz",    "jones-eval"};
  return v;
}

const std::vector<std::pair<std::string, std::string>>& operation_verbs() {
  static const std::vector<std::pair<std::string, std::string>> m{
      {"parse_term", "parse"},
      {"eval_term", "parse"},
      {"eval_qf", "parse"},
      {"term_to_polynomial", "parse"},
      {"substitute", "parse"},
      {"validate_fcs_shape", "validate"},
      {"pp_to_fcs", "validate"},
      {"membership_bounded", "member"},
      {"catalog", "catalog"},
      {"jones_value", "jones-eval"},
      {"ruiz_nth_prime", "ruiz"},
      {"strict_lt_to_eq", "compile"},
      {"conjunction_to_single", "compile"},
      {"compile_to_diophantine", "compile"},
      {"four_square_decompose", "to-int"},
      {"int_to_nat", "to-nat"},
      {"nat_to_int", "to-int"},
      {"membership_lifted", "to-int"},
      {"split_positive", "split"},
      {"refute_prime_box", "refute-prime-box"},
      {"zero_pattern_classify", "classify"},
      {"check_proof", "check-proof"},
      {"unfold_D", "unfold"},
      {"simulate_fcs", "simulate"},
      {"build_unfold_equivalence", "equiv"},
      {"compose_by_cut", "equiv"},
  };
  return m;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"FCS definitions, Diophantine translations and sequent proofs", "fcs"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_option("--bound", o.bound, "witness search bound B");
  app.add_option("--seed", o.seed, "random seed");

  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  auto* parse = sub("parse", "parse and print a formula or term");
  parse->add_option("text", o.text)->required();
  parse->add_flag("--term", o.term, "parse a term");
  parse->add_flag("--poly", o.poly, "print the term as a polynomial");
  parse->add_option("--sig", o.sig, "L or Lminus");
  parse->add_option("--eval", o.eval, "evaluate at name=value,...");
  parse->add_option("--subst", o.subst, "substitute name=term,...");

  auto* validate = sub("validate", "check definitions for the FCS shape");
  validate->add_option("file", o.target);
  validate->add_option("--pp", o.pp, "convert a pp-formula first");
  validate->add_option("--arity", o.arity);
  validate->add_option("--name", o.def_name);
  validate->add_option("--sig", o.sig);

  auto* member = sub("member", "bounded membership with witness");
  member->add_option("definition", o.target)->required();
  member->add_option("values", o.words)->required();
  member->add_option("--def", o.def_name, "definition name within the file");

  auto* compile = sub("compile", "compile to a single Diophantine equation");
  compile->add_option("definition", o.target)->required();
  compile->add_option("--def", o.def_name);

  auto* to_nat = sub("to-nat", "translate an L definition into Lminus over N");
  to_nat->add_option("definition", o.target)->required();
  to_nat->add_option("--def", o.def_name);
  to_nat->add_flag("--no-output-sign", o.no_output_sign, "keep output variables unsigned");

  auto* to_int = sub("to-int", "translate an Lminus definition into L over Z");
  to_int->add_option("definition", o.target);
  to_int->add_option("--def", o.def_name);
  to_int->add_option("--four-square", o.four_square, "decompose N into four squares");
  to_int->add_option("--member", o.member_values, "comma-separated values to test on the output, with --bound");

  auto* split = sub("split", "split a polynomial into nonnegative parts");
  split->add_option("polynomial", o.text)->required();

  auto* refute = sub("refute-prime-box", "refute that a polynomial takes only prime values on a box");
  refute->add_option("polynomial", o.text)->required();
  refute->add_option("--box", o.box, "atoms 'x < c' or 'c < x' separated by ';'");
  refute->add_flag("--nat", o.nat, "variables range over N");
  refute->add_option("--budget", o.budget, "evaluation budget");

  auto* classify = sub("classify", "zero-pattern table of a nonnegative Diophantine form");
  classify->add_option("polynomial", o.text)->required();
  classify->add_option("--params", o.params, "comma-separated parameters")->required();

  auto* check = sub("check-proof", "check a proof file");
  check->add_option("file", o.target)->required();
  check->add_option("--ruleset", o.ruleset);

  auto* simulate = sub("simulate", "replace fcs rules by LKe inferences");
  simulate->add_option("file", o.target)->required();
  simulate->add_option("--ruleset", o.ruleset);
  simulate->add_flag("--keep-d", o.keep_d, "end expansions in D_L / D_R instead of unfolding");

  auto* unfold = sub("unfold", "unfold D and drop D_L / D_R");
  unfold->add_option("file", o.target)->required();
  unfold->add_option("--ruleset", o.ruleset);

  auto* equiv = sub("equiv", "proof of psi <-> psi[D\\phi]");
  equiv->add_option("definitions", o.target)->required();
  equiv->add_option("formula", o.text)->required();
  equiv->add_option("--ruleset", o.ruleset);
  equiv->add_option("--direction", o.direction, "both, forward or backward");
  equiv->add_option("--cut", o.cut, "LKe proof of the unfolded formula to cut with");
  equiv->add_option("--sig", o.sig);

  auto* cat = sub("catalog", "list catalog entries");
  cat->add_option("name", o.target);

  auto* ruiz = sub("ruiz", "n-th prime from the closed formula");
  ruiz->add_option("n", o.text)->required();
  ruiz->add_flag("--count", o.count, "print the prime count pi(n) instead");

  auto* jones = sub("jones-eval", "evaluate the prime-representing polynomial");
  jones->add_option("assignments", o.words);
  jones->add_option("--random", o.random, "fuzz with this many random valuations");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "fcs: " << e.what() << "\n" << app.help();
    return 2;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    if (verb == "parse") return verb_parse(o, out);
    if (verb == "validate") return verb_validate(o, out);
    if (verb == "member") return verb_member(o, out, err);
    if (verb == "compile") return print_report(dioph::compile_to_diophantine(resolve(o.target, o.def_name).def), o, out);
    if (verb == "to-nat") {
      dioph::IntToNatOptions opts;
      opts.expand_output_sign = !o.no_output_sign;
      return print_report(dioph::int_to_nat(resolve(o.target, o.def_name).def, opts), o, out);
    }
    if (verb == "to-int") return verb_to_int(o, out);
    if (verb == "split") return verb_split(o, out);
    if (verb == "refute-prime-box") return verb_refute(o, out, err);
    if (verb == "classify") return verb_classify(o, out);
    if (verb == "check-proof") return verb_check(o, out);
    if (verb == "simulate" || verb == "unfold") return verb_transform(verb, o, out, err);
    if (verb == "equiv") return verb_equiv(o, out);
    if (verb == "catalog") return verb_catalog(o, out);
    if (verb == "ruiz") return verb_ruiz(o, out);
    if (verb == "jones-eval") return verb_jones(o, out);
  } catch (const Error& e) {
    err << "fcs " << verb << ": " << e.what() << "\n";
    return 2;
  }
  err << "fcs: unknown verb\n";
  return 2;
}

}  // namespace fcs::cli
