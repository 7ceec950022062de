#include <json.hpp>

#include "fcs/error.hpp"
#include "fcs/parser.hpp"
#include "fcs/sequent.hpp"

namespace fcs::sequent {

namespace {

using Json = nlohmann::ordered_json;

std::vector<Formula> formulas(const Json& j, Signature sig, const char* what) {
  if (!j.is_array()) throw Error(std::string("proof file: '") + what + "' must be an array");
  std::vector<Formula> out;
  for (const auto& x : j) out.push_back(parse_formula(x.get<std::string>(), sig));
  return out;
}

Json formulas_json(const std::vector<Formula>& fs) {
  Json a = Json::array();
  for (const auto& f : fs) a.push_back(to_string(f));
  return a;
}

Sequent sequent_from(const Json& j, Signature sig) {
  if (!j.is_object()) throw Error("proof file: sequent must be an object");
  return {formulas(j.value("ant", Json::array()), sig, "ant"), formulas(j.value("suc", Json::array()), sig, "suc")};
}

Json sequent_json(const Sequent& s) { return Json{{"ant", formulas_json(s.ant)}, {"suc", formulas_json(s.suc)}}; }

Detail detail_from(const Json& j, Signature sig) {
  Detail d;
  if (!j.is_object()) throw Error("proof file: detail must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const Json& v = it.value();
    if (k == "index") d.index = v.get<std::size_t>();
    else if (k == "term") d.term = parse_term(v.get<std::string>(), sig);
    else if (k == "eigenvariable") d.eigenvariable = v.get<std::string>();
    else if (k == "eigenvariables") d.eigenvariables = v.get<std::vector<std::string>>();
    else if (k == "terms")
      for (const auto& t : v) d.terms.push_back(parse_term(t.get<std::string>(), sig));
    else if (k == "formula") d.formula = parse_formula(v.get<std::string>(), sig);
    else if (k == "pattern") d.pattern = parse_formula(v.get<std::string>(), sig);
    else if (k == "var") d.var = v.get<std::string>();
    else if (k == "axiom") d.axiom = v.get<std::string>();
    else if (k == "subst")
      for (auto s = v.begin(); s != v.end(); ++s) d.subst.emplace(s.key(), parse_term(s.value().get<std::string>(), sig));
    else throw Error("proof file: unknown detail field '" + k + "'");
  }
  return d;
}

Json detail_json(const Detail& d) {
  Json j = Json::object();
  if (d.index) j["index"] = *d.index;
  if (d.term) j["term"] = to_string(*d.term);
  if (d.eigenvariable) j["eigenvariable"] = *d.eigenvariable;
  if (!d.eigenvariables.empty()) j["eigenvariables"] = d.eigenvariables;
  if (!d.terms.empty()) {
    Json a = Json::array();
    for (const auto& t : d.terms) a.push_back(to_string(t));
    j["terms"] = a;
  }
  if (d.formula) j["formula"] = to_string(*d.formula);
  if (d.pattern) j["pattern"] = to_string(*d.pattern);
  if (!d.var.empty()) j["var"] = d.var;
  if (!d.axiom.empty()) j["axiom"] = d.axiom;
  if (!d.subst.empty()) {
    Json s = Json::object();
    for (const auto& [k, t] : d.subst) s[k] = to_string(t);
    j["subst"] = s;
  }
  return j;
}

ProofNode node_from(const Json& j, Signature sig) {
  if (!j.is_object() || !j.contains("rule") || !j.contains("conclusion"))
    throw Error("proof file: node needs 'rule' and 'conclusion'");
  ProofNode n{j["rule"].get<std::string>(), sequent_from(j["conclusion"], sig)};
  if (j.contains("detail")) n.detail = detail_from(j["detail"], sig);
  if (j.contains("premises"))
    for (const auto& p : j["premises"]) n.premises.push_back(node_from(p, sig));
  return n;
}

Json node_json(const ProofNode& n) {
  Json ps = Json::array();
  for (const auto& p : n.premises) ps.push_back(node_json(p));
  return Json{{"rule", n.rule}, {"conclusion", sequent_json(n.conclusion)}, {"detail", detail_json(n.detail)},
              {"premises", ps}};
}

}  // namespace

ProofFile parse_proof_file(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("proof file: ") + e.what());
  }
  try {
    if (!j.is_object()) throw Error("proof file: top level must be an object");
    if (j.value("schema", std::string()) != "fcs/1") throw Error("proof file: expected schema fcs/1");
    ProofFile f;
    f.signature = parse_signature_tag(j.value("signature", std::string("L")));
    f.rules.calculus = parse_calculus(j.value("ruleset", std::string("LKe")));
    for (const auto& d : j.value("definitions", Json::array())) f.rules.definitions.push_back(parse_definition(d.get<std::string>()));
    for (const auto& a : j.value("theory", Json::array()))
      f.theory.push_back({a.at("name").get<std::string>(), sequent_from(a, f.signature)});
    if (!j.contains("proof")) throw Error("proof file: missing 'proof'");
    f.proof = node_from(j["proof"], f.signature);
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("proof file: ") + e.what());
  }
}

std::string to_json(const ProofFile& f) {
  Json defs = Json::array();
  for (const auto& d : f.rules.definitions) defs.push_back(to_string(d));
  Json th = Json::array();
  for (const auto& a : f.theory)
    th.push_back(Json{{"name", a.name}, {"ant", formulas_json(a.sequent.ant)}, {"suc", formulas_json(a.sequent.suc)}});
  Json j{{"schema", "fcs/1"},      {"ruleset", calculus_name(f.rules.calculus)},
         {"signature", signature_tag(f.signature)}, {"definitions", defs},
         {"theory", th},           {"proof", node_json(f.proof)}};
  return j.dump(2) + "\n";
}

}  // namespace fcs::sequent
