#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fcs/definition.hpp"
#include "fcs/formula.hpp"
#include "fcs/signature.hpp"
#include "fcs/term.hpp"

namespace fcs::sequent {

// Γ → Δ with ordered contexts. Formulas are compared up to bound-variable
// renaming everywhere in this module.
struct Sequent {
  std::vector<Formula> ant;
  std::vector<Formula> suc;
};

bool alpha_equal(const Sequent& a, const Sequent& b);
std::string to_string(const Sequent& s);

// Rule payload. Which fields matter depends on the rule:
//   index          position of the principal formula (left rules: antecedent,
//                  right rules: succedent); defaults to 0 on the left and to the
//                  last position on the right. Exchange swaps index and index+1;
//                  contraction merges them.
//   term           all_l, ex_r instance term
//   eigenvariable  all_r, ex_l
//   eigenvariables D_L_fcs (one per bound variable of the definition)
//   terms          D_R_fcs (one per bound variable)
//   formula        cut formula, or the equation s = t of eq_l / eq_r
//   pattern, var   eq_l / eq_r: principal is pattern[var\t], premise has pattern[var\s]
//   axiom, subst   theory: named axiom instantiated by subst
struct Detail {
  std::optional<std::size_t> index;
  std::optional<Term> term;
  std::optional<std::string> eigenvariable;
  std::vector<std::string> eigenvariables;
  std::vector<Term> terms;
  std::optional<Formula> formula;
  std::optional<Formula> pattern;
  std::string var;
  std::string axiom;
  std::map<std::string, Term> subst;
};

struct ProofNode {
  std::string rule;
  Sequent conclusion;
  Detail detail = {};
  std::vector<ProofNode> premises = {};
};

// Rule names accepted by the checker.
const std::vector<std::string>& rule_names();

enum class Calculus { LKe, LKe_D, LKe_fcs_D, LKe_D_fcs_D };

struct RuleSet {
  Calculus calculus = Calculus::LKe;
  std::vector<FcsDefinition> definitions;  // registry of defined predicate symbols

  bool admits_unfolding() const { return calculus == Calculus::LKe_D || calculus == Calculus::LKe_D_fcs_D; }
  bool admits_fcs() const { return calculus == Calculus::LKe_fcs_D || calculus == Calculus::LKe_D_fcs_D; }
  bool admits_predicates() const { return calculus != Calculus::LKe; }
  const FcsDefinition* find(const std::string& name) const;
  RuleSet with(Calculus c) const { return {c, definitions}; }
};

std::string calculus_name(Calculus c);
Calculus parse_calculus(const std::string& name);
// Smallest calculus admitting the rules of both.
Calculus join(Calculus a, Calculus b);

// Free variables of an axiom are read universally.
struct TheoryAxiom {
  std::string name;
  Sequent sequent;
};
using Theory = std::vector<TheoryAxiom>;

struct CheckResult {
  bool ok = true;
  std::string path;  // "root", "root.0", "root.0.1", ...
  std::string reason;
  explicit operator bool() const { return ok; }
};

// The first failing node in post-order is reported.
CheckResult check_proof(const ProofNode& p, const RuleSet& rs, const Theory& th = {});

// The local condition at a single node, ignoring the premises' own correctness.
std::optional<std::string> check_node(const ProofNode& n, const RuleSet& rs, const Theory& th = {});

struct ProofFile {
  RuleSet rules;
  Signature signature = Signature::L_int;
  Theory theory;
  ProofNode proof;
};

ProofFile parse_proof_file(const std::string& json_text);
std::string to_json(const ProofFile& f);

// Node access by path, for tooling and tests.
std::vector<std::string> node_paths(const ProofNode& p);
const ProofNode& node_at(const ProofNode& p, const std::string& path);
ProofNode& node_at(ProofNode& p, const std::string& path);
std::map<std::string, std::size_t> rule_counts(const ProofNode& p);
std::size_t size(const ProofNode& p);

// D(a1..ar) replaced by the defining pp-formula, for every registered D.
Formula unfold(const Formula& f, const RuleSet& rs);
Sequent unfold(const Sequent& s, const RuleSet& rs);

// Replace D by its definition and drop D_L / D_R nodes. The input must check
// under rs; the output is re-checked under LKe.
ProofNode unfold_D(const ProofNode& p, const RuleSet& rs, const Theory& th = {});

// Replace D by its definition, expanding D_L_fcs into ex_l then and_l steps and
// D_R_fcs into refl / and_r / ex_r steps. The input must check under rs; the
// output is re-checked under LKe. With keep_d the expansion ends in a D_L or
// D_R node instead and the result lives in LKe_D.
ProofNode simulate_fcs(const ProofNode& p, const RuleSet& rs, const Theory& th = {}, bool keep_d = false);

// Sequent proofs of psi → psi[D\phi] and psi[D\phi] → psi built by induction on
// psi, using D_L / D_R or the fcs rules depending on rs.
ProofNode build_unfold_implication(const Formula& psi, const RuleSet& rs, bool to_unfolded);
// A proof of → (psi -> psi[D\phi]) & (psi[D\phi] -> psi).
ProofNode build_unfold_equivalence(const Formula& psi, const RuleSet& rs);

// p proves Γ → Δ, chi and q proves chi, Π → Λ; the result is one cut node
// proving Γ, Π → Δ, Λ.
ProofNode compose_by_cut(const ProofNode& p, const Formula& chi, const ProofNode& q);

// Adds weakenings so that p proves `target`; p's conclusion must embed into it
// in order on both sides.
ProofNode weaken_to(const ProofNode& p, const Sequent& target);

}  // namespace fcs::sequent
