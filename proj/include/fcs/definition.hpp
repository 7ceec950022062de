#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fcs/formula.hpp"
#include "fcs/signature.hpp"
#include "fcs/term.hpp"

namespace fcs {

// D(a_1..a_r) holds iff some values of bound_vars make a_i = t_i for every i
// and satisfy every atom.
struct FcsDefinition {
  std::string name;
  std::size_t arity = 0;
  std::vector<std::string> bound_vars;
  std::vector<Term> out_terms;
  std::vector<Atom> atoms;
  Signature signature = Signature::L_int;
};

struct Violation {
  std::string kind;  // "arity", "name", "bound variable", "unbound variable", "signature"
  std::string message;
};

std::vector<Violation> validate_fcs_shape(const FcsDefinition& d);
std::string to_string(const Violation& v);

// Definition file format, one or more per file, '#' starts a comment:
//   def NAME/ARITY over L|Lminus bound x1,...,xn out t1,...,tr [where A1; ...; Am]
FcsDefinition parse_definition(const std::string& text);
std::vector<FcsDefinition> parse_definition_file(const std::string& text);
std::string to_string(const FcsDefinition& d);

// The pp-formula exists x1..xn (a1 = t1 & ... & ar = tr & A1 & ... & Am)
// instantiated at `args`, conjuncts right-nested.
Formula definition_formula(const FcsDefinition& d, const std::vector<Term>& args);

// Conjuncts of the body of definition_formula with the bound variables
// replaced by `witnesses` (simultaneously) and the parameters by `args`.
std::vector<Formula> definition_conjuncts(const FcsDefinition& d, const std::vector<Term>& args,
                                          const std::vector<Term>& witnesses);

// pp-formula with designated parameters -> definition. A parameter that occurs
// only in one atom `a = t` (t free of parameters) takes t as its out-term;
// every other parameter gets a fresh bound variable as out-term.
FcsDefinition pp_to_fcs(const Formula& f, const std::vector<std::string>& params, Signature sig,
                        const std::string& name = "D");
// Parameters are the free variables of f in sorted order; their count must be `arity`.
FcsDefinition pp_to_fcs(const Formula& f, std::size_t arity, Signature sig, const std::string& name = "D");

}  // namespace fcs
