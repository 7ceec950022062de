#pragma once

#include <string>

#include "fcs/formula.hpp"
#include "fcs/signature.hpp"
#include "fcs/term.hpp"

namespace fcs {

// Grammar (ASCII):
//   term    ::= sum ;  sum ::= prod (('+'|'-') prod)* ;  prod ::= pow ('*' pow)*
//   pow     ::= unary ('^' nat)? ;  unary ::= '-' unary | ident | nat | '(' term ')'
//   atom    ::= term ('=' | '<' | '<=') term
//   formula ::= disj ('->' formula)? ;  disj ::= conj ('|' conj)* ;  conj ::= un ('&' un)*
//   un      ::= '~' un | ('forall'|'exists') ident (',' ident)* '.' formula
//             | Name '(' term (',' term)* ')' | atom | '(' formula ')'
// Numerals and '^' are surface sugar; '<=' reads as '< t + 1'.
Term parse_term(const std::string& text, Signature sig);
Atom parse_atom(const std::string& text, Signature sig);
Formula parse_formula(const std::string& text, Signature sig);

bool is_identifier(const std::string& s);

}  // namespace fcs
