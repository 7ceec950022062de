#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fcs/definition.hpp"
#include "fcs/polynomial.hpp"

namespace fcs {

struct CatalogEntry {
  FcsDefinition def;
  std::string description;
  // Search bound that suffices for the given tuple, and its formula in words.
  std::function<Int(const std::vector<Int>&)> sufficient_bound;
  std::string bound_formula;
  // Definition to use for a given tuple; differs from `def` only for
  // per-instance families such as perfect_number.
  std::function<FcsDefinition(const std::vector<Int>&)> instance;
  bool witness_search = true;
};

const std::vector<CatalogEntry>& catalog();
// Throws Error for unknown names.
const CatalogEntry& catalog_entry(const std::string& name);
std::vector<FcsDefinition> catalog_definitions();

// {N} when N is perfect, empty otherwise: bound n, s; out n;
// atoms n = N, s = (sum of the positive divisors of N), 2*n = s.
FcsDefinition perfect_number_instance(const Int& N);
Int divisor_sum(const Int& N);

// The 26-variable prime-representing polynomial of Jones, Sato, Wada and
// Wiens over the letters a..z; its positive values are exactly the primes,
// attained when the value equals k + 2.
const std::vector<std::string>& jones_variables();
const Term& jones_term();
const Polynomial& jones_polynomial();  // expanded once on first use
Int jones_value(const Valuation& v);

// p_n from the closed floor/sum formula:
//   pi(k) = sum_{j=2..k} (1 + floor(-(sum_{s=1..j} (floor(j/s) - floor((j-1)/s)) - 2) / j))
//   p_n   = 1 + sum_{k=1..2(floor(n ln n)+1)} (1 - floor(pi(k)/n))
// The inner sum counts divisors of j, so each summand of pi is 1 exactly when j is prime.
Int ruiz_prime_count(const Int& k);
Int ruiz_nth_prime(unsigned n);

}  // namespace fcs
