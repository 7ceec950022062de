#pragma once

// Seeded generators shared by the property tests.

#include <random>
#include <string>
#include <vector>

#include "fcs/formula.hpp"
#include "fcs/term.hpp"

namespace fcs::gen {

inline Term random_term(std::mt19937_64& rng, int depth, bool minus, const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : (minus ? 6 : 4));
  switch (pick(rng)) {
    case 0: return Term::var(vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)]);
    case 1: return std::uniform_int_distribution<int>(0, 1)(rng) ? Term::one() : Term::zero();
    case 2: return Term::numeral(std::uniform_int_distribution<int>(0, 9)(rng));
    case 3: return Term::add(random_term(rng, depth - 1, minus, vars), random_term(rng, depth - 1, minus, vars));
    case 4: return Term::mul(random_term(rng, depth - 1, minus, vars), random_term(rng, depth - 1, minus, vars));
    case 5: return Term::neg(random_term(rng, depth - 1, minus, vars));
    default: return Term::sub(random_term(rng, depth - 1, minus, vars), random_term(rng, depth - 1, minus, vars));
  }
}

inline Formula random_formula(std::mt19937_64& rng, int depth, bool minus, const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 8);
  auto sub = [&] { return random_formula(rng, depth - 1, minus, vars); };
  auto term = [&] { return random_term(rng, std::min(depth, 3), minus, vars); };
  auto var = [&] { return vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)]; };
  switch (pick(rng)) {
    case 0: return Formula::eq(term(), term());
    case 1: return Formula::lt(term(), term());
    case 2: return Formula::conj(sub(), sub());
    case 3: return Formula::disj(sub(), sub());
    case 4: return Formula::negation(sub());
    case 5: return Formula::implies(sub(), sub());
    case 6: return Formula::forall(var(), sub());
    case 7: return Formula::exists(var(), sub());
    default: return Formula::pred("P", {term(), term()});
  }
}

}  // namespace fcs::gen
