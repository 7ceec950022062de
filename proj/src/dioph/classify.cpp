#include "fcs/dioph.hpp"
#include "fcs/error.hpp"

namespace fcs::dioph {

PatternTable zero_pattern_classify(const DiophantineForm& form, const Int& bound) {
  if (!form.poly.nonnegative_coefficients())
    throw Error("zero_pattern_classify: H must have nonnegative coefficients");
  if (form.params.size() > 16) throw Error("zero_pattern_classify: too many parameters");
  auto b = to_i64(bound);
  if (!b || *b < 0) throw Error("zero_pattern_classify: bad bound");
  DiophantineForm nat = form;
  nat.signature = Signature::Lminus_nat;
  const std::size_t r = form.params.size();
  PatternTable t;
  t.bound = bound;
  t.patterns.resize(std::size_t{1} << r);
  for (std::size_t mask = 0; mask < t.patterns.size(); ++mask)
    for (std::size_t i = 0; i < r; ++i) t.patterns[mask].zero.push_back((mask >> i) & 1);

  std::vector<Int> tuple(r, 0);
  for (;;) {
    std::size_t mask = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (sgn(tuple[i]) == 0) mask |= std::size_t{1} << i;
    bool in = solve_bounded(nat, tuple, bound).has_value();
    (in ? t.patterns[mask].in : t.patterns[mask].out)++;
    std::size_t i = 0;
    while (i < r && tuple[i] == *b) tuple[i++] = 0;
    if (i == r) break;
    ++tuple[i];
  }
  for (const auto& p : t.patterns) t.consistent = t.consistent && p.uniform();
  return t;
}

std::string PatternTable::describe() const {
  std::string s = "bound " + fcs::to_string(bound) + "\n";
  std::vector<std::string> members;
  for (const auto& p : patterns) {
    std::string shape;
    for (std::size_t i = 0; i < p.zero.size(); ++i) shape += (i ? " x " : "") + std::string(p.zero[i] ? "{0}" : "N>0");
    if (shape.empty()) shape = "()";
    std::string verdict = !p.uniform() ? "mixed" : (p.in ? "in" : "out");
    s += "  " + shape + ": " + verdict + " (" + std::to_string(p.in) + " in, " + std::to_string(p.out) + " out)\n";
    if (p.uniform() && p.in) members.push_back(shape);
  }
  s += consistent ? "consistent at bound " + fcs::to_string(bound) + " with a union of products of {0} and N>0"
                  : "inconsistent at bound " + fcs::to_string(bound) + ": some zero pattern is mixed";
  s += "\n";
  if (consistent) {
    s += "  set: ";
    if (members.empty()) s += "empty";
    for (std::size_t i = 0; i < members.size(); ++i) s += (i ? " | " : "") + members[i];
    s += "\n";
  }
  return s;
}

}  // namespace fcs::dioph
