#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fcs/bound_map.hpp"
#include "fcs/definition.hpp"
#include "fcs/membership.hpp"
#include "fcs/polynomial.hpp"
#include "fcs/search.hpp"

namespace fcs::dioph {

// exists x1..xw . H(y1..yr, x1..xw) = 0
struct DiophantineForm {
  std::vector<std::string> params;
  std::vector<std::string> existentials;
  Polynomial poly;
  Signature signature = Signature::L_int;
};

std::string to_string(const DiophantineForm& f);

struct RewriteStep {
  std::string name;
  std::string before;
  std::string after;
  std::string bound_map;  // closed form of this step's map
  std::vector<std::string> notes;
};

// Source of a four-square substitution: each source variable became the sum
// of the squares of its parts.
struct SquareLifting {
  FcsDefinition source;
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  std::optional<std::vector<search::Constraint>> source_search_form;
};

struct TransformReport {
  std::variant<FcsDefinition, DiophantineForm> output;
  WitnessBoundMap bound_map;
  std::vector<RewriteStep> steps;
  // Constraints equivalent to the output's atoms (or H = 0), over the same
  // variables, in a shape the search prunes well. Never used for verdicts
  // without replaying the witness on the literal output.
  std::optional<std::vector<search::Constraint>> search_form;
  std::optional<SquareLifting> lifting;  // set by nat_to_int

  const FcsDefinition& definition() const { return std::get<FcsDefinition>(output); }
  const DiophantineForm& form() const { return std::get<DiophantineForm>(output); }
  std::string output_text() const;
};

std::string to_text(const TransformReport& r);
std::string to_json(const TransformReport& r);

// g1 < g2 as exists z1..z4 . g2 - g1 = z1^2 + ... + z4^2 + 1 (L), or
// g2 = g1 + z1^2 + ... + z4^2 + 1 (Lminus). Fresh names avoid `avoid`.
struct LtBlock {
  std::vector<std::string> zs;
  Atom eq;
  WitnessBoundMap bound_map;
};
LtBlock strict_lt_to_eq(const Atom& a, Signature sig, const std::set<std::string>& avoid);

// sum of h_i^2
Polynomial conjunction_to_single(const std::vector<Polynomial>& eqs);

TransformReport compile_to_diophantine(const FcsDefinition& def);

// Bounded solvability of H(params, x) = 0 with x in the box of `bound`;
// shell order as in membership. The witness is checked against H.
std::optional<Valuation> solve_bounded(const DiophantineForm& f, const std::vector<Int>& params, const Int& bound,
                                       const std::vector<search::Constraint>* search_form = nullptr,
                                       search::Stats* stats = nullptr);

// a >= b >= c >= d >= 0 with a^2 + b^2 + c^2 + d^2 = n; the first such tuple
// in descending order of (a, b, c).
std::array<Int, 4> four_square_decompose(const Int& n);
// Same order, restricted to entries <= cap; none when n needs a larger entry.
std::optional<std::array<Int, 4>> four_square_within(const Int& n, const Int& cap);

// Product of f(s1*v1, ..., sk*vk) over all sign vectors s for the listed
// variables, keeping one factor per class of instances equal up to sign.
// Phi = 0 has an N-solution iff f = 0 has a Z-solution.
struct SignExpansion {
  std::vector<Polynomial> factors;
  std::vector<std::map<std::string, bool>> flips;  // negated variables per kept factor
  std::size_t instances = 0;                        // 2^k before deduplication
  Polynomial phi;
};
SignExpansion sign_expand(const Polynomial& f, const std::vector<std::string>& vars);

struct IntToNatOptions {
  // Sign-expand the output variables like every other variable. The result
  // then holds at a >= 0 when either a or -a is in the source relation.
  bool expand_output_sign = true;
};
inline constexpr std::size_t kMaxSignVariables = 13;

TransformReport int_to_nat(const FcsDefinition& def, const IntToNatOptions& opts = {});
TransformReport nat_to_int(const FcsDefinition& def,
                           const std::vector<search::Constraint>* search_form = nullptr);

// Bounded membership of a nat_to_int output over its box [-B,B]^(4n), decided
// through the source variables: the output depends on each group of parts
// only through their sum of squares, so the box holds a witness iff the source
// has one whose values are sums of four squares with entries <= B. The verdict
// is exact for the box; the witness returned is a decoded one replayed on the
// output, not necessarily the first in shell order.
MembershipResult membership_lifted(const TransformReport& rep, const std::vector<Int>& tuple, const Int& bound);

// p = first - second, both with nonnegative coefficients.
std::pair<Polynomial, Polynomial> split_positive(const Polynomial& p);

struct Refutation {
  enum class Kind { CompositeValue, NonpositiveOrUnitValue, ForcedConstant };
  Kind kind = Kind::CompositeValue;
  // CompositeValue / NonpositiveOrUnitValue
  Valuation point;
  Int value;
  Int factor;
  // ForcedConstant: f(d + p*z*e) = p at every recorded z
  Int prime;
  Valuation base;
  std::string direction;
  std::vector<std::pair<Int, Int>> congruence_witnesses;  // (z, f(d + p*z*e))
  std::uint64_t evaluations = 0;

  // Checks the invariants of the kind plus membership of the points in the box.
  bool verify(const Polynomial& f, const std::vector<Atom>& box, search::Domain domain) const;
};

std::string to_string(const Refutation& r);

struct RefuteOptions {
  search::Domain domain = search::Domain::Int;
  std::uint64_t budget = 1000000;  // polynomial evaluations
};

// Box atoms have the shape x < c or c < x with c closed.
Refutation refute_prime_box(const Polynomial& f, const std::vector<Atom>& box, const RefuteOptions& opts = {});

struct ZeroPattern {
  std::vector<bool> zero;  // per parameter
  std::uint64_t in = 0;
  std::uint64_t out = 0;
  bool uniform() const { return in == 0 || out == 0; }
};

struct PatternTable {
  Int bound;
  std::vector<ZeroPattern> patterns;  // ordered by bitmask, bit i = parameter i is zero
  bool consistent = true;             // every pattern uniform
  std::string describe() const;
};

PatternTable zero_pattern_classify(const DiophantineForm& form, const Int& bound);

}  // namespace fcs::dioph
