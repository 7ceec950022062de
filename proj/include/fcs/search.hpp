#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fcs/integer.hpp"
#include "fcs/term.hpp"

namespace fcs::search {

enum class Domain { Int, Nat };

struct Constraint {
  enum class Kind { EqZero, Positive };
  Term expr;
  Kind kind;
};

// Find values for `vars` in a box such that every constraint holds.
// Variables listed in `fixed` are constants (parameters or pinned values).
// Solutions assign exactly `vars`.
struct Problem {
  std::vector<std::string> vars;
  Valuation fixed;
  std::vector<Constraint> constraints;
  Domain domain = Domain::Int;
  // Extra test on complete assignments (fixed values included); rejected
  // points are skipped and the scan continues in the same order.
  std::function<bool(const Valuation&)> accept;
};

struct Stats {
  std::uint64_t nodes = 0;
};

// First solution in lexicographic order over `vars` (first variable outermost),
// each coordinate ordered 0, 1, -1, 2, -2, ... over Int and 0, 1, 2, ... over
// Nat, restricted to |v| <= bound. Interval and congruence bounds prune whole
// sub-boxes, so the result equals plain enumeration without visiting every point.
std::optional<Valuation> first_solution(const Problem& p, const Int& bound, Stats* stats = nullptr);

// First solution in shell order: smallest max-norm shell s <= bound first,
// then lexicographic within that shell. Solutions found at one bound are found
// again, unchanged, at every larger bound. `min_shell` is a known lower bound.
std::optional<Valuation> first_solution_graded(const Problem& p, const Int& bound, const Int& min_shell = 0,
                                               Stats* stats = nullptr);

// Plain enumeration in the same lexicographic order; test oracle.
std::optional<Valuation> brute_force(const Problem& p, const Int& bound);

bool satisfies(const Problem& p, const Valuation& v);

// Interval enclosure of t when every variable outside `fixed` ranges over the
// box of radius `bound` in `domain`. Squares t*t are recognized.
std::pair<Int, Int> term_range(const Term& t, const Int& bound, Domain domain, const Valuation& fixed = {});

}  // namespace fcs::search
