#pragma once

#include <functional>
#include <vector>

#include "fcs/definition.hpp"
#include "fcs/search.hpp"

namespace fcs {

struct MembershipResult {
  enum class Status { Member, UnknownAtBound };
  Status status = Status::UnknownAtBound;
  Valuation witness;  // values of the bound variables when Member
  Int bound;

  bool member() const { return status == Status::Member; }
};

struct MembershipOptions {
  // Constraints over the bound variables equivalent to the conjunction of the
  // atoms. Only steers the search; witnesses are still replayed on the atoms.
  const std::vector<search::Constraint>* search_form = nullptr;
  search::Stats* stats = nullptr;
  // Narrows the box to the accepted points (pinned values included).
  std::function<bool(const Valuation&)> accept;
};

// Bounded witness search over [-B,B]^n (L) or [0,B]^n (Lminus). The witness
// returned is the first in shell order: least max-norm, then lexicographic by
// bound_vars with each coordinate ordered 0, 1, -1, 2, -2, ...; hence a member
// at B is a member at every larger bound with the same witness.
MembershipResult membership_bounded(const FcsDefinition& d, const std::vector<Int>& tuple, const Int& bound,
                                    const MembershipOptions& opts = {});

// The atoms of d as search constraints (eq: lhs - rhs = 0, lt: rhs - lhs > 0).
std::vector<search::Constraint> atom_constraints(const std::vector<Atom>& atoms);

search::Domain domain_of(Signature s);

}  // namespace fcs
