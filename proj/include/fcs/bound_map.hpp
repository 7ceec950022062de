#pragma once

#include <functional>
#include <string>

#include "fcs/integer.hpp"

namespace fcs {

// B -> B': a search bound for a source definition mapped to one that suffices
// for a transformed definition. Kept as a function plus its closed form over B.
class WitnessBoundMap {
 public:
  using Fn = std::function<Int(const Int&)>;

  WitnessBoundMap();  // identity
  // `expr` is the closed form with the token B standing for the input bound.
  WitnessBoundMap(std::string expr, Fn fn);

  // This map followed by `next`.
  WitnessBoundMap then(const WitnessBoundMap& next) const;

  Int operator()(const Int& B) const { return fn_(B); }
  const std::string& expression() const { return expr_; }
  bool is_identity() const { return expr_ == "B"; }

 private:
  std::string expr_;
  Fn fn_;
};

}  // namespace fcs
