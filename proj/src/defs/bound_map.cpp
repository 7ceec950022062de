#include "fcs/bound_map.hpp"

#include <cctype>

namespace fcs {

WitnessBoundMap::WitnessBoundMap() : expr_("B"), fn_([](const Int& b) { return b; }) {}

WitnessBoundMap::WitnessBoundMap(std::string expr, Fn fn) : expr_(std::move(expr)), fn_(std::move(fn)) {}

namespace {

std::string plug(const std::string& outer, const std::string& inner) {
  auto word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  std::string out;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    bool token = outer[i] == 'B' && (i == 0 || !word(outer[i - 1])) && (i + 1 == outer.size() || !word(outer[i + 1]));
    if (token) out += inner == "B" ? inner : "(" + inner + ")";
    else out += outer[i];
  }
  return out;
}

}  // namespace

WitnessBoundMap WitnessBoundMap::then(const WitnessBoundMap& next) const {
  if (is_identity()) return next;
  if (next.is_identity()) return *this;
  Fn a = fn_, b = next.fn_;
  return WitnessBoundMap(plug(next.expr_, expr_), [a, b](const Int& B) { return b(a(B)); });
}

}  // namespace fcs
