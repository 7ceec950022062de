#pragma once

#include <string>

namespace fcs {

// L_int is {0,1,+,-,*,=,<} read over the integers; Lminus_nat drops minus and
// is read over the naturals.
enum class Signature { L_int, Lminus_nat };

inline bool allows_minus(Signature s) { return s == Signature::L_int; }

// Names used by the definition file format.
inline const char* signature_tag(Signature s) { return s == Signature::L_int ? "L" : "Lminus"; }

Signature parse_signature_tag(const std::string& tag);

}  // namespace fcs
