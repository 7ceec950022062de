#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace fcs {

using Int = mpz_class;

inline std::string to_string(const Int& v) { return v.get_str(); }

Int parse_int(const std::string& s);

// Floor of the square root; v must be nonnegative.
Int isqrt(const Int& v);
Int ceil_sqrt(const Int& v);

Int floor_div(const Int& a, const Int& b);

std::optional<std::int64_t> to_i64(const Int& v);

// Smallest prime factor found by trial division up to `limit`, or nullopt.
std::optional<Int> small_factor(const Int& v, const Int& limit);

bool is_prime_trial(const Int& v);

}  // namespace fcs
