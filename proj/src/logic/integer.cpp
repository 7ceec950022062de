#include "fcs/integer.hpp"

#include "fcs/error.hpp"

namespace fcs {

Int parse_int(const std::string& s) {
  Int v;
  if (s.empty() || v.set_str(s, 10) != 0) throw Error("not an integer: '" + s + "'");
  return v;
}

Int isqrt(const Int& v) {
  if (sgn(v) < 0) throw Error("square root of a negative number");
  Int r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

Int ceil_sqrt(const Int& v) {
  if (sgn(v) <= 0) return 0;
  Int r = isqrt(v);
  if (r * r < v) r += 1;
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  if (sgn(b) == 0) throw Error("division by zero");
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

std::optional<std::int64_t> to_i64(const Int& v) {
  if (!mpz_fits_slong_p(v.get_mpz_t())) return std::nullopt;
  return static_cast<std::int64_t>(v.get_si());
}

std::optional<Int> small_factor(const Int& v, const Int& limit) {
  Int n = abs(v);
  if (n < 4) return std::nullopt;
  if (mpz_even_p(n.get_mpz_t())) return Int(2);
  for (Int d = 3; d * d <= n && d <= limit; d += 2) {
    if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return d;
  }
  return std::nullopt;
}

bool is_prime_trial(const Int& v) {
  if (v < 2) return false;
  if (v < 4) return true;
  if (mpz_even_p(v.get_mpz_t())) return false;
  for (Int d = 3; d * d <= v; d += 2) {
    if (mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t())) return false;
  }
  return true;
}

}  // namespace fcs
