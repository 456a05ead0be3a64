#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace planefol {

// All scalar arithmetic in the library is exact.  Rationals are GMP-backed;
// mpq_class already keeps values canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

struct FieldMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivisionByZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// mpq_class(n, d) does not canonicalize; always go through this helper (or
// canonicalize manually) when building a rational from a raw pair.
inline Rational rat_of(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// "p/q" with the "/q" part omitted for integers.  Used verbatim in reports.
inline std::string rat_str(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational rat_parse(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

// Exact square test; on success *root is the nonnegative square root.
inline bool rat_is_square(const Rational& r, Rational* root = nullptr) {
  if (sgn(r) < 0) return false;
  const Integer &num = r.get_num(), &den = r.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  if (root) {
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    *root = Rational(sn, sd);
    root->canonicalize();
  }
  return true;
}

}  // namespace planefol
