#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "semireal/errors.hpp"

namespace semireal {

// Exact rational. GMP keeps values canonical (gcd 1, positive denominator)
// as long as every entry point canonicalizes, which q_parse and q_pow2 do.
//
// gmpxx arithmetic yields expression templates that hold references to their
// operands. A lambda with a deduced return type returning `x + y` hands the
// caller dangling references once its temporaries die. Any lambda or auto
// function producing rationals must declare `-> Q` (or assign to a named Q
// first) so the conversion happens while the operands are still alive.
using Q = mpq_class;

// Parses "num/den" or a bare integer "num". Denominator zero is rejected.
inline Q q_parse(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational");
  Q q;
  try {
    q = Q(text);
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational '" + text + "'");
  }
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

// Always "num/den", including "3/1"; the lossless wire form.
inline std::string q_str(const Q& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// 2^e for any integer e, exact.
inline Q q_pow2(long e) {
  mpz_class big = 1;
  mpz_mul_2exp(big.get_mpz_t(), big.get_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? -e : e));
  return e < 0 ? Q(1, big) : Q(big, 1);
}

inline Q q_abs(const Q& q) { return q < 0 ? Q(-q) : q; }

inline Q q_min(const Q& a, const Q& b) { return a < b ? a : b; }
inline Q q_max(const Q& a, const Q& b) { return a < b ? b : a; }

}  // namespace semireal
