// Exact scalar types. All coefficient arithmetic in this project is over
// the rationals, backed by GMP. No floating point is used anywhere.
#pragma once

#include <gmpxx.h>

#include <string>

namespace qmrel {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// "7", "-3/2". Denominator is omitted when it is 1.
inline std::string rational_text(const Rational& r) { return r.get_str(); }

}  // namespace qmrel
