#pragma once

#include <gmpxx.h>

#include <string>

namespace gfl {

// Exact rational arithmetic for closed forms and oracle solves. mpq_class
// keeps values reduced with a positive denominator.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// "p/q", or just "p" when the denominator is 1.
inline std::string to_fraction(const Rational& q) { return q.get_str(); }

// Float rendering is a view only, never an intermediate.
inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace gfl
