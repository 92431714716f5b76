#pragma once

#include <gmpxx.h>

#include <string>

namespace ffk {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical "numerator/denominator" text, lowest terms, sign on the numerator.
/// Integers keep the "/1" suffix.
inline std::string to_string(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "n/d" or "n"; throws std::invalid_argument on malformed text.
Rational parse_rational(const std::string& text);

inline Rational make_rational(long num, long den = 1)
{
    Rational q{Integer(num), Integer(den)};
    q.canonicalize();
    return q;
}

}  // namespace ffk
