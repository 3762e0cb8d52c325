#ifndef RUM_RATIONAL_HPP
#define RUM_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace rum {

// All identification-critical arithmetic is exact; Rational is the only
// number type allowed outside the parametric module.
using Rational = mpq_class;
using RatVec = std::vector<Rational>;

// Canonical "p" / "p/q" form, matching the wire format used in JSON files.
std::string to_string(const Rational& q);

// Parses "p", "-p", "p/q". Throws rum::ParseError on malformed input or a
// zero denominator.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace rum

#endif
