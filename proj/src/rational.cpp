#include "rum/rational.hpp"

#include "rum/errors.hpp"

namespace rum {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational");
  for (char c : text) {
    if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
      throw ParseError("bad rational: " + std::string(text));
  }
  mpq_class q;
  if (q.set_str(std::string(text), 10) != 0)
    throw ParseError("bad rational: " + std::string(text));
  if (q.get_den() == 0) throw ParseError("zero denominator: " + std::string(text));
  q.canonicalize();
  return q;
}

}  // namespace rum
