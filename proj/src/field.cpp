#include "qma/field.hpp"

#include <cctype>
#include <cstdio>

#include "qma/errors.hpp"

namespace qma {

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  std::string buf(s.front() == '+' ? s.substr(1) : s);
  return Integer(buf, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!is_integer_literal(num)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  Rational out;
  if (slash == std::string_view::npos) {
    out = Rational(parse_integer(num));
  } else {
    const auto den = text.substr(slash + 1);
    if (!is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
      throw ParseError("malformed denominator in '" + std::string(text) + "'");
    }
    const Integer d = parse_integer(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    out = Rational(parse_integer(num), d);
  }
  out.canonicalize();
  return out;
}

std::string FieldTraits<double>::format(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace qma
