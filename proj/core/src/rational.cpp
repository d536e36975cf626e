#include "sofic/rational.hpp"

#include <cctype>
#include <string>

#include "sofic/errors.hpp"

namespace sofic {

std::string to_string(const Rational& q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) /
         static_cast<double>(q.denominator());
}

namespace {

std::int64_t parse_int(const std::string& s, const std::string& whole) {
  if (s.empty()) throw ParseError("malformed rational: '" + whole + "'");
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("malformed rational: '" + whole + "'");
  }
  if (pos != s.size()) throw ParseError("malformed rational: '" + whole + "'");
  return v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator: '" + text + "'");
    return Rational(parse_int(text.substr(0, slash), text), den);
  }
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string int_part = text.substr(0, dot);
    const std::string frac_part = text.substr(dot + 1);
    if (frac_part.empty() || frac_part.size() > 15) {
      throw ParseError("malformed decimal: '" + text + "'");
    }
    for (char c : frac_part) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ParseError("malformed decimal: '" + text + "'");
      }
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const bool negative = !int_part.empty() && int_part[0] == '-';
    const std::int64_t whole =
        int_part.empty() || int_part == "-" ? 0 : parse_int(int_part, text);
    const std::int64_t frac = parse_int(frac_part, text);
    const std::int64_t num = whole * scale + (negative ? -frac : frac);
    return Rational(num, scale);
  }
  return Rational(parse_int(text, text));
}

}  // namespace sofic
