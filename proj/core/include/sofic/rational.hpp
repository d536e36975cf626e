#ifndef SOFIC_RATIONAL_HPP
#define SOFIC_RATIONAL_HPP

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace sofic {

using Rational = boost::rational<std::int64_t>;

// Always "num/den", including integers ("0/1", "1/1").
std::string to_string(const Rational& q);

// Accepts "num/den", an integer, or a finite decimal such as "0.125".
Rational parse_rational(const std::string& text);

double to_double(const Rational& q);

}  // namespace sofic

#endif  // SOFIC_RATIONAL_HPP
