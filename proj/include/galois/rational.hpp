#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace galois {

/// Exact support/confidence values. Counts are bounded by object counts, so 64 bits suffice.
using Rational = boost::rational<std::int64_t>;

/// "p/q" in lowest terms; integers print as "p/1" so the wire format stays uniform.
std::string to_string(const Rational& r);

/// Accepts "p/q", an integer, or a decimal such as "0.7".
Rational parse_rational(const std::string& text);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace galois
