#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include <boost/rational.hpp>

namespace kloo {

using Int = std::int64_t;
using Rational = boost::rational<Int>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Int lcm(Int a, Int b) { return std::lcm(a, b); }

}  // namespace kloo
