#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace palrich {

using big_int = boost::multiprecision::cpp_int;
using big_rational = boost::multiprecision::cpp_rational;

inline big_int big_pow(std::uint64_t base, std::uint64_t exponent) {
  return boost::multiprecision::pow(big_int(base), static_cast<unsigned>(exponent));
}

}  // namespace palrich
