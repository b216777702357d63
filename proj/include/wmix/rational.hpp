#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace wmix {

/// Arbitrary-precision rational, used where a certificate must be checked in
/// exact arithmetic (monomial Gram entries and the operator-growth bounds).
using BigRational = boost::multiprecision::cpp_rational;

inline BigRational rat(std::int64_t num, std::int64_t den = 1) {
  return BigRational(num, den);
}

inline double to_double(const BigRational& r) { return r.convert_to<double>(); }

}  // namespace wmix
