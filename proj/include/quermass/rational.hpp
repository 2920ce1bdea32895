#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace quermass {

// Exact arbitrary-precision scalars. cpp_rational keeps values in lowest
// terms with a positive denominator, which is exactly the invariant the
// identity suite relies on.
using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

inline BigInt factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    BigInt f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace quermass
