#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rlnc {

// All counting is exact. Probabilities stay rational end to end; they are
// converted to decimal text only at the output boundary (to_decimal_string).
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Binomial coefficient C(m, d). Returns 0 when d < 0 or d > m.
BigInt binomial(long m, long d);

/// Gaussian binomial coefficient: the number of d-dimensional subspaces of
/// an m-dimensional vector space over F_q. Returns 0 when d < 0 or d > m.
/// Memoized on (m, d, q); the cache is guarded by a mutex, so concurrent
/// callers always observe identical results.
BigInt gaussian_binomial(long m, long d, std::uint32_t q);

/// Number of ordered r-tuples of linearly independent vectors in F_q^n,
/// i.e. the product (q^n - 1)(q^n - q)...(q^n - q^(r-1)). The empty
/// product (r = 0) is 1; r > n yields 0.
BigInt count_independent_tuples(long r, long n, std::uint32_t q);

/// q^e as an exact integer.
BigInt int_pow(std::uint32_t q, unsigned long e);

/// Renders a rational in [0, 1] as a decimal string with the given number
/// of significant digits, rounding half to even. Values below 1e-4 switch
/// to scientific notation; trailing zeros are stripped.
std::string to_decimal_string(const Rational& value, int significant_digits);

/// Parses "0.25", ".5", "1/4" or "1" into an exact rational.
Rational parse_rational(const std::string& text);

}  // namespace rlnc
