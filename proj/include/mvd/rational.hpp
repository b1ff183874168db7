#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace mvd {

// All counting is done in arbitrary precision and all valuation/payment
// arithmetic in exact rationals. No floating point anywhere in the library.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// C(n, k) as a big integer; 0 outside the valid range.
BigInt binomial(int n, int k);

// base^exp for non-negative integer exponents.
BigInt ipow(const BigInt& base, int exp);

// Canonical "p" / "p/q" rendering (q omitted when 1). Round-trips through
// parseRational bit-exactly.
std::string formatRational(const Rat& r);

// Accepts "p", "p/q", and signs; throws InputError on anything else.
Rat parseRational(const std::string& text);

}  // namespace mvd
