#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace starprod {

// Exact rational scalar. cpp_rational keeps the canonical invariants we rely
// on everywhere: gcd-reduced, denominator > 0, zero is 0/1.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool rat_is_integer(const Rat& r) { return rat_den(r) == 1; }

// Prints "p" when the denominator is 1, "p/q" otherwise.
std::string rat_str(const Rat& r);

// Accepts an optionally signed integer or integer/integer pair ("-3", "5/2").
// Throws std::invalid_argument on malformed text or zero denominator.
Rat rat_parse(std::string_view s);

BigInt factorial(int n);
BigInt binomial(const BigInt& n, const BigInt& k);

} // namespace starprod
