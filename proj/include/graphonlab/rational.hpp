#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "graphonlab/errors.hpp"

namespace graphonlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }
inline double to_double(const BigInt& v) { return v.template convert_to<double>(); }

// Renders exact values in the "p/q" form used by all file formats.
inline std::string rat_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

// Accepts "p", "p/q" and plain decimal strings like "0.25".
Rational rat_from_string(const std::string& text);

// Number of set bits of a non-negative big integer.
std::size_t big_popcount(const BigInt& v);

// Binomial coefficient C(n, k) as an exact integer (0 when k < 0 or k > n).
BigInt binomial(long n, long k);

}  // namespace graphonlab
