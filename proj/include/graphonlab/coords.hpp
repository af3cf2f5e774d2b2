#pragma once

#include <vector>

#include "graphonlab/rational.hpp"

namespace graphonlab {

inline constexpr int kDefaultTowerCap = 5;
inline constexpr int kDefaultTailK = 40;

// t(0) = 1, t(n) = 2^t(n-1).  Levels above the cap are refused: t(6) is not
// representable and nothing downstream needs it.
BigInt tower(int n, int cap = kDefaultTowerCap);

// Dyadic decomposition of [0,1): segment k covers [1 - 2^(1-k), 1 - 2^-k).
struct Coordinate {
    double x;         // the original point
    int seg;          // [x]_1, 1-based segment index
    double pos;       // position within the segment, in [0,1)
    BigInt subseg;    // [x]_2 = floor(pos * t(seg))
    BigInt part;      // [x]_3 = combined mod t(seg)
    BigInt combined;  // [x]_{2,3} = part + t(seg) * subseg
};

// Segment index alone; never needs the tower and works for any x in [0,1).
int segment_of(double x);

// Position within the segment; exact in double arithmetic.
double segment_pos(double x, int seg);

Coordinate locate(double x, int cap = kDefaultTowerCap);

// floor(pos * 2^bits) computed exactly from the binary representation of pos.
BigInt dyadic_floor_scale(double pos, long bits);

// Smallest B >= 0 such that pos * 2^B is an integer (pos in [0,1)).
int frac_bits_end(double pos);

// i-th binary digit of pos after the radix point, i >= 1 (terminating expansion).
int frac_bit(double pos, long i);

// Bit i of v, least significant bit at index 0.
int int_bit(const BigInt& v, long i);

std::vector<int> sign_vector_frac(double pos, int length);
std::vector<int> sign_vector_int(const BigInt& v, int length);

// Clips to [0,1].
double trunc01(double v);

}  // namespace graphonlab
