#include "graphonlab/coords.hpp"

#include <cmath>
#include <cstdint>

#include "graphonlab/errors.hpp"

namespace graphonlab {

BigInt tower(int n, int cap) {
    if (n < 0) throw OutOfDomain("tower level must be non-negative");
    if (n > cap) throw LevelTooLarge("tower level " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    BigInt t = 1;
    for (int i = 1; i <= n; ++i) {
        if (t > 1000000) throw LevelTooLarge("tower level " + std::to_string(n) + " is not representable");
        t = BigInt(1) << static_cast<unsigned>(t);
    }
    return t;
}

int segment_of(double x) {
    if (!(x >= 0.0 && x < 1.0)) throw OutOfDomain("locate: x must lie in [0,1)");
    int k = 1;
    double upper = 0.5;  // 1 - 2^-k
    while (x >= upper) {
        ++k;
        upper = 1.0 - std::ldexp(1.0, -k);
        if (k > 1100) throw OutOfDomain("locate: x too close to 1");
    }
    return k;
}

double segment_pos(double x, int seg) {
    // Both subtractions are exact: x and 1 - 2^(1-seg) share the scale, and
    // the final scaling by a power of two is exact as well.
    return (x - (1.0 - std::ldexp(1.0, 1 - seg))) * std::ldexp(1.0, seg);
}

BigInt dyadic_floor_scale(double pos, long bits) {
    if (!(pos >= 0.0 && pos < 1.0)) throw OutOfDomain("dyadic_floor_scale: pos must lie in [0,1)");
    if (bits <= 0) return 0;
    if (pos == 0.0) return 0;
    int e;
    double mant = std::frexp(pos, &e);  // pos = mant * 2^e, mant in [0.5, 1)
    auto ip = static_cast<std::uint64_t>(std::ldexp(mant, 53));
    long shift = e - 53 + bits;
    BigInt n = ip;
    if (shift >= 0) return n << static_cast<unsigned>(shift);
    if (shift <= -64) return 0;
    return n >> static_cast<unsigned>(-shift);
}

int frac_bits_end(double pos) {
    if (pos == 0.0) return 0;
    int e;
    double mant = std::frexp(pos, &e);
    auto ip = static_cast<std::uint64_t>(std::ldexp(mant, 53));
    int trailing = __builtin_ctzll(ip);
    return 53 - e - trailing;
}

Coordinate locate(double x, int cap) {
    Coordinate c;
    c.x = x;
    c.seg = segment_of(x);
    c.pos = segment_pos(x, c.seg);
    BigInt t = tower(c.seg, cap);
    // The tower value is a power of two for seg >= 1, so the combined index
    // splits into (subseg, part) by bit masking.
    long e = (c.seg == 0) ? 0 : static_cast<long>(tower(c.seg - 1, cap).convert_to<long>());
    c.combined = dyadic_floor_scale(c.pos, 2 * e);
    c.subseg = c.combined >> static_cast<unsigned>(e);
    c.part = c.combined - (c.subseg << static_cast<unsigned>(e));
    (void)t;
    return c;
}

int frac_bit(double pos, long i) {
    if (i < 1) throw OutOfDomain("frac_bit: index must be >= 1");
    return static_cast<int>((dyadic_floor_scale(pos, i) & 1).convert_to<unsigned>());
}

int int_bit(const BigInt& v, long i) {
    if (i < 0) throw OutOfDomain("int_bit: index must be >= 0");
    return bit_test(v, static_cast<unsigned>(i)) ? 1 : 0;
}

std::vector<int> sign_vector_frac(double pos, int length) {
    std::vector<int> out(static_cast<std::size_t>(length));
    for (int i = 1; i <= length; ++i) out[static_cast<std::size_t>(i - 1)] = 2 * frac_bit(pos, i) - 1;
    return out;
}

std::vector<int> sign_vector_int(const BigInt& v, int length) {
    std::vector<int> out(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i) out[static_cast<std::size_t>(i)] = 2 * int_bit(v, i) - 1;
    return out;
}

double trunc01(double v) {
    if (v < 0.0) return 0.0;
    if (v > 1.0) return 1.0;
    return v;
}

}  // namespace graphonlab
