#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "graphonlab/coords.hpp"
#include "graphonlab/errors.hpp"
#include "graphonlab/rng.hpp"

using namespace graphonlab;

TEST_CASE("tower values") {
    CHECK(tower(0) == 1);
    CHECK(tower(1) == 2);
    CHECK(tower(2) == 4);
    CHECK(tower(3) == 16);
    CHECK(tower(4) == 65536);
    BigInt t5 = tower(5);
    CHECK(msb(t5) == 65536);  // bit length 65537
    CHECK(t5 == BigInt(1) << 65536);
    CHECK_THROWS_AS(tower(6), LevelTooLarge);
    CHECK_THROWS_AS(tower(3, 2), LevelTooLarge);
    CHECK_THROWS_AS(tower(-1), OutOfDomain);
}

TEST_CASE("locate basics") {
    auto c = locate(0.6);
    CHECK(c.seg == 2);
    CHECK(c.pos == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(c.subseg == 1);  // t(2)=4, floor(0.4*4)=1

    auto z = locate(0.0);
    CHECK(z.seg == 1);
    CHECK(z.pos == 0.0);
    CHECK(z.subseg == 0);
    CHECK(z.part == 0);
    CHECK(z.combined == 0);

    CHECK_THROWS_AS(locate(-0.1), OutOfDomain);
    CHECK_THROWS_AS(locate(1.0), OutOfDomain);
}

TEST_CASE("segment boundaries are half-open") {
    CHECK(segment_of(0.5) == 2);
    CHECK(std::nextafter(0.5, 0.0) < 0.5);
    CHECK(segment_of(std::nextafter(0.5, 0.0)) == 1);
    CHECK(segment_of(0.75) == 3);
    CHECK(segment_of(0.875) == 4);
}

TEST_CASE("reconstruction over random points") {
    auto gen = substream(12345, "coords-reconstruct");
    for (int i = 0; i < 100000; ++i) {
        double x = uniform01(gen);
        int seg = segment_of(x);
        double pos = segment_pos(x, seg);
        double back = 1.0 - std::ldexp(1.0, 1 - seg) + pos * std::ldexp(1.0, -seg);
        CHECK(back == x);  // both directions are exact power-of-two scalings
        CHECK(pos >= 0.0);
        CHECK(pos < 1.0);
    }
}

TEST_CASE("segment cover is exact") {
    // Segments k=1..K tile [0, 1-2^-K): upper(k) == lower(k+1) as doubles.
    for (int k = 1; k < 50; ++k) {
        double upper = 1.0 - std::ldexp(1.0, -k);
        double lower_next = 1.0 - std::ldexp(1.0, 1 - (k + 1));
        CHECK(upper == lower_next);
    }
}

TEST_CASE("combined index splits into subseg and part") {
    auto gen = substream(999, "coords-combined");
    for (int i = 0; i < 2000; ++i) {
        double x = uniform01(gen) * 0.96875;  // stay within segments 1..5
        auto c = locate(x);
        BigInt t = tower(c.seg);
        CHECK(c.combined == c.part + t * c.subseg);
        CHECK(c.part == c.combined % t);
        CHECK(c.subseg >= 0);
        CHECK(c.subseg < t);
        CHECK(c.part >= 0);
        CHECK(c.part < t);
    }
}

TEST_CASE("frac_bit worked example") {
    CHECK(frac_bit(0.375, 1) == 0);
    CHECK(frac_bit(0.375, 2) == 1);
    CHECK(frac_bit(0.375, 3) == 1);
    CHECK(frac_bit(0.375, 4) == 0);
    CHECK(frac_bit(0.375, 7) == 0);
    CHECK(frac_bit(0.0, 1) == 0);
    CHECK(frac_bit(0.5, 1) == 1);
    CHECK(frac_bit(0.5, 2) == 0);
}

TEST_CASE("int_bit worked example") {
    CHECK(int_bit(5, 0) == 1);
    CHECK(int_bit(5, 1) == 0);
    CHECK(int_bit(5, 2) == 1);
    CHECK(int_bit(5, 3) == 0);
    CHECK(int_bit(0, 0) == 0);
}

TEST_CASE("sign vectors") {
    CHECK(sign_vector_frac(0.375, 4) == std::vector<int>{-1, +1, +1, -1});
    CHECK(sign_vector_frac(0.0, 3) == std::vector<int>{-1, -1, -1});
    CHECK(sign_vector_frac(0.5, 2) == std::vector<int>{+1, -1});
    CHECK(sign_vector_int(5, 4) == std::vector<int>{+1, -1, +1, -1});
    CHECK(sign_vector_int(0, 3) == std::vector<int>{-1, -1, -1});
    CHECK(sign_vector_int(7, 3) == std::vector<int>{+1, +1, +1});
}

TEST_CASE("trunc") {
    CHECK(trunc01(1.3) == 1.0);
    CHECK(trunc01(-0.2) == 0.0);
    CHECK(trunc01(0.5) == 0.5);
}

TEST_CASE("pairing identity") {
    auto gen = substream(7, "coords-pairing");
    for (int i = 0; i < 10000; ++i) {
        double a = (uniform01(gen) - 0.5) * 6.0;
        CHECK(trunc01(0.5 + a) + trunc01(0.5 - a) == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("dyadic helpers") {
    CHECK(dyadic_floor_scale(0.375, 3) == 3);  // 0.011 binary
    CHECK(dyadic_floor_scale(0.375, 10) == 384);
    CHECK(dyadic_floor_scale(0.0, 5) == 0);
    CHECK(frac_bits_end(0.375) == 3);
    CHECK(frac_bits_end(0.5) == 1);
    CHECK(frac_bits_end(0.0) == 0);
}

TEST_CASE("rational helpers") {
    CHECK(rat_to_string(Rational(1, 2)) == "1/2");
    CHECK(rat_to_string(Rational(3)) == "3");
    CHECK(rat_from_string("1/2") == Rational(1, 2));
    CHECK(rat_from_string("0.25") == Rational(1, 4));
    CHECK(rat_from_string("7") == Rational(7));
    CHECK_THROWS_AS(rat_from_string("1/0"), Error);
    CHECK(big_popcount(BigInt(1) << 65536) == 1);
    CHECK(big_popcount((BigInt(1) << 100) - 1) == 100);
    CHECK(binomial(16, 8) == 12870);
    CHECK(binomial(4, 5) == 0);
}
