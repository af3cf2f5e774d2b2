#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "graphonlab/cf.hpp"
#include "graphonlab/errors.hpp"
#include "graphonlab/graphon.hpp"
#include "graphonlab/rng.hpp"

using namespace graphonlab;

namespace {

// Direct O(4^m) oracle for block-weight densities.
Rational cf_density_brute(const CFGraphon& g, const std::vector<Rational>& wA,
                          const std::vector<Rational>& wB) {
    std::uint64_t n = g.block_count();
    Rational total = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (wA[i] == 0) continue;
        Rational row = 0;
        for (std::uint64_t j = 0; j < n; ++j) {
            if (wB[j] == 0) continue;
            row += g.cell(i, j) * wB[j];
        }
        total += wA[i] * row;
    }
    return total;
}

double cf_density_brute_d(const CFGraphon& g, const std::vector<Rational>& wA,
                          const std::vector<Rational>& wB) {
    std::uint64_t n = g.block_count();
    double total = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j)
            total += to_double(wA[i]) * to_double(wB[j]) * g.cell_value(i, j);
    return total;
}

}  // namespace

TEST_CASE("constant graphon") {
    auto g = make_constant(Rational(1, 2));
    CHECK(g->value(0.3, 0.9) == 0.5);
    CHECK(g->kind() == GraphonKind::Constant);
    CHECK(g->exact());
    CHECK(make_constant(Rational(0))->value(0.1, 0.2) == 0.0);
    CHECK(make_constant(Rational(1))->value(0.1, 0.2) == 1.0);
    CHECK_THROWS_AS(make_constant(Rational(3, 2)), OutOfRange);
    CHECK_THROWS_AS(make_constant(Rational(-1, 2)), OutOfRange);
}

TEST_CASE("cf cell examples m=4") {
    CFGraphon g(4);
    CHECK(g.exact());
    // same block
    CHECK(g.value(0.01, 0.02) == 1.0);
    // opposite vectors: blocks 0 and 15
    CHECK(g.cell_value(0, 15) == 0.0);
    // Hamming distance 2
    CHECK(g.cell_value(0, 3) == 0.5);
    CHECK(g.cell(0, 3) == Rational(1, 2));
    CHECK(g.cell(0, 0) == 1);
    CHECK(g.cell(0, 15) == 0);
    CHECK_THROWS_AS(make_cf(0), MTooLarge);
    CHECK_THROWS_AS(make_cf(63), MTooLarge);
}

TEST_CASE("cf block indexing is the dyadic grid") {
    CFGraphon g(4);
    CHECK(g.block_of(0.0) == 0);
    CHECK(g.block_of(0.9999) == 15);
    CHECK(g.block_of(1.0) == 15);
    CHECK(g.block_of(5.0 / 16.0) == 5);
}

TEST_CASE("cf unit density is exactly 1/2") {
    for (int m : {1, 4, 9, 16, 25}) {
        CFGraphon g(m);
        auto r = cf_unit_density(g);
        REQUIRE(r.is_exact);
        CHECK(r.exact == Rational(1, 2));
        auto via_sets = density_sets(g, SetSpec::unit(), SetSpec::unit());
        REQUIRE(via_sets.is_exact);
        CHECK(via_sets.exact == Rational(1, 2));
    }
    // Non-square m: double arithmetic, still 1/2 by the pairing identity.
    for (int m : {2, 3, 5, 7, 12, 40, 62}) {
        CFGraphon g(m);
        CHECK(cf_unit_density(g).approx == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("interior measure of cf cells") {
    // m=1: every cell is 1/4 or 3/4, all strictly interior.
    CHECK(interior_measure_cf(1) == Rational(1));
    {
        CFGraphon g(1);
        int interior = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (g.cell_value(i, j) > 0.0 && g.cell_value(i, j) < 1.0) ++interior;
        CHECK(Rational(interior, 4) == interior_measure_cf(1));
    }
    CHECK(interior_measure_cf(4) == Rational(14, 16));
    {
        CFGraphon g(4);
        int interior = 0;
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j)
                if (g.cell_value(i, j) > 0.0 && g.cell_value(i, j) < 1.0) ++interior;
        CHECK(Rational(interior, 256) == interior_measure_cf(4));
    }
    CHECK(interior_measure_cf(25) >= Rational(1) - Rational(2 * 1000000, 7389056));  // 1 - 2e^-2 ~ 0.72932
}

TEST_CASE("wht density matches brute force") {
    auto gen = substream(42, "cf-wht-oracle");
    for (int m : {3, 4, 9}) {
        CFGraphon g(m);
        std::uint64_t n = g.block_count();
        for (int rep = 0; rep < 3; ++rep) {
            std::vector<Rational> wA(n, Rational(0)), wB(n, Rational(0));
            for (std::uint64_t i = 0; i < n; ++i) {
                if (gen() % 2) wA[i] = Rational(1 + gen() % 3, 4 * n);
                if (gen() % 2) wB[i] = Rational(1 + gen() % 3, 4 * n);
            }
            auto fast = cf_density_blocks(g, wA, wB);
            if (g.perfect_square()) {
                REQUIRE(fast.is_exact);
                CHECK(fast.exact == cf_density_brute(g, wA, wB));
            } else {
                CHECK(fast.approx == doctest::Approx(cf_density_brute_d(g, wA, wB)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("density_sets on cf interval sets") {
    CFGraphon g(4);
    auto A = SetSpec::intervals({{Rational(0), Rational(1, 3)}});
    auto fast = density_sets(g, A, A);
    REQUIRE(fast.is_exact);
    auto wA = A.to_blocks(16).weights();
    CHECK(fast.exact == cf_density_brute(g, wA, wA));
    // Empty set
    CHECK(density_sets(g, SetSpec::empty(), SetSpec::unit()).exact == 0);
}

TEST_CASE("density_sets on step graphons") {
    auto g = make_step({Rational(0), Rational(1, 2), Rational(1)},
                       {{Rational(1), Rational(1, 2)}, {Rational(1, 2), Rational(0)}});
    auto r = density_sets(*g, SetSpec::unit(), SetSpec::unit());
    REQUIRE(r.is_exact);
    CHECK(r.exact == Rational(1, 2));  // (1 + 1/2 + 1/2 + 0)/4
    auto A = SetSpec::intervals({{Rational(0), Rational(1, 2)}});
    auto rAA = density_sets(*g, A, A);
    CHECK(rAA.exact == Rational(1, 4));
    // Block-weight form on the graphon's two blocks.
    auto Ab = SetSpec::block_weights(2, {Rational(1, 2), Rational(0)});
    CHECK(density_sets(*g, Ab, Ab).exact == Rational(1, 4));
    CHECK_THROWS_AS(density_sets(*g, SetSpec::block_weights(4, std::vector<Rational>(4, Rational(1, 4))), Ab),
                    GridMismatch);
}

TEST_CASE("half graphon") {
    auto g = make_half();
    CHECK(g->value(0.7, 0.4) == 1.0);
    CHECK(g->value(0.2, 0.3) == 0.0);
    CHECK(g->value(0.5, 0.5) == 1.0);
    auto r = density_sets(*g, SetSpec::unit(), SetSpec::unit());
    REQUIRE(r.is_exact);
    CHECK(r.exact == Rational(1, 2));
    auto A = SetSpec::intervals({{Rational(0), Rational(1, 2)}});
    CHECK(density_sets(*g, A, A).exact == 0);  // x + y < 1 throughout [0,1/2)^2
    auto B = SetSpec::intervals({{Rational(1, 2), Rational(1)}});
    CHECK(density_sets(*g, B, B).exact == Rational(1, 4));  // x + y >= 1 throughout
    CHECK(density_sets(*g, A, B).exact == Rational(1, 8));
    CHECK(density_sets(*g, A, B).exact + density_sets(*g, B, A).exact + Rational(0) + Rational(1, 4) ==
          Rational(1, 2));
}

TEST_CASE("degrees") {
    CHECK(make_constant(Rational(1, 3))->degree(0.77, 1e-9) == doctest::Approx(1.0 / 3));
    CHECK(make_half()->degree(0.25, 1e-9) == 0.25);
    CHECK(make_cf(7)->degree(0.3, 1e-9) == 0.5);
    auto g = make_step({Rational(0), Rational(1, 2), Rational(1)},
                       {{Rational(1), Rational(1, 2)}, {Rational(1, 2), Rational(0)}});
    CHECK(g->degree(0.1, 1e-9) == doctest::Approx(0.75));
    CHECK(g->degree(0.9, 1e-9) == doctest::Approx(0.25));
}

TEST_CASE("symmetry and range by sampling") {
    std::vector<GraphonPtr> gs = {make_constant(Rational(1, 3)), make_half(), make_cf(4), make_cf(10),
                                  make_step({Rational(0), Rational(1, 4), Rational(1)},
                                            {{Rational(1, 3), Rational(1, 7)}, {Rational(1, 7), Rational(1)}})};
    auto gen = substream(5, "graphon-symmetry");
    for (const auto& g : gs) {
        for (int i = 0; i < 20000; ++i) {
            double x = uniform01(gen), y = uniform01(gen);
            double v = g->value(x, y);
            CHECK(v == g->value(y, x));
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("step graphon validation") {
    CHECK_THROWS_AS(make_step({Rational(0), Rational(1, 2)}, {{Rational(1)}, {Rational(0)}}), OutOfRange);
    CHECK_THROWS_AS(make_step({Rational(0), Rational(1)}, {{Rational(2)}}), OutOfRange);
    CHECK_THROWS_AS(make_step({Rational(0), Rational(1, 2), Rational(1)},
                              {{Rational(1), Rational(1, 2)}, {Rational(1, 3), Rational(0)}}),
                    OutOfRange);
}
