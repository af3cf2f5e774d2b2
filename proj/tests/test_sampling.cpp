#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "graphonlab/cf.hpp"
#include "graphonlab/errors.hpp"
#include "graphonlab/rng.hpp"
#include "graphonlab/sampling.hpp"
#include "graphonlab/svejk.hpp"

using namespace graphonlab;

namespace {

bool within_4sigma(const DensityEstimate& e, double truth) {
    return std::abs(e.value - truth) <= 4.0 * std::max(e.stderr_, 1e-12);
}

}  // namespace

TEST_CASE("graph construction and text io") {
    auto g = parse_graph("n=4\nedges=0-1 2-3 1-2\n");
    CHECK(g.n == 4);
    CHECK(g.edge_count() == 3);
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(0, 3));
    CHECK(render_graph(g) == "n=4\nedges=0-1 1-2 2-3\n");
    CHECK(parse_graph(render_graph(g)).edges == g.edges);
    CHECK(parse_graph("n=3").edge_count() == 0);
    CHECK_THROWS_AS(parse_graph("edges=0-1"), SyntaxError);
    CHECK_THROWS_AS(parse_graph("n=x"), SyntaxError);
    CHECK_THROWS_AS(parse_graph("n=3\nedges=0-0"), OutOfRange);
    CHECK_THROWS_AS(parse_graph("n=3\nedges=0-7"), OutOfRange);
    CHECK_THROWS_AS(parse_graph("n=3\nedges=01"), SyntaxError);
    SimpleGraph h(3);
    CHECK_THROWS_AS(h.add_edge(1, 1), OutOfRange);
    CHECK(complete_graph(4).edge_count() == 6);
    CHECK(cycle_graph(5).edge_count() == 5);
    CHECK(path_graph(4).edge_count() == 3);
}

TEST_CASE("canonical codes and isomorphism") {
    SimpleGraph t1(3), t2(3);
    t1.add_edge(0, 1);
    t1.add_edge(1, 2);
    t1.add_edge(0, 2);
    t2 = complete_graph(3);
    CHECK(isomorphic(t1, t2));

    SimpleGraph p4 = path_graph(4);
    SimpleGraph star(4);
    star.add_edge(0, 1);
    star.add_edge(0, 2);
    star.add_edge(0, 3);
    CHECK_FALSE(isomorphic(p4, star));
    CHECK_FALSE(isomorphic(p4, cycle_graph(4)));
    CHECK(isomorphic(parse_graph("n=4\nedges=2-3 0-3 1-2 0-1"), cycle_graph(4)));

    CHECK(isomorphism_classes(3).size() == 4);
    CHECK(isomorphism_classes(4).size() == 11);

    CHECK(labeled_copies(complete_graph(3)).size() == 1);
    CHECK(labeled_copies(path_graph(3)).size() == 3);
    CHECK(labeled_copies(path_graph(4)).size() == 12);
    CHECK(labeled_copies(cycle_graph(4)).size() == 3);
    CHECK(labeled_copies(empty_graph(5)).size() == 1);
}

TEST_CASE("w-random graphs") {
    auto one = make_constant(Rational(1));
    auto zero = make_constant(Rational(0));
    CHECK(w_random_graph(*one, 5, 7).edge_count() == 10);
    CHECK(w_random_graph(*zero, 5, 7).edge_count() == 0);
    auto half = make_constant(Rational(1, 2));
    auto a = w_random_graph(*half, 8, 123);
    auto b = w_random_graph(*half, 8, 123);
    CHECK(a.edges == b.edges);
    // different seeds should (overwhelmingly) differ on 28 coin flips
    CHECK(w_random_graph(*half, 8, 124).edges != a.edges);
    CHECK_THROWS_AS(w_random_graph(*half, 0, 1), OutOfRange);
}

TEST_CASE("monte carlo induced densities") {
    auto half = make_constant(Rational(1, 2));
    auto e1 = induced_density_mc(complete_graph(2), *half, 40000, 11);
    CHECK(within_4sigma(e1, 0.5));
    auto e2 = induced_density_mc(complete_graph(3), *half, 40000, 12);
    CHECK(within_4sigma(e2, 0.125));
    auto e3 = induced_density_mc(complete_graph(2), *make_half(), 40000, 13);
    CHECK(within_4sigma(e3, 0.5));
    // determinism and stderr invariant
    auto e4 = induced_density_mc(complete_graph(3), *half, 40000, 12);
    CHECK(e4.value == e2.value);
    CHECK(e2.stderr_ == doctest::Approx(std::sqrt(e2.value * (1 - e2.value) / 40000)).epsilon(1e-12));
    // vertex relabeling of H cannot change anything
    auto relabeled = parse_graph("n=3\nedges=1-2 0-2 0-1");
    CHECK(induced_density_mc(relabeled, *half, 40000, 12).value == e2.value);
}

TEST_CASE("exact induced densities") {
    auto two = make_step({Rational(0), Rational(1, 2), Rational(1)},
                         {{Rational(1), Rational(1, 2)}, {Rational(1, 2), Rational(0)}});
    CHECK(induced_density_exact(complete_graph(2), *two) == Rational(1, 2));
    auto halfstep = make_constant(Rational(1, 2));
    CHECK(induced_density_exact(complete_graph(3), *halfstep) == Rational(1, 8));
    CHECK(induced_density_exact(empty_graph(3), *halfstep) == Rational(1, 8));
    CHECK(induced_density_exact(path_graph(3), *halfstep) == Rational(3, 8));
    CFGraphon cf4(4);
    CHECK(induced_density_exact(complete_graph(2), cf4) == Rational(1, 2));
    CHECK(induced_density_exact(empty_graph(2), cf4) == Rational(1, 2));
    // densities over all classes of one order sum to 1
    Rational sum = 0;
    for (const auto& H : isomorphism_classes(3)) sum += induced_density_exact(H, *two);
    CHECK(sum == 1);
    // guard rails
    CHECK_THROWS_AS(induced_density_exact(complete_graph(4), CFGraphon(9)), BudgetExceeded);
    CHECK_THROWS_AS(induced_density_exact(complete_graph(2), CFGraphon(2)), PreconditionViolated);
    CHECK_THROWS_AS(induced_density_exact(complete_graph(2), *make_half()), PreconditionViolated);
}

TEST_CASE("exact and mc estimators agree on randomized step graphons") {
    auto gen = substream(77, "sampling-xcheck");
    for (int inst = 0; inst < 20; ++inst) {
        int blocks = 2 + int(gen() % 2);
        std::vector<Rational> breaks{Rational(0)};
        for (int b = 1; b < blocks; ++b) breaks.push_back(Rational(b, blocks));
        breaks.push_back(Rational(1));
        std::vector<std::vector<Rational>> vals(blocks, std::vector<Rational>(blocks));
        for (int i = 0; i < blocks; ++i)
            for (int j = i; j < blocks; ++j) vals[i][j] = vals[j][i] = Rational(gen() % 9, 8);
        auto g = make_step(breaks, vals);
        auto classes = isomorphism_classes(3);
        const auto& H = classes[gen() % classes.size()];
        auto exact = induced_density_exact(H, *g);
        auto mc = induced_density_mc(H, *g, 20000, 1000 + inst);
        CHECK(std::abs(mc.value - to_double(exact)) <= 4.0 * std::max(mc.stderr_, 1e-12) + 1e-9);
    }
}

TEST_CASE("density profile sums to one") {
    auto half = make_constant(Rational(1, 2));
    auto v3 = density_profile_sum_check(3, *half, 20000, 5);
    CHECK(v3.sums_to_one);
    CHECK(v3.sum == 1.0);
    CHECK(v3.rows.size() == 4);
    // K3 and empty rows should both be near 1/8, edge/path near 3/8.
    for (const auto& row : v3.rows) {
        double truth = (row.graph.edge_count() == 0 || row.graph.edge_count() == 3) ? 0.125 : 0.375;
        CHECK(within_4sigma(row.est, truth));
    }

    auto v4 = density_profile_sum_check(4, *half, 20000, 6);
    CHECK(v4.sums_to_one);
    CHECK(v4.rows.size() == 11);

    // The Svejk graphon exercises the folded sampling path.
    SvejkGraphon W;
    auto vs = density_profile_sum_check(3, W, 5000, 9);
    CHECK(vs.sums_to_one);

    CHECK_THROWS_AS(density_profile_sum_check(5, *half, 100, 1), OutOfRange);
}

TEST_CASE("half graphon profile matches quadrature") {
    auto half = make_half();
    auto v = density_profile_sum_check(3, *half, 200000, 17);
    REQUIRE(v.sums_to_one);
    // deterministic threshold graphon: quadrature over a fine grid
    const int N = 160;
    std::vector<double> quad(v.rows.size(), 0.0);
    std::vector<std::uint64_t> codes;
    for (const auto& row : v.rows) codes.push_back(canonical_code(row.graph));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c) {
                double x = (a + 0.5) / N, y = (b + 0.5) / N, z = (c + 0.5) / N;
                SimpleGraph s(3);
                if (x + y >= 1) s.add_edge(0, 1);
                if (x + z >= 1) s.add_edge(0, 2);
                if (y + z >= 1) s.add_edge(1, 2);
                auto code = canonical_code(s);
                for (std::size_t r = 0; r < codes.size(); ++r)
                    if (codes[r] == code) quad[r] += 1.0;
            }
    for (std::size_t r = 0; r < v.rows.size(); ++r) {
        quad[r] /= double(N) * N * N;
        CHECK(std::abs(v.rows[r].est.value - quad[r]) < 0.01);
    }
}

TEST_CASE("cf convergence probe") {
    auto rows = cf_convergence_probe(complete_graph(3), {4, 16, 36}, 200000, 42);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].m == 4);
    CHECK(rows[3].m == 0);  // constant-1/2 comparison row
    // limit value for triangles under the constant graphon
    CHECK(within_4sigma(rows[3].est, 0.125));
    // trend: distance to 1/8 shrinks as m grows (common random numbers)
    double d4 = std::abs(rows[0].est.value - 0.125);
    double d16 = std::abs(rows[1].est.value - 0.125);
    double d36 = std::abs(rows[2].est.value - 0.125);
    CHECK(d16 <= d4 + 0.004);
    CHECK(d36 <= d16 + 0.004);

    auto k2 = cf_convergence_probe(complete_graph(2), {9, 25}, 100000, 43);
    for (const auto& r : k2) CHECK(within_4sigma(r.est, 0.5));
    auto e2 = cf_convergence_probe(empty_graph(2), {9}, 100000, 44);
    CHECK(within_4sigma(e2[0].est, 0.5));

    // determinism
    auto again = cf_convergence_probe(complete_graph(3), {4, 16, 36}, 200000, 42);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].est.value == again[i].est.value);
}
