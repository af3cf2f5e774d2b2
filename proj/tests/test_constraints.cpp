#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "graphonlab/cf.hpp"
#include "graphonlab/constraints.hpp"
#include "graphonlab/errors.hpp"
#include "graphonlab/sampling.hpp"
#include "graphonlab/svejk.hpp"

using namespace graphonlab;

namespace {

// The worked two-part example: 1 on AxA, 0 on BxB, 1/2 across.
GraphonPtr two_part_example() {
    return make_step({Rational(0), Rational(1, 2), Rational(1)},
                     {{Rational(1), Rational(1, 2)}, {Rational(1, 2), Rational(0)}});
}

PartTable two_part_table() {
    PartTable t;
    t.parts.push_back({"A", Rational(1, 2), 0.75, false, 0.0, 0.0, 0});
    t.parts.push_back({"B", Rational(1, 2), 0.25, false, 0.0, 0.0, 0});
    return t;
}

const char* kExampleConstraint =
    "parts: A B\n"
    "graph H\n"
    "  root r1 A\n"
    "  root r2 A\n"
    "  vertex v1 B\n"
    "  vertex v2 B\n"
    "  edge r1-r2 r1-v1 r1-v2 r2-v2\n"
    "  nonedge r2-v1 v1-v2\n"
    "end\n"
    "constraint: H = 1/16\n";

}  // namespace

TEST_CASE("expression parsing and rendering") {
    auto e = parse_expression("K2 * K2 + 0.25");
    REQUIRE(e.kind == DensityExpression::Kind::Sum);
    REQUIRE(e.children.size() == 2);
    CHECK(e.children[0].kind == DensityExpression::Kind::Product);
    CHECK(e.children[1].constant == Rational(1, 4));
    CHECK(render_expression(e) == "G{2;0-1} * G{2;0-1} + 1/4");

    auto k3 = parse_expression("G{3;0-1 1-2 0-2}");
    CHECK(isomorphic(k3.graph, complete_graph(3)));
    CHECK(parse_expression("C4").graph.edge_count() == 4);
    CHECK(parse_expression("P4").graph.edge_count() == 3);
    CHECK(parse_expression("E3").graph.edge_count() == 0);
    CHECK(parse_expression("(K2 + 1) * 2").kind == DensityExpression::Kind::Product);

    // reparse of a rendering is structurally identical
    auto r = parse_expression(render_expression(e));
    CHECK(render_expression(r) == render_expression(e));

    try {
        parse_expression("K2 +");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& err) {
        CHECK(err.position == 5);
    }
    CHECK_THROWS_AS(parse_expression("K2 K3"), SyntaxError);
    CHECK_THROWS_AS(parse_expression("G{3;0-9}"), SyntaxError);
    CHECK_THROWS_AS(parse_expression("Zebra"), SyntaxError);
    CHECK_THROWS_AS(parse_expression("(K2"), SyntaxError);
    CHECK_THROWS_AS(parse_constraint("K2 + 1"), SyntaxError);
    CHECK_THROWS_AS(parse_constraint("K2 = 1 = 2"), SyntaxError);
}

TEST_CASE("ordinary constraints on exact graphons") {
    auto half = make_constant(Rational(1, 2));
    auto v1 = evaluate_ordinary(parse_constraint("K2 = 0.5"), *half, 1000, 1);
    CHECK(v1.is_exact);
    CHECK(v1.status == Satisfaction::Satisfied);
    CHECK(v1.lhs_exact == Rational(1, 2));

    CHECK(evaluate_ordinary(parse_constraint("K3 = 0.125"), *half, 1000, 1).status ==
          Satisfaction::Satisfied);
    CHECK(evaluate_ordinary(parse_constraint("K2 = 0.6"), *half, 1000, 1).status ==
          Satisfaction::Violated);
    CHECK(evaluate_ordinary(parse_constraint("K3 + K3 = 2 * K3"), *half, 1000, 1).status ==
          Satisfaction::Satisfied);
    // expression arithmetic stays rational on the exact path
    auto v2 = evaluate_ordinary(parse_constraint("K3 * K3 + 1/64 = 1/32"), *half, 1000, 1);
    CHECK(v2.status == Satisfaction::Satisfied);
}

TEST_CASE("ordinary constraints on the monte carlo path") {
    // CF9 is exact but K3 exceeds the exact budget, forcing the MC fallback
    CFGraphon cf9(9);
    auto v = evaluate_ordinary(parse_constraint("K3 = 0.125"), cf9, 200000, 5);
    CHECK_FALSE(v.is_exact);
    CHECK(v.lhs_stderr > 0);
    CHECK(std::abs(v.lhs_value - 0.125) < 0.02);

    // shared streams make sums evaluate linearly: identical graph, zero diff
    auto lin = evaluate_ordinary(parse_constraint("K3 + K3 = 2 * K3"), cf9, 50000, 5);
    CHECK(lin.status == Satisfaction::Satisfied);
    CHECK(lin.lhs_value == lin.rhs_value);

    // the half graphon has no block structure at all
    auto h = evaluate_ordinary(parse_constraint("K2 = 0.5"), *make_half(), 100000, 6);
    CHECK_FALSE(h.is_exact);
    CHECK(h.status == Satisfaction::Satisfied);
    CHECK(evaluate_ordinary(parse_constraint("K2 = 0.6"), *make_half(), 100000, 6).status ==
          Satisfaction::Violated);
}

TEST_CASE("degree partition extraction") {
    // constant graphon, one-part table
    auto half = make_constant(Rational(1, 2));
    auto t1 = partition_by_degree(*half, PartTable::single(), 1e-6, 2000);
    CHECK(t1.parts[0].fitted_measure == 1.0);

    // constant graphon with two expected distinct degrees: unassignable
    PartTable two;
    two.parts.push_back({"X", Rational(1, 2), 0.3, false, 0.0, 0.0, 0});
    two.parts.push_back({"Y", Rational(1, 2), 0.7, false, 0.0, 0.0, 0});
    CHECK_THROWS_AS(partition_by_degree(*half, two, 1e-6, 100), DegreeUnassignable);

    // assignable degrees but wrong expected measures
    auto skew = make_step({Rational(0), Rational(1, 4), Rational(1)},
                          {{Rational(1), Rational(0)}, {Rational(0), Rational(1, 2)}});
    PartTable wrong;
    wrong.parts.push_back({"X", Rational(1, 2), 0.25, false, 0.0, 0.0, 0});
    wrong.parts.push_back({"Y", Rational(1, 2), 0.375, false, 0.0, 0.0, 0});
    CHECK_THROWS_AS(partition_by_degree(*skew, wrong, 1e-6, 2000), MeasureMismatch);
    PartTable right = wrong;
    right.parts[0].measure = Rational(1, 4);
    right.parts[1].measure = Rational(3, 4);
    auto fit = partition_by_degree(*skew, right, 1e-6, 2000);
    CHECK(fit.parts[0].fitted_degree == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(fit.parts[1].fitted_measure == doctest::Approx(0.75).epsilon(1e-3));

    CHECK_THROWS_AS(partition_by_degree(*half, two, 0.5, 100), PreconditionViolated);
}

TEST_CASE("svejk ten-part table is recovered") {
    SvejkGraphon W;
    auto fit = partition_by_degree(W, PartTable::svejk(), 1e-6, 13000);
    REQUIRE(fit.parts.size() == 10);
    for (const auto& p : fit.parts) {
        double expectMeasure = to_double(p.measure);
        CHECK(std::abs(p.fitted_measure - expectMeasure) <= 0.02 * expectMeasure);
        if (p.degree_is_lower_bound) {
            CHECK(p.name == "Q");
            CHECK(p.fitted_degree >= 40.0 / 104.0);
        } else {
            CHECK(std::abs(p.fitted_degree - p.degree) < 1e-6);
        }
    }
}

TEST_CASE("decorated file parsing and rendering round-trip") {
    auto c = parse_decorated(kExampleConstraint);
    REQUIRE(c.graphs.size() == 1);
    const auto& H = c.graphs[0];
    CHECK(H.root_count() == 2);
    CHECK(H.nonroots().size() == 2);
    CHECK(H.unspecified_pairs().empty());
    CHECK(H.pairs.at({0, 1}) == true);
    CHECK(H.pairs.at({2, 3}) == false);

    auto text = render_constraint(c);
    auto again = parse_decorated(text);
    CHECK(render_constraint(again) == text);

    // minimal: one root, empty graph
    auto mini = parse_decorated("parts: A\ngraph H\n  root r A\nend\nconstraint: H = 1\n");
    CHECK(render_constraint(mini) ==
          "parts: A\ngraph H\n  root r A\nend\nconstraint: H = 1\n");

    try {
        parse_decorated("parts: A\ngraph H\n  root r Z\nend\nconstraint: H = 1\n");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& err) {
        CHECK(err.position == 3);  // line number
    }
    CHECK_THROWS_AS(parse_decorated("parts: A\ngraph H\n  root r A\nend\n"), SyntaxError);
    CHECK_THROWS_AS(
        parse_decorated("parts: A\ngraph H\n root a A\n root b A\n edge a-b\n nonedge a-b\nend\n"
                        "constraint: H = 1\n"),
        SyntaxError);
    CHECK_THROWS_AS(parse_decorated("parts: A\ngraph H\n root r A\nend\nconstraint: Z = 1\n"),
                    SyntaxError);
}

TEST_CASE("the worked decorated example evaluates to 1/16") {
    auto g = two_part_example();
    auto c = parse_decorated(kExampleConstraint);
    auto v = evaluate_decorated(c, *g, two_part_table(), 2000, 500, 31);
    CHECK(v.acceptance == 1.0);  // roots in A are always adjacent
    CHECK(v.status == Satisfaction::Satisfied);
    CHECK(std::abs(v.lhs_value - 0.0625) <= 4.0 * std::max(v.lhs_stderr, 1e-12));
    // the permutation convention would give 2/16; it must be excluded
    CHECK(std::abs(v.lhs_value - 0.125) > 4.0 * v.lhs_stderr);
}

TEST_CASE("decorated edge inside the zero block has probability zero") {
    auto g = two_part_example();
    auto c = parse_decorated(
        "parts: A B\n"
        "graph H\n"
        "  root r1 A\n"
        "  root r2 A\n"
        "  vertex v1 B\n"
        "  vertex v2 B\n"
        "  edge r1-r2 v1-v2\n"
        "  nonedge r1-v1 r1-v2 r2-v1 r2-v2\n"
        "end\n"
        "constraint: H = 0\n");
    auto v = evaluate_decorated(c, *g, two_part_table(), 500, 200, 32);
    CHECK(v.status == Satisfaction::Satisfied);
    CHECK(v.lhs_value == 0.0);
}

TEST_CASE("null satisfaction via impossible root conditioning") {
    // W is identically 1 on AxA, so a non-edge between A-roots never happens
    auto g = two_part_example();
    auto c = parse_decorated(
        "parts: A B\n"
        "graph H\n"
        "  root r1 A\n"
        "  root r2 A\n"
        "  nonedge r1-r2\n"
        "end\n"
        "constraint: H = 1\n");
    auto v = evaluate_decorated(c, *g, two_part_table(), 5000000, 1, 33);
    CHECK(v.accepted == 0);
    CHECK(v.status == Satisfaction::NullSatisfied);
    // with too few tuples the zero-acceptance bound is not conclusive
    auto small = evaluate_decorated(c, *g, two_part_table(), 1000, 1, 33);
    CHECK(small.status == Satisfaction::Inconclusive);
}

TEST_CASE("zero-root decorated evaluation matches labeled-copy probability") {
    auto half = make_constant(Rational(1, 2));
    // one specific labeled path on 3 vertices: probability (1/2)^3 = 1/8,
    // while the induced density of P3 is 3/8 (three labeled copies)
    auto c = parse_decorated(
        "parts: ALL\n"
        "graph H\n"
        "  vertex a ALL\n"
        "  vertex b ALL\n"
        "  vertex c ALL\n"
        "  edge a-b b-c\n"
        "  nonedge a-c\n"
        "end\n"
        "constraint: H = 1/8\n");
    auto v = evaluate_decorated(c, *half, PartTable::single(), 200, 2000, 34);
    CHECK(v.acceptance == 1.0);
    CHECK(v.status == Satisfaction::Satisfied);
    CHECK(std::abs(v.lhs_value - 0.125) <= 4.0 * std::max(v.lhs_stderr, 1e-12));
    CHECK(induced_density_exact(path_graph(3), *half) == Rational(3, 8));
}

TEST_CASE("unspecified pairs expand to the sum of completions") {
    auto c = parse_decorated(
        "parts: A B\n"
        "graph H\n"
        "  root r1 A\n"
        "  root r2 A\n"
        "  vertex v B\n"
        "  edge r1-r2 r1-v\n"
        "end\n"  // r2-v left unspecified
        "graph Hoff\n"
        "  root r1 A\n"
        "  root r2 A\n"
        "  vertex v B\n"
        "  edge r1-r2 r1-v\n"
        "  nonedge r2-v\n"
        "end\n"
        "graph Hon\n"
        "  root r1 A\n"
        "  root r2 A\n"
        "  vertex v B\n"
        "  edge r1-r2 r1-v r2-v\n"
        "end\n"
        "constraint: H = Hoff + Hon\n");
    auto comps = expand_unspecified(c.graphs[0]);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].pairs.at({1, 2}) == false);
    CHECK(comps[1].pairs.at({1, 2}) == true);

    auto g = two_part_example();
    auto v = evaluate_decorated(c, *g, two_part_table(), 1000, 500, 35);
    CHECK(v.status == Satisfaction::Satisfied);
    CHECK(std::abs(v.lhs_value - 0.5) < 0.01);  // W = 1/2 on AxB, marginalizes out
}

TEST_CASE("incompatible decorated graphs are rejected") {
    auto g = two_part_example();
    auto c = parse_decorated(
        "parts: A B\n"
        "graph H1\n"
        "  root r1 A\n"
        "  root r2 A\n"
        "  edge r1-r2\n"
        "end\n"
        "graph H2\n"
        "  root r1 A\n"
        "  root r2 A\n"
        "  nonedge r1-r2\n"
        "end\n"
        "constraint: H1 = H2\n");
    CHECK_THROWS_AS(evaluate_decorated(c, *g, two_part_table(), 100, 100, 36),
                    IncompatibleGraphs);

    auto c2 = parse_decorated(
        "parts: A B\n"
        "graph H1\n"
        "  root r1 A\n"
        "end\n"
        "graph H2\n"
        "  root r1 B\n"
        "end\n"
        "constraint: H1 = H2\n");
    CHECK_THROWS_AS(evaluate_decorated(c2, *g, two_part_table(), 100, 100, 36),
                    IncompatibleGraphs);
}
