#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "graphonlab/graphon.hpp"
#include "graphonlab/graphs.hpp"

namespace graphonlab {

// AST of a density expression: constants, graphs, sums and products.  In the
// decorated setting, graph nodes carry the name of a declared decorated graph
// instead of a plain graph.
struct DensityExpression {
    enum class Kind { Constant, Graph, Sum, Product };
    Kind kind = Kind::Constant;
    Rational constant;
    SimpleGraph graph{1};
    std::string graph_name;  // set for decorated references
    std::vector<DensityExpression> children;
};

// Grammar: expr := term ('+' term)*; term := factor ('*' factor)*;
// factor := number | 'G{' n ';' edges '}' | alias | '(' expr ')'.
// Aliases: K<n>, C<n>, P<n>, E<n>.  With allow_names set, bare identifiers
// become named graph references (used by decorated constraint files).
DensityExpression parse_expression(const std::string& text, bool allow_names = false);

std::string render_expression(const DensityExpression& e);

struct OrdinaryConstraint {
    DensityExpression lhs, rhs;
};

// "expr = expr" on one line.
OrdinaryConstraint parse_constraint(const std::string& text);

enum class Satisfaction { Satisfied, Violated, NullSatisfied, Inconclusive };

std::string satisfaction_name(Satisfaction s);

struct SatisfactionVerdict {
    Satisfaction status = Satisfaction::Inconclusive;
    bool is_exact = false;
    double lhs_value = 0.0, lhs_stderr = 0.0;
    double rhs_value = 0.0, rhs_stderr = 0.0;
    Rational lhs_exact, rhs_exact;  // valid when is_exact
    double acceptance = 1.0;        // root-tuple acceptance rate
    std::uint64_t accepted = 0, tuples = 0;
};

// Substitutes each graph with its induced density in g.  Exact when g has an
// exact block structure within budget; Monte Carlo otherwise, with one shared
// sample stream per distinct graph so evaluation is linear over sums.
SatisfactionVerdict evaluate_ordinary(const OrdinaryConstraint& c, const Graphon& g,
                                      std::uint64_t samples, std::uint64_t seed);

struct PartInfo {
    std::string name;
    Rational measure;                    // expected measure a_i
    double degree = 0.0;                 // expected degree d_i (or lower bound)
    bool degree_is_lower_bound = false;  // only ">= degree" is known
    // fitted by partition_by_degree
    double fitted_degree = 0.0;
    double fitted_measure = 0.0;
    std::uint64_t fitted_count = 0;
};

struct PartTable {
    std::vector<PartInfo> parts;
    double tol = 1e-6;

    static PartTable single();
    // The ten-part degree table of the Svejk graphon: A..G, P, R at measure
    // 1/13 with degrees (32..39)/104 and 28/104, and Q at 4/13 with the lower
    // bound 40/104.
    static PartTable svejk();

    int index_of(const std::string& name) const;  // -1 when absent
    // Nearest expected degree within tol (-1 when unassignable).
    int classify(const Graphon& g, double x) const;
};

// Fits the expected table against degrees sampled on a dense grid.
PartTable partition_by_degree(const Graphon& g, const PartTable& expected, double tol,
                              std::uint64_t grid = 20000);

struct DecoratedVertex {
    std::string name;
    int root_order = 0;  // 1-based among roots, 0 for non-roots
    std::string part;
};

struct DecoratedGraph {
    std::string name;
    std::vector<DecoratedVertex> vertices;
    // specified adjacencies keyed by vertex index pair (i < j); true = edge
    std::map<std::pair<int, int>, bool> pairs;

    int index_of(const std::string& vertex) const;
    int root_count() const;
    std::vector<int> roots_in_order() const;
    std::vector<int> nonroots() const;
    std::vector<std::pair<int, int>> unspecified_pairs() const;
};

// The two completions of one unspecified pair, in (non-edge, edge) order.
std::vector<DecoratedGraph> expand_unspecified(const DecoratedGraph& h);

struct DecoratedConstraint {
    std::vector<std::string> part_names;
    std::vector<DecoratedGraph> graphs;
    DensityExpression lhs, rhs;  // graph nodes reference graphs by name
};

// Block file format:
//   parts: A B
//   graph H
//     root 1 A
//     vertex v1 B
//     edge 1-v1
//     nonedge v1-v2
//   end
//   constraint: H = 1/16
// SyntaxError positions are line numbers.
DecoratedConstraint parse_decorated(const std::string& text);

// Deterministic rendering in the block format; round-trips through the parser.
std::string render_constraint(const DecoratedConstraint& c);

// Conditions root tuples on landing in their labeled parts and realizing the
// common root graph strictly (W > 0 on edges, W < 1 on non-edges), then
// estimates each decorated graph's substituted probability over non-root
// samples drawn from their labeled parts.  Vertices are never permuted.
SatisfactionVerdict evaluate_decorated(const DecoratedConstraint& c, const Graphon& g,
                                       const PartTable& parts, std::uint64_t rootSamples,
                                       std::uint64_t nonrootSamples, std::uint64_t seed);

}  // namespace graphonlab
