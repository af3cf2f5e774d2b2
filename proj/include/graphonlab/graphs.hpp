#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace graphonlab {

// Simple undirected graph on vertices 0..n-1, at most 10 vertices for any
// isomorphism-sensitive operation.
struct SimpleGraph {
    int n = 0;
    std::set<std::pair<int, int>> edges;  // normalized to first < second

    SimpleGraph() = default;
    explicit SimpleGraph(int n_) : n(n_) {}

    void add_edge(int i, int j);
    bool has_edge(int i, int j) const;
    int edge_count() const { return static_cast<int>(edges.size()); }
};

SimpleGraph complete_graph(int n);
SimpleGraph empty_graph(int n);
SimpleGraph cycle_graph(int n);
SimpleGraph path_graph(int n);

// Plain-text form: "n=<k>" then "edges=<i>-<j> <i>-<j> ..." (second line may
// be "edges=" or absent for edgeless graphs).
SimpleGraph parse_graph(const std::string& text);
std::string render_graph(const SimpleGraph& g);

// Pair-slot index for upper-triangular edge masks, row-major: (0,1), (0,2),
// ..., (0,n-1), (1,2), ...  This is also the order in which samplers consume
// pair variates.
int pair_slot(int i, int j, int n);

std::uint64_t mask_of(const SimpleGraph& g);
SimpleGraph graph_from_mask(int n, std::uint64_t mask);

// Minimum upper-triangular adjacency code over all vertex relabelings
// (branch-and-bound; n <= 10).
std::uint64_t canonical_code(const SimpleGraph& g);
std::uint64_t canonical_code_mask(int n, std::uint64_t mask);

bool isomorphic(const SimpleGraph& a, const SimpleGraph& b);

// All n!-orbit representatives: one graph per isomorphism class on n vertices
// (n <= 5), sorted by edge count then canonical code.
std::vector<SimpleGraph> isomorphism_classes(int n);

// Distinct labeled edge masks isomorphic to g (the labeled copies of g).
std::vector<std::uint64_t> labeled_copies(const SimpleGraph& g);

}  // namespace graphonlab
