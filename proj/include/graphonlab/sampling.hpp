#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphonlab/graphon.hpp"
#include "graphonlab/graphs.hpp"

namespace graphonlab {

struct DensityEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

std::string render_estimate(const DensityEstimate& e);

// W-random graph of order k: one uniform variate per vertex (in vertex
// order), then one per pair in pair_slot order; edge ij present iff the pair
// variate is below g(x_i, x_j).
SimpleGraph w_random_graph(const Graphon& g, int k, std::uint64_t seed);

// Bernoulli Monte Carlo estimate of the induced density d(H, g): the
// probability that a W-random graph of order |H| is isomorphic to H.
// The budget is split into fixed-size chunks on independent substreams.
DensityEstimate induced_density_mc(const SimpleGraph& H, const Graphon& g, std::uint64_t samples,
                                   std::uint64_t seed);

// Exact induced density for graphons with exact block structure.  Sums over
// block assignments of H's vertices and, within each assignment, over the
// distinct labeled copies of H.
Rational induced_density_exact(const SimpleGraph& H, const Graphon& g, double budget = 1e8);

struct ProfileRow {
    SimpleGraph graph;
    DensityEstimate est;
};

struct ProfileVerdict {
    bool sums_to_one = false;
    double sum = 0.0;
    std::vector<ProfileRow> rows;
};

// Estimates d(H, g) for every isomorphism class on k vertices from one shared
// sample stream; the per-sample counts must partition the budget exactly.
ProfileVerdict density_profile_sum_check(int k, const Graphon& g, std::uint64_t samples,
                                         std::uint64_t seed);

struct ProbeRow {
    int m;  // 0 stands for the constant-1/2 comparison row
    DensityEstimate est;
};

// d(H, W_CF^m) for each m, plus the constant-1/2 row, all evaluated on common
// random numbers so the trend toward the constant limit is visible.
std::vector<ProbeRow> cf_convergence_probe(const SimpleGraph& H, const std::vector<int>& ms,
                                           std::uint64_t samples, std::uint64_t seed);

}  // namespace graphonlab
