#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "graphonlab/graphon.hpp"
#include "graphonlab/setspec.hpp"

namespace graphonlab {

// Ordered list of pairwise disjoint non-null sets covering [0,1].
struct PartitionSpec {
    std::vector<SetSpec> parts;
    std::uint64_t grid = 0;  // optional reference block grid (0 = unset)

    static PartitionSpec single();
    // One part per block of g.
    static PartitionSpec blocks_of(const Graphon& g);
    // 2^c parts of the 2^m grid grouped by the first c bits of the block index.
    static PartitionSpec coordinate_signs(int m, int c);
};

// Exact measure of A inside each block of g.
std::vector<Rational> weights_on_graphon(const Graphon& g, const SetSpec& A);

// Validates the partition against g's blocks (disjoint, covering, non-null)
// and returns per-part block weights.
std::vector<std::vector<Rational>> partition_weights(const Graphon& g, const PartitionSpec& P);

// d(A, B) from block weights; exact when g is exact.
DensityResult density_blocks(const Graphon& g, const std::vector<Rational>& wA,
                             const std::vector<Rational>& wB);

struct DeviationWitness {
    SetSpec A = SetSpec::empty();
    SetSpec B = SetSpec::empty();
    bool is_exact = false;
    Rational exact;
    double deviation = 0.0;
};

struct EnergyResult {
    bool is_exact = false;
    Rational exact;
    double value = 0.0;
};

// Mean square density of the partition: sum_ij d(U_i,U_j)^2 / (|U_i||U_j|).
EnergyResult energy(const Graphon& g, const PartitionSpec& P);

// Exhaustive deviation maximization over block-subset pairs; parts must be
// unions of g's blocks and g can have at most 22 of them.
DeviationWitness deviation_exact(const Graphon& g, const PartitionSpec& P);

// Alternating sign maximization with restarts; the returned deviation is a
// certified lower bound (recomputed exactly whenever g is exact).
DeviationWitness deviation_heuristic(const Graphon& g, const PartitionSpec& P, int restarts,
                                     std::uint64_t seed);

struct EnergyRecord {
    int step = 0;
    std::size_t part_count = 0;
    double energy = 0.0;
};
using EnergyTrace = std::vector<EnergyRecord>;

// Frieze-Kannan refinement: split every part by the best witness's A and B
// until no witness above epsilon is found.  Every executed step must raise
// the energy by at least epsilon^2.
std::pair<PartitionSpec, EnergyTrace> fk_partition(const Graphon& g, double epsilon,
                                                   int deviation_budget = 20, std::uint64_t seed = 0);

struct WitnessReport {
    int m = 0;
    bool warn_small_m = false;            // m below the theorem's m >= 25 regime
    int i0 = 0;                           // chosen coordinate, 1-based
    std::vector<Rational> S;              // S_t per part
    std::vector<bool> small_flags;        // |U_t| <= 2^(-m/3)
    std::vector<int> M;                   // count of useful coordinates per part
    Rational useful_measure;              // total measure of parts useful at i0
    bool eq2_holds = false;               // sum_t M_t |U_t| >= m/32
    // Mass of A^- / A^+ inside each part, block index -> weight.
    std::vector<std::map<std::uint64_t, Rational>> a_minus, a_plus;
    SetSpec Aminus = SetSpec::empty();
    SetSpec Aplus = SetSpec::empty();
    SetSpec B = SetSpec::empty();
    bool is_exact = false;
    Rational discrepancy;                 // |d(A^-,B) - d(A^+,B)|
    double discrepancy_d = 0.0;
    Rational implied_epsilon() const { return discrepancy / 2; }
};

// Constructive refuter for W_CF^m: builds the witness showing the partition
// cannot be epsilon-regular for any epsilon below discrepancy/2.
WitnessReport refute_cf(int m, const PartitionSpec& P);

struct RefuteVerdict {
    bool structure_ok = false;
    bool intersections_ok = false;
    bool discrepancy_ok = false;
    bool ok = false;
    Rational recomputed_discrepancy;
    double recomputed_discrepancy_d = 0.0;
    std::string message;
};

// Independent re-derivation of the report: checks B = V_{i0}^-, the equal
// per-part intersection masses, and the discrepancy via the binomial row-sum
// closed form.
RefuteVerdict refute_verify(const WitnessReport& report, int m, const PartitionSpec& P);

}  // namespace graphonlab
