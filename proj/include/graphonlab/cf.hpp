#pragma once

#include <cstdint>
#include <vector>

#include "graphonlab/graphon.hpp"

namespace graphonlab {

// Conlon-Fox graphon: 2^m equal blocks indexed by sign vectors in {-1,+1}^m;
// the cell of blocks a, b equals trunc(1/2 + <u,u'>/(4 sqrt(m))) with
// <u,u'> = m - 2 * hamming(a, b).  Never materialized: all access goes
// through block indices and popcounts.
class CFGraphon : public Graphon {
public:
    explicit CFGraphon(int m);

    double value(double x, double y) const override;
    GraphonKind kind() const override { return GraphonKind::ConlonFox; }
    bool exact() const override { return square_; }
    std::uint64_t block_count() const override { return std::uint64_t(1) << m_; }
    Rational block_measure(std::uint64_t) const override { return Rational(1, BigInt(1) << m_); }
    Rational cell(std::uint64_t i, std::uint64_t j) const override;
    double cell_value(std::uint64_t i, std::uint64_t j) const override;
    std::uint64_t block_of(double x) const override;
    double degree(double x, double tol) const override;

    int m() const { return m_; }
    bool perfect_square() const { return square_; }
    int sqrt_m() const { return sqrt_m_; }

    // Cell value from a Hamming distance.
    double value_at_distance(int h) const;
    // Exact numerator over denominator 4*sqrt(m): clamp(2 sqrt(m) + m - 2h, 0, 4 sqrt(m)).
    long cell_numerator(int h) const;

private:
    int m_;
    bool square_;
    int sqrt_m_;  // valid when square_
    double inv_4sqrt_;
};

GraphonPtr make_cf(int m);

// d(A, B) for block-weight sets on the 2^m grid, via the Walsh-Hadamard
// transform (exact for perfect-square m; double arithmetic otherwise).
DensityResult cf_density_blocks(const CFGraphon& g, const std::vector<Rational>& wA,
                                const std::vector<Rational>& wB);

// d([0,1],[0,1]) via the binomial distribution of Hamming distances.
DensityResult cf_unit_density(const CFGraphon& g);

// Fraction of block pairs whose cell value is strictly between 0 and 1.
Rational interior_measure_cf(int m);

}  // namespace graphonlab
