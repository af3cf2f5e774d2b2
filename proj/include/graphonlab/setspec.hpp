#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "graphonlab/rational.hpp"

namespace graphonlab {

// A measurable subset of [0,1]: either a union of disjoint half-open rational
// intervals, or a weight per block of a reference grid of N equal blocks
// (weight = measure of the intersection with that block).
class SetSpec {
public:
    enum class Form { Intervals, Blocks };

    static SetSpec intervals(std::vector<std::pair<Rational, Rational>> iv);
    static SetSpec unit();
    static SetSpec empty();
    static SetSpec block_weights(std::uint64_t grid, std::vector<Rational> weights);
    static SetSpec full_blocks(std::uint64_t grid, const std::vector<std::uint64_t>& blocks);

    Form form() const { return form_; }
    bool is_blocks() const { return form_ == Form::Blocks; }
    std::uint64_t grid() const { return grid_; }
    const std::vector<Rational>& weights() const { return weights_; }
    const std::vector<std::pair<Rational, Rational>>& interval_list() const { return intervals_; }

    Rational measure() const;
    bool is_unit_interval() const;

    // Exact conversion of the interval form to block weights on an equal-block
    // grid; block-form inputs must already be on the requested grid.
    SetSpec to_blocks(std::uint64_t grid) const;

    // Left-anchored interval realization of a block-weight set: the weight of
    // each block occupies the leftmost sub-interval of that block.
    std::vector<std::pair<Rational, Rational>> to_intervals() const;

private:
    SetSpec() = default;
    Form form_ = Form::Intervals;
    std::vector<std::pair<Rational, Rational>> intervals_;
    std::uint64_t grid_ = 0;
    std::vector<Rational> weights_;
};

}  // namespace graphonlab
