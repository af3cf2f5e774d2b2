#include "graphonlab/setspec.hpp"

#include <algorithm>

#include "graphonlab/errors.hpp"

namespace graphonlab {

SetSpec SetSpec::intervals(std::vector<std::pair<Rational, Rational>> iv) {
    std::sort(iv.begin(), iv.end());
    for (auto& [a, b] : iv)
        if (a < 0 || b > 1 || a >= b) throw OutOfRange("SetSpec: bad interval");
    for (std::size_t i = 1; i < iv.size(); ++i)
        if (iv[i].first < iv[i - 1].second) throw OutOfRange("SetSpec: overlapping intervals");
    SetSpec s;
    s.form_ = Form::Intervals;
    s.intervals_ = std::move(iv);
    return s;
}

SetSpec SetSpec::unit() { return intervals({{Rational(0), Rational(1)}}); }

SetSpec SetSpec::empty() { return intervals({}); }

SetSpec SetSpec::block_weights(std::uint64_t grid, std::vector<Rational> weights) {
    if (grid == 0 || weights.size() != grid) throw OutOfRange("SetSpec: weight vector must match grid");
    Rational width(1, grid);
    for (const auto& w : weights)
        if (w < 0 || w > width) throw OutOfRange("SetSpec: block weight outside [0, 1/grid]");
    SetSpec s;
    s.form_ = Form::Blocks;
    s.grid_ = grid;
    s.weights_ = std::move(weights);
    return s;
}

SetSpec SetSpec::full_blocks(std::uint64_t grid, const std::vector<std::uint64_t>& blocks) {
    std::vector<Rational> w(grid, Rational(0));
    Rational width(1, grid);
    for (auto b : blocks) {
        if (b >= grid) throw OutOfRange("SetSpec: block index outside grid");
        w[b] = width;
    }
    return block_weights(grid, std::move(w));
}

Rational SetSpec::measure() const {
    Rational m = 0;
    if (form_ == Form::Intervals) {
        for (const auto& [a, b] : intervals_) m += b - a;
    } else {
        for (const auto& w : weights_) m += w;
    }
    return m;
}

bool SetSpec::is_unit_interval() const {
    if (form_ == Form::Intervals)
        return intervals_.size() == 1 && intervals_[0].first == 0 && intervals_[0].second == 1;
    Rational width(1, grid_);
    for (const auto& w : weights_)
        if (w != width) return false;
    return true;
}

SetSpec SetSpec::to_blocks(std::uint64_t grid) const {
    if (form_ == Form::Blocks) {
        if (grid_ != grid) throw GridMismatch("SetSpec: grid " + std::to_string(grid_) + " vs expected " + std::to_string(grid));
        return *this;
    }
    if (grid == 0 || grid > (1u << 21)) throw OutOfRange("SetSpec: unsupported grid size");
    std::vector<Rational> w(grid, Rational(0));
    for (const auto& [a, b] : intervals_) {
        for (std::uint64_t blk = (a * grid).convert_to<BigInt>().convert_to<std::uint64_t>(); blk < grid; ++blk) {
            Rational lo(blk, grid), hi(blk + 1, grid);
            if (lo >= b) break;
            Rational s = std::max(lo, a), e = std::min(hi, b);
            if (e > s) w[blk] += e - s;
        }
    }
    return block_weights(grid, std::move(w));
}

std::vector<std::pair<Rational, Rational>> SetSpec::to_intervals() const {
    if (form_ == Form::Intervals) return intervals_;
    std::vector<std::pair<Rational, Rational>> iv;
    for (std::uint64_t b = 0; b < grid_; ++b) {
        if (weights_[b] == 0) continue;
        Rational lo(b, grid_);
        iv.emplace_back(lo, lo + weights_[b]);
    }
    return iv;
}

}  // namespace graphonlab
