#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "graphonlab/rational.hpp"
#include "graphonlab/setspec.hpp"

namespace graphonlab {

enum class GraphonKind { Constant, Step, ConlonFox, Svejk, Half, Restriction };

std::string kind_name(GraphonKind k);

class Graphon {
public:
    virtual ~Graphon() = default;

    virtual double value(double x, double y) const = 0;
    virtual GraphonKind kind() const = 0;

    // True when cell values are exact rationals.
    virtual bool exact() const { return false; }

    // Block structure, if any. block_count() == 0 means no usable structure.
    virtual std::uint64_t block_count() const { return 0; }
    virtual Rational block_measure(std::uint64_t) const { throw Error("graphon has no block structure"); }
    virtual Rational cell(std::uint64_t, std::uint64_t) const { throw Error("graphon has no exact cells"); }
    virtual double cell_value(std::uint64_t i, std::uint64_t j) const { return to_double(cell(i, j)); }
    virtual std::uint64_t block_of(double) const { throw Error("graphon has no block structure"); }

    // Row integral within +-tol.
    virtual double degree(double x, double tol) const;

    // Sampling-safe evaluation: identical to value() except implementations
    // may resolve points that value() refuses (Monte Carlo drivers use this).
    virtual double value_sample(double x, double y) const { return value(x, y); }
};

using GraphonPtr = std::shared_ptr<const Graphon>;

class StepGraphon : public Graphon {
public:
    StepGraphon(std::vector<Rational> breakpoints, std::vector<std::vector<Rational>> values);

    double value(double x, double y) const override;
    GraphonKind kind() const override { return GraphonKind::Step; }
    bool exact() const override { return true; }
    std::uint64_t block_count() const override { return values_.size(); }
    Rational block_measure(std::uint64_t i) const override;
    Rational cell(std::uint64_t i, std::uint64_t j) const override;
    std::uint64_t block_of(double x) const override;
    double degree(double x, double tol) const override;

    const std::vector<Rational>& breakpoints() const { return breaks_; }

private:
    std::vector<Rational> breaks_;
    std::vector<double> breaks_d_;
    std::vector<double> degrees_d_;
    std::vector<std::vector<Rational>> values_;
};

class ConstantGraphon : public StepGraphon {
public:
    explicit ConstantGraphon(const Rational& p);
    GraphonKind kind() const override { return GraphonKind::Constant; }
    const Rational& p() const { return p_; }

private:
    Rational p_;
};

class HalfGraphon : public Graphon {
public:
    double value(double x, double y) const override { return x + y >= 1.0 ? 1.0 : 0.0; }
    GraphonKind kind() const override { return GraphonKind::Half; }
    double degree(double x, double) const override { return x; }
};

GraphonPtr make_constant(const Rational& p);
GraphonPtr make_step(std::vector<Rational> breakpoints, std::vector<std::vector<Rational>> values);
GraphonPtr make_half();

struct DensityResult {
    bool is_exact = false;
    Rational exact;   // valid when is_exact
    double approx = 0.0;  // always valid
};

// Unnormalized pair-set density: integral of W over A x B.
DensityResult density_sets(const Graphon& g, const SetSpec& A, const SetSpec& B, double tol = 1e-9);

// Exact integral of the half graphon over an interval-form rectangle system.
Rational half_density_intervals(const std::vector<std::pair<Rational, Rational>>& A,
                                const std::vector<std::pair<Rational, Rational>>& B);

}  // namespace graphonlab
