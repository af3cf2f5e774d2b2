#include "graphonlab/graphon.hpp"

#include <algorithm>
#include <cmath>

#include "graphonlab/cf.hpp"
#include "graphonlab/errors.hpp"

namespace graphonlab {

std::string kind_name(GraphonKind k) {
    switch (k) {
        case GraphonKind::Constant: return "constant";
        case GraphonKind::Step: return "step";
        case GraphonKind::ConlonFox: return "conlon-fox";
        case GraphonKind::Svejk: return "svejk";
        case GraphonKind::Half: return "half";
        case GraphonKind::Restriction: return "restriction";
    }
    return "?";
}

double Graphon::degree(double x, double tol) const {
    // Midpoint rule with grid doubling until the estimate stabilizes.
    double prev = 0.0, cur = 0.0;
    for (int n = 1 << 8; n <= (1 << 20); n <<= 1) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += value(x, (i + 0.5) / n);
        prev = cur;
        cur = s / n;
        if (n > (1 << 8) && std::abs(cur - prev) < tol / 2) return cur;
    }
    return cur;
}

StepGraphon::StepGraphon(std::vector<Rational> breakpoints, std::vector<std::vector<Rational>> values)
    : breaks_(std::move(breakpoints)), values_(std::move(values)) {
    std::size_t n = values_.size();
    if (n == 0 || breaks_.size() != n + 1) throw OutOfRange("StepGraphon: breakpoint/value size mismatch");
    if (breaks_.front() != 0 || breaks_.back() != 1) throw OutOfRange("StepGraphon: breakpoints must span [0,1]");
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
        if (breaks_[i] >= breaks_[i + 1]) throw OutOfRange("StepGraphon: breakpoints must increase");
    for (const auto& row : values_) {
        if (row.size() != n) throw OutOfRange("StepGraphon: value matrix must be square");
        for (const auto& v : row)
            if (v < 0 || v > 1) throw OutOfRange("StepGraphon: cell outside [0,1]");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (values_[i][j] != values_[j][i]) throw OutOfRange("StepGraphon: value matrix must be symmetric");
    breaks_d_.reserve(breaks_.size());
    for (const auto& b : breaks_) breaks_d_.push_back(to_double(b));
    degrees_d_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational d = 0;
        for (std::size_t j = 0; j < n; ++j) d += values_[i][j] * (breaks_[j + 1] - breaks_[j]);
        degrees_d_.push_back(to_double(d));
    }
}

std::uint64_t StepGraphon::block_of(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) throw OutOfDomain("StepGraphon: point outside [0,1]");
    auto it = std::upper_bound(breaks_d_.begin(), breaks_d_.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - breaks_d_.begin());
    if (idx == 0) return 0;
    if (idx >= breaks_d_.size()) return values_.size() - 1;
    return idx - 1;
}

double StepGraphon::value(double x, double y) const { return to_double(values_[block_of(x)][block_of(y)]); }

Rational StepGraphon::block_measure(std::uint64_t i) const { return breaks_[i + 1] - breaks_[i]; }

Rational StepGraphon::cell(std::uint64_t i, std::uint64_t j) const { return values_[i][j]; }

double StepGraphon::degree(double x, double) const { return degrees_d_[block_of(x)]; }

ConstantGraphon::ConstantGraphon(const Rational& p)
    : StepGraphon({Rational(0), Rational(1)}, {{p}}), p_(p) {}

GraphonPtr make_constant(const Rational& p) {
    if (p < 0 || p > 1) throw OutOfRange("constant graphon needs p in [0,1]");
    return std::make_shared<ConstantGraphon>(p);
}

GraphonPtr make_step(std::vector<Rational> breakpoints, std::vector<std::vector<Rational>> values) {
    return std::make_shared<StepGraphon>(std::move(breakpoints), std::move(values));
}

GraphonPtr make_half() { return std::make_shared<HalfGraphon>(); }

Rational half_density_intervals(const std::vector<std::pair<Rational, Rational>>& A,
                                const std::vector<std::pair<Rational, Rational>>& B) {
    Rational total = 0;
    for (const auto& [a1, b1] : A) {
        for (const auto& [a2, b2] : B) {
            // Area of {x + y >= 1} inside [a1,b1) x [a2,b2).
            Rational lo = 1 - b2, hi = 1 - a2;
            Rational p1 = std::clamp(lo, a1, b1), p2 = std::clamp(hi, a1, b1);
            Rational ramp = ((p2 - lo) * (p2 - lo) - (p1 - lo) * (p1 - lo)) / 2;
            Rational flat = (b1 - p2) * (b2 - a2);
            total += ramp + flat;
        }
    }
    return total;
}

namespace {

double numeric_density(const Graphon& g, const std::vector<std::pair<Rational, Rational>>& A,
                       const std::vector<std::pair<Rational, Rational>>& B, double tol) {
    double prev = 0.0, cur = 0.0;
    for (int n = 64; n <= 4096; n <<= 1) {
        double total = 0.0;
        for (const auto& [a1, b1] : A) {
            double x0 = to_double(a1), x1 = to_double(b1);
            for (const auto& [a2, b2] : B) {
                double y0 = to_double(a2), y1 = to_double(b2);
                double s = 0.0;
                for (int i = 0; i < n; ++i) {
                    double x = x0 + (x1 - x0) * (i + 0.5) / n;
                    for (int j = 0; j < n; ++j) {
                        double y = y0 + (y1 - y0) * (j + 0.5) / n;
                        s += g.value(x, y);
                    }
                }
                total += s / (double(n) * n) * (x1 - x0) * (y1 - y0);
            }
        }
        prev = cur;
        cur = total;
        if (n > 64 && std::abs(cur - prev) < tol / 2) break;
    }
    return cur;
}

DensityResult exact_result(Rational v) {
    DensityResult r;
    r.is_exact = true;
    r.approx = to_double(v);
    r.exact = std::move(v);
    return r;
}

}  // namespace

DensityResult density_sets(const Graphon& g, const SetSpec& A, const SetSpec& B, double tol) {
    if (A.measure() == 0 || B.measure() == 0) return exact_result(Rational(0));

    if (g.kind() == GraphonKind::ConlonFox) {
        const auto& cf = static_cast<const CFGraphon&>(g);
        if (A.is_unit_interval() && B.is_unit_interval()) {
            auto u = cf_unit_density(cf);
            if (u.is_exact) {
                u.exact *= A.measure() * B.measure();  // both are 1; keep the identity obvious
                return u;
            }
            return u;
        }
        if (cf.m() <= 20) {
            SetSpec Ab = A.to_blocks(cf.block_count());
            SetSpec Bb = B.to_blocks(cf.block_count());
            return cf_density_blocks(cf, Ab.weights(), Bb.weights());
        }
        DensityResult r;
        r.approx = numeric_density(g, A.to_intervals(), B.to_intervals(), tol);
        return r;
    }

    if (g.block_count() > 0) {
        // Step-structured graphon with rational breakpoints: exact double sum.
        std::uint64_t n = g.block_count();
        std::vector<Rational> wA(n, Rational(0)), wB(n, Rational(0));
        auto accumulate = [&](const SetSpec& S, std::vector<Rational>& w) {
            if (S.is_blocks()) {
                if (S.grid() != n) throw GridMismatch("set grid does not match graphon blocks");
                // Equal-block grid assumed for block-form sets.
                for (std::uint64_t i = 0; i < n; ++i) {
                    if (S.weights()[i] > g.block_measure(i))
                        throw GridMismatch("block weight exceeds block measure");
                    w[i] = S.weights()[i];
                }
                return;
            }
            // Interval form: intersect with the (possibly uneven) blocks.
            Rational lo = 0;
            for (std::uint64_t i = 0; i < n; ++i) {
                Rational hi = lo + g.block_measure(i);
                for (const auto& [a, b] : S.interval_list()) {
                    Rational s = std::max(a, lo), e = std::min(b, hi);
                    if (e > s) w[i] += e - s;
                }
                lo = hi;
            }
        };
        accumulate(A, wA);
        accumulate(B, wB);
        Rational total = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            if (wA[i] == 0) continue;
            Rational row = 0;
            for (std::uint64_t j = 0; j < n; ++j) {
                if (wB[j] == 0) continue;
                row += g.cell(i, j) * wB[j];
            }
            total += wA[i] * row;
        }
        return exact_result(std::move(total));
    }

    if (g.kind() == GraphonKind::Half) {
        return exact_result(half_density_intervals(A.to_intervals(), B.to_intervals()));
    }

    DensityResult r;
    r.approx = numeric_density(g, A.to_intervals(), B.to_intervals(), tol);
    return r;
}

}  // namespace graphonlab
