#include "graphonlab/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "graphonlab/cf.hpp"
#include "graphonlab/errors.hpp"
#include "graphonlab/rng.hpp"

namespace graphonlab {

namespace {

Rational total(const std::vector<Rational>& w) {
    Rational s = 0;
    for (const auto& x : w) s += x;
    return s;
}

bool uniform_blocks(const Graphon& g) {
    std::uint64_t n = g.block_count();
    Rational unit(1, BigInt(n));
    for (std::uint64_t i = 0; i < n; ++i)
        if (g.block_measure(i) != unit) return false;
    return true;
}

// SetSpec for a union of g's blocks.
SetSpec blocks_set(const Graphon& g, const std::vector<char>& in) {
    std::uint64_t n = g.block_count();
    if (const auto* s = dynamic_cast<const StepGraphon*>(&g)) {
        std::vector<std::pair<Rational, Rational>> iv;
        for (std::uint64_t b = 0; b < n; ++b) {
            if (!in[b]) continue;
            auto lo = s->breakpoints()[b], hi = s->breakpoints()[b + 1];
            if (!iv.empty() && iv.back().second == lo)
                iv.back().second = hi;
            else
                iv.push_back({lo, hi});
        }
        return SetSpec::intervals(std::move(iv));
    }
    std::vector<std::uint64_t> blocks;
    for (std::uint64_t b = 0; b < n; ++b)
        if (in[b]) blocks.push_back(b);
    return SetSpec::full_blocks(n, blocks);
}

void wht_double(std::vector<double>& a) {
    std::size_t n = a.size();
    for (std::size_t len = 1; len < n; len <<= 1)
        for (std::size_t i = 0; i < n; i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                double u = a[j], v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
}

// Exhaustive subset search: for each A-subset (Gray order) the optimal B is
// chosen per column sign.  T is __int128 (scaled integers) or double.
template <typename T>
void gray_search(const std::vector<std::vector<T>>& delta, T& best, std::uint32_t& bestA,
                 std::uint32_t& bestB) {
    int n = static_cast<int>(delta.size());
    std::vector<T> col(n, T(0));
    T pos = 0, neg = 0;
    best = 0;
    bestA = bestB = 0;
    std::vector<char> inA(n, 0);
    std::uint32_t grayPrev = 0;
    for (std::uint32_t i = 1; i < (std::uint32_t(1) << n); ++i) {
        std::uint32_t gray = i ^ (i >> 1);
        int r = __builtin_ctz(gray ^ grayPrev);
        grayPrev = gray;
        T sgn = inA[r] ? T(-1) : T(1);
        inA[r] ^= 1;
        for (int b = 0; b < n; ++b) {
            T oldv = col[b];
            T newv = oldv + sgn * delta[r][b];
            col[b] = newv;
            if (oldv > 0) pos -= oldv; else neg -= oldv;
            if (newv > 0) pos += newv; else neg += newv;
        }
        if (pos > best) { best = pos; bestA = gray; bestB = 1; }
        if (-neg > best) { best = -neg; bestA = gray; bestB = 2; }
    }
    // Recover the actual B mask for the winner.
    if (bestA != 0) {
        std::vector<T> c(n, T(0));
        for (int rr = 0; rr < n; ++rr)
            if (bestA >> rr & 1)
                for (int b = 0; b < n; ++b) c[b] += delta[rr][b];
        std::uint32_t mask = 0;
        for (int b = 0; b < n; ++b) {
            if (bestB == 1 && c[b] > 0) mask |= std::uint32_t(1) << b;
            if (bestB == 2 && c[b] < 0) mask |= std::uint32_t(1) << b;
        }
        bestB = mask;
    } else {
        bestB = 0;
    }
}

struct PairData {
    bool exact = false;
    std::vector<Rational> mu;                  // part measures
    std::vector<std::vector<Rational>> d;      // pair densities (exact path)
    std::vector<std::vector<double>> dd;       // pair densities (double)
};

PairData pair_densities(const Graphon& g, const std::vector<std::vector<Rational>>& W) {
    std::size_t k = W.size();
    PairData pd;
    pd.exact = g.exact();
    pd.mu.resize(k);
    pd.d.assign(k, std::vector<Rational>(k));
    pd.dd.assign(k, std::vector<double>(k));
    for (std::size_t i = 0; i < k; ++i) pd.mu[i] = total(W[i]);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            auto r = density_blocks(g, W[i], W[j]);
            pd.exact = pd.exact && r.is_exact;
            pd.d[i][j] = pd.d[j][i] = r.exact;
            pd.dd[i][j] = pd.dd[j][i] = r.approx;
        }
    return pd;
}

}  // namespace

PartitionSpec PartitionSpec::single() {
    PartitionSpec p;
    p.parts.push_back(SetSpec::unit());
    return p;
}

PartitionSpec PartitionSpec::blocks_of(const Graphon& g) {
    std::uint64_t n = g.block_count();
    if (n == 0) throw GridMismatch("graphon has no block structure");
    PartitionSpec p;
    p.grid = n;
    std::vector<char> in(n, 0);
    for (std::uint64_t b = 0; b < n; ++b) {
        std::fill(in.begin(), in.end(), 0);
        in[b] = 1;
        p.parts.push_back(blocks_set(g, in));
    }
    return p;
}

PartitionSpec PartitionSpec::coordinate_signs(int m, int c) {
    if (m < 1 || m > 20) throw OutOfRange("m out of range");
    if (c < 0 || c > m || c > 20) throw OutOfRange("coordinate count out of range");
    std::uint64_t n = std::uint64_t(1) << m;
    PartitionSpec p;
    p.grid = n;
    for (std::uint64_t pat = 0; pat < (std::uint64_t(1) << c); ++pat) {
        std::vector<std::uint64_t> blocks;
        for (std::uint64_t b = 0; b < n; ++b)
            if ((b & ((std::uint64_t(1) << c) - 1)) == pat) blocks.push_back(b);
        p.parts.push_back(SetSpec::full_blocks(n, blocks));
    }
    return p;
}

std::vector<Rational> weights_on_graphon(const Graphon& g, const SetSpec& A) {
    std::uint64_t n = g.block_count();
    if (n == 0) throw GridMismatch("graphon has no block structure");
    if (A.is_blocks()) {
        if (A.grid() != n) throw GridMismatch("set grid does not match the graphon's blocks");
        if (!uniform_blocks(g)) throw GridMismatch("block-weight sets need equal-measure blocks");
        return A.weights();
    }
    std::vector<Rational> w(n, Rational(0));
    Rational lo = 0;
    for (std::uint64_t b = 0; b < n; ++b) {
        Rational hi = lo + g.block_measure(b);
        for (const auto& [a0, a1] : A.interval_list()) {
            Rational l = std::max(a0, lo), r = std::min(a1, hi);
            if (r > l) w[b] += r - l;
        }
        lo = hi;
    }
    return w;
}

std::vector<std::vector<Rational>> partition_weights(const Graphon& g, const PartitionSpec& P) {
    if (P.parts.empty()) throw NullPart("partition has no parts");
    std::uint64_t n = g.block_count();
    std::vector<std::vector<Rational>> W;
    for (const auto& part : P.parts) {
        W.push_back(weights_on_graphon(g, part));
        if (total(W.back()) == 0) throw NullPart("partition contains a null part");
    }
    for (std::uint64_t b = 0; b < n; ++b) {
        Rational s = 0;
        for (const auto& w : W) s += w[b];
        if (s != g.block_measure(b)) throw MeasureMismatch("parts do not partition [0,1]");
    }
    return W;
}

DensityResult density_blocks(const Graphon& g, const std::vector<Rational>& wA,
                             const std::vector<Rational>& wB) {
    if (const auto* cf = dynamic_cast<const CFGraphon*>(&g)) return cf_density_blocks(*cf, wA, wB);
    std::uint64_t n = g.block_count();
    DensityResult r;
    if (g.exact()) {
        Rational t = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            if (wA[i] == 0) continue;
            Rational row = 0;
            for (std::uint64_t j = 0; j < n; ++j)
                if (wB[j] != 0) row += g.cell(i, j) * wB[j];
            t += wA[i] * row;
        }
        r.is_exact = true;
        r.exact = t;
        r.approx = to_double(t);
    } else {
        double t = 0;
        for (std::uint64_t i = 0; i < n; ++i)
            for (std::uint64_t j = 0; j < n; ++j)
                t += to_double(wA[i]) * to_double(wB[j]) * g.cell_value(i, j);
        r.approx = t;
    }
    return r;
}

EnergyResult energy(const Graphon& g, const PartitionSpec& P) {
    auto W = partition_weights(g, P);
    auto pd = pair_densities(g, W);
    EnergyResult res;
    res.is_exact = pd.exact;
    if (pd.exact) {
        Rational e = 0;
        for (std::size_t i = 0; i < W.size(); ++i)
            for (std::size_t j = 0; j < W.size(); ++j)
                e += pd.d[i][j] * pd.d[i][j] / (pd.mu[i] * pd.mu[j]);
        res.exact = e;
        res.value = to_double(e);
    } else {
        double e = 0;
        for (std::size_t i = 0; i < W.size(); ++i)
            for (std::size_t j = 0; j < W.size(); ++j)
                e += pd.dd[i][j] * pd.dd[i][j] / (to_double(pd.mu[i]) * to_double(pd.mu[j]));
        res.value = e;
    }
    return res;
}

DeviationWitness deviation_exact(const Graphon& g, const PartitionSpec& P) {
    std::uint64_t n = g.block_count();
    if (n == 0) throw GridMismatch("graphon has no block structure");
    if (n > 22) throw TooManyBlocks("exhaustive search supports at most 22 blocks");
    auto W = partition_weights(g, P);
    // every block must belong wholly to one part
    std::vector<std::size_t> owner(n);
    for (std::uint64_t b = 0; b < n; ++b) {
        bool found = false;
        for (std::size_t t = 0; t < W.size(); ++t) {
            if (W[t][b] == g.block_measure(b)) {
                owner[b] = t;
                found = true;
            } else if (W[t][b] != 0) {
                throw PreconditionViolated("parts must be unions of the graphon's blocks");
            }
        }
        if (!found) throw PreconditionViolated("parts must be unions of the graphon's blocks");
    }
    auto pd = pair_densities(g, W);

    DeviationWitness wit;
    std::uint32_t maskA = 0, maskB = 0;
    if (pd.exact) {
        // delta(b,b') = (cell - d_ij/(mu_i mu_j)) * mu_b mu_b', scaled to integers
        std::vector<std::vector<Rational>> delta(n, std::vector<Rational>(n));
        BigInt L = 1;
        for (std::uint64_t b = 0; b < n; ++b)
            for (std::uint64_t b2 = 0; b2 < n; ++b2) {
                std::size_t i = owner[b], j = owner[b2];
                delta[b][b2] = (g.cell(b, b2) - pd.d[i][j] / (pd.mu[i] * pd.mu[j])) *
                               g.block_measure(b) * g.block_measure(b2);
                L = boost::multiprecision::lcm(L, boost::multiprecision::denominator(delta[b][b2]));
            }
        if (boost::multiprecision::msb(L) + 1 <= 90) {
            std::vector<std::vector<__int128>> dn(n, std::vector<__int128>(n));
            for (std::uint64_t b = 0; b < n; ++b)
                for (std::uint64_t b2 = 0; b2 < n; ++b2) {
                    BigInt num = boost::multiprecision::numerator(delta[b][b2]) *
                                 (L / boost::multiprecision::denominator(delta[b][b2]));
                    dn[b][b2] = num.convert_to<__int128>();
                }
            __int128 best;
            gray_search(dn, best, maskA, maskB);
            Rational dev(BigInt(best), L);
            wit.is_exact = true;
            wit.exact = dev;
            wit.deviation = to_double(dev);
        } else {
            // scale too large for the integer engine; search in doubles and
            // certify the winner exactly
            std::vector<std::vector<double>> dd(n, std::vector<double>(n));
            for (std::uint64_t b = 0; b < n; ++b)
                for (std::uint64_t b2 = 0; b2 < n; ++b2) dd[b][b2] = to_double(delta[b][b2]);
            double best;
            gray_search(dd, best, maskA, maskB);
            Rational dev = 0;
            for (std::uint64_t b = 0; b < n; ++b)
                if (maskA >> b & 1)
                    for (std::uint64_t b2 = 0; b2 < n; ++b2)
                        if (maskB >> b2 & 1) dev += delta[b][b2];
            wit.is_exact = true;
            wit.exact = boost::multiprecision::abs(dev);
            wit.deviation = to_double(wit.exact);
        }
    } else {
        std::vector<std::vector<double>> dd(n, std::vector<double>(n));
        for (std::uint64_t b = 0; b < n; ++b)
            for (std::uint64_t b2 = 0; b2 < n; ++b2) {
                std::size_t i = owner[b], j = owner[b2];
                double mu2 = to_double(g.block_measure(b)) * to_double(g.block_measure(b2));
                dd[b][b2] = (g.cell_value(b, b2) - pd.dd[i][j] / (to_double(pd.mu[i]) * to_double(pd.mu[j]))) * mu2;
            }
        double best;
        gray_search(dd, best, maskA, maskB);
        wit.deviation = best;
    }
    std::vector<char> inA(n, 0), inB(n, 0);
    for (std::uint64_t b = 0; b < n; ++b) {
        inA[b] = maskA >> b & 1;
        inB[b] = maskB >> b & 1;
    }
    wit.A = blocks_set(g, inA);
    wit.B = blocks_set(g, inB);
    return wit;
}

DeviationWitness deviation_heuristic(const Graphon& g, const PartitionSpec& P, int restarts,
                                     std::uint64_t seed) {
    std::uint64_t n = g.block_count();
    if (n == 0) throw GridMismatch("graphon has no block structure");
    if (restarts < 1) throw OutOfRange("need at least one restart");
    auto W = partition_weights(g, P);
    auto pd = pair_densities(g, W);
    const std::size_t k = W.size();

    std::vector<double> mu(n);
    for (std::uint64_t b = 0; b < n; ++b) mu[b] = to_double(g.block_measure(b));
    std::vector<std::vector<double>> wd(k, std::vector<double>(n));
    for (std::size_t t = 0; t < k; ++t)
        for (std::uint64_t b = 0; b < n; ++b) wd[t][b] = to_double(W[t][b]);
    std::vector<std::vector<double>> coef(k, std::vector<double>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            coef[i][j] = pd.dd[i][j] / (to_double(pd.mu[i]) * to_double(pd.mu[j]));

    const auto* cf = dynamic_cast<const CFGraphon*>(&g);
    std::vector<double> kernel_hat;
    if (cf) {
        kernel_hat.assign(n, 0.0);
        for (std::uint64_t b = 0; b < n; ++b)
            kernel_hat[b] = cf->value_at_distance(int(big_popcount(BigInt(b))));
        wht_double(kernel_hat);
    }

    // col(b') = sum_{b in S} cell(b,b') mu_b mu_b' - structured part
    auto marginals = [&](const std::vector<char>& S, std::vector<double>& out) {
        if (cf) {
            std::vector<double> a(n, 0.0);
            for (std::uint64_t b = 0; b < n; ++b)
                if (S[b]) a[b] = mu[b];
            wht_double(a);
            for (std::uint64_t b = 0; b < n; ++b) a[b] *= kernel_hat[b];
            wht_double(a);
            for (std::uint64_t b = 0; b < n; ++b) out[b] = a[b] / double(n) * mu[b];
        } else {
            for (std::uint64_t b2 = 0; b2 < n; ++b2) {
                double s = 0;
                for (std::uint64_t b = 0; b < n; ++b)
                    if (S[b]) s += g.cell_value(b, b2) * mu[b];
                out[b2] = s * mu[b2];
            }
        }
        std::vector<double> inter(k, 0.0);
        for (std::size_t t = 0; t < k; ++t)
            for (std::uint64_t b = 0; b < n; ++b)
                if (S[b]) inter[t] += wd[t][b];
        for (std::uint64_t b2 = 0; b2 < n; ++b2) {
            double s = 0;
            for (std::size_t j = 0; j < k; ++j) {
                double cj = 0;
                for (std::size_t i = 0; i < k; ++i) cj += coef[i][j] * inter[i];
                s += cj * wd[j][b2];
            }
            out[b2] -= s;
        }
    };

    double bestVal = -1.0;
    std::vector<char> bestA(n, 0), bestB(n, 0);
    std::vector<char> A(n), B(n);
    std::vector<double> colv(n), rowv(n);
    for (int r = 0; r < restarts; ++r) {
        auto gen = substream(seed, "deviation-heur", std::uint64_t(r));
        double sgn = (r % 2 == 0) ? 1.0 : -1.0;
        for (std::uint64_t b = 0; b < n; ++b) A[b] = gen() & 1;
        for (int iter = 0; iter < 60; ++iter) {
            marginals(A, colv);
            bool changed = false;
            for (std::uint64_t b = 0; b < n; ++b) {
                char nb = sgn * colv[b] > 0 ? 1 : 0;
                if (nb != B[b] || iter == 0) changed = changed || nb != B[b];
                B[b] = nb;
            }
            marginals(B, rowv);  // symmetric kernel: row marginals of A given B
            for (std::uint64_t b = 0; b < n; ++b) {
                char na = sgn * rowv[b] > 0 ? 1 : 0;
                if (na != A[b]) changed = true;
                A[b] = na;
            }
            if (!changed && iter > 0) break;
        }
        marginals(A, colv);
        double val = 0;
        for (std::uint64_t b = 0; b < n; ++b)
            if (B[b]) val += colv[b];
        val = std::abs(val);
        if (val > bestVal) {
            bestVal = val;
            bestA = A;
            bestB = B;
        }
    }

    DeviationWitness wit;
    wit.A = blocks_set(g, bestA);
    wit.B = blocks_set(g, bestB);
    // certify
    auto wA = weights_on_graphon(g, wit.A);
    auto wB = weights_on_graphon(g, wit.B);
    auto dAB = density_blocks(g, wA, wB);
    if (pd.exact && dAB.is_exact) {
        Rational structured = 0;
        for (std::size_t i = 0; i < k; ++i) {
            Rational ai = 0;
            for (std::uint64_t b = 0; b < n; ++b)
                if (bestA[b]) ai += W[i][b];
            if (ai == 0) continue;
            for (std::size_t j = 0; j < k; ++j) {
                Rational bj = 0;
                for (std::uint64_t b = 0; b < n; ++b)
                    if (bestB[b]) bj += W[j][b];
                structured += pd.d[i][j] / (pd.mu[i] * pd.mu[j]) * ai * bj;
            }
        }
        wit.is_exact = true;
        wit.exact = boost::multiprecision::abs(dAB.exact - structured);
        wit.deviation = to_double(wit.exact);
    } else {
        double structured = 0;
        std::vector<double> inter(k, 0.0), interB(k, 0.0);
        for (std::size_t t = 0; t < k; ++t)
            for (std::uint64_t b = 0; b < n; ++b) {
                if (bestA[b]) inter[t] += wd[t][b];
                if (bestB[b]) interB[t] += wd[t][b];
            }
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) structured += coef[i][j] * inter[i] * interB[j];
        wit.deviation = std::abs(dAB.approx - structured);
    }
    return wit;
}

std::pair<PartitionSpec, EnergyTrace> fk_partition(const Graphon& g, double epsilon,
                                                   int deviation_budget, std::uint64_t seed) {
    if (epsilon <= 0) throw OutOfRange("epsilon must be positive");
    std::uint64_t n = g.block_count();
    if (n == 0) throw GridMismatch("refinement needs a block-structured graphon");

    // parts as crisp block membership vectors
    std::vector<std::vector<char>> parts{std::vector<char>(n, 1)};
    auto to_spec = [&]() {
        PartitionSpec P;
        P.grid = uniform_blocks(g) ? n : 0;
        for (const auto& in : parts) P.parts.push_back(blocks_set(g, in));
        return P;
    };

    EnergyTrace trace;
    PartitionSpec P = to_spec();
    auto e0 = energy(g, P);
    trace.push_back({0, parts.size(), e0.value});
    Rational lastEnergy = e0.exact;
    double lastEnergyD = e0.value;
    bool exactPath = e0.is_exact;
    Rational eps2 = Rational(epsilon) * Rational(epsilon);

    const int maxSteps = int(std::ceil(1.0 / (epsilon * epsilon))) + 1;
    for (int step = 1;; ++step) {
        DeviationWitness wit = (n <= 22) ? deviation_exact(g, P)
                                         : deviation_heuristic(g, P, deviation_budget, seed + step);
        bool above = wit.is_exact ? wit.exact > Rational(epsilon) : wit.deviation > epsilon;
        if (!above) break;
        if (step > maxSteps)
            throw BudgetExceeded("refinement exceeded the energy-argument step bound");

        auto wA = weights_on_graphon(g, wit.A);
        auto wB = weights_on_graphon(g, wit.B);
        std::vector<std::vector<char>> next;
        for (const auto& in : parts) {
            std::vector<char> cells[4];
            for (auto& c : cells) c.assign(n, 0);
            for (std::uint64_t b = 0; b < n; ++b) {
                if (!in[b]) continue;
                int idx = (wA[b] != 0 ? 1 : 0) | (wB[b] != 0 ? 2 : 0);
                cells[idx][b] = 1;
            }
            for (auto& c : cells)
                if (std::find(c.begin(), c.end(), 1) != c.end()) next.push_back(std::move(c));
        }
        parts = std::move(next);
        P = to_spec();

        auto e = energy(g, P);
        if (exactPath && e.is_exact) {
            if (e.exact - lastEnergy < eps2)
                throw Error("internal consistency: energy increment below epsilon^2");
            lastEnergy = e.exact;
        } else {
            exactPath = false;
            if (e.value - lastEnergyD < epsilon * epsilon - 1e-9)
                throw Error("internal consistency: energy increment below epsilon^2");
        }
        lastEnergyD = e.value;
        trace.push_back({step, parts.size(), e.value});
    }
    return {P, trace};
}

WitnessReport refute_cf(int m, const PartitionSpec& P) {
    if (m < 1 || m > 20) throw MTooLarge("refuter supports 1 <= m <= 20");
    CFGraphon g(m);
    const std::uint64_t n = g.block_count();
    auto W = partition_weights(g, P);
    const std::size_t k = W.size();
    // k < 2^(m/4)  <=>  k^4 < 2^m
    if (BigInt(k) * k * k * k >= (BigInt(1) << m))
        throw PreconditionViolated("theorem needs fewer than 2^(m/4) parts");

    WitnessReport rep;
    rep.m = m;
    rep.warn_small_m = m < 25;
    rep.is_exact = g.perfect_square();

    std::vector<Rational> muT(k);
    for (std::size_t t = 0; t < k; ++t) muT[t] = total(W[t]);

    // |U_t ∩ V_i^-| and |U_t ∩ V_i^+| (bit i-1 equal to 0 resp. 1)
    std::vector<std::vector<Rational>> vminus(k, std::vector<Rational>(m, Rational(0)));
    std::vector<std::vector<Rational>> vplus = vminus;
    for (std::size_t t = 0; t < k; ++t)
        for (std::uint64_t b = 0; b < n; ++b) {
            if (W[t][b] == 0) continue;
            for (int i = 0; i < m; ++i)
                ((b >> i & 1) ? vplus : vminus)[t][i] += W[t][b];
        }

    rep.S.resize(k);
    rep.small_flags.resize(k);
    rep.M.assign(k, 0);
    std::vector<std::vector<bool>> useful(k, std::vector<bool>(m, false));
    Rational mWeighted = 0;
    for (std::size_t t = 0; t < k; ++t) {
        Rational s = 0;
        for (int i = 0; i < m; ++i) s += vminus[t][i] * vplus[t][i];
        rep.S[t] = s;
        rep.small_flags[t] = muT[t] * muT[t] * muT[t] <= Rational(1, BigInt(1) << m);
        for (int i = 0; i < m; ++i) {
            if (std::min(vminus[t][i], vplus[t][i]) >= muT[t] / 64) {
                useful[t][i] = true;
                ++rep.M[t];
            }
        }
        mWeighted += Rational(rep.M[t]) * muT[t];
    }
    rep.eq2_holds = mWeighted >= Rational(m, 32);

    // i0: maximize the total measure of parts useful at i, smallest index wins
    int i0 = 0;
    Rational bestMeasure = -1;
    for (int i = 0; i < m; ++i) {
        Rational meas = 0;
        for (std::size_t t = 0; t < k; ++t)
            if (useful[t][i]) meas += muT[t];
        if (meas > bestMeasure) {
            bestMeasure = meas;
            i0 = i;
        }
    }
    rep.i0 = i0 + 1;
    rep.useful_measure = bestMeasure;

    // A^- / A^+: |U_t|/64 from each useful part, taken from the V_{i0}^-/+
    // side, lowest block index first
    rep.a_minus.assign(k, {});
    rep.a_plus.assign(k, {});
    std::vector<Rational> aMinusW(n, Rational(0)), aPlusW(n, Rational(0));
    for (std::size_t t = 0; t < k; ++t) {
        if (!useful[t][i0]) continue;
        for (int side = 0; side < 2; ++side) {
            Rational need = muT[t] / 64;
            auto& dst = side == 0 ? rep.a_minus[t] : rep.a_plus[t];
            auto& agg = side == 0 ? aMinusW : aPlusW;
            for (std::uint64_t b = 0; b < n && need > 0; ++b) {
                if ((b >> i0 & 1) != std::uint64_t(side)) continue;
                if (W[t][b] == 0) continue;
                Rational take = std::min(W[t][b], need);
                dst[b] = take;
                agg[b] += take;
                need -= take;
            }
        }
    }
    std::vector<Rational> bW(n, Rational(0));
    for (std::uint64_t b = 0; b < n; ++b)
        if (!(b >> i0 & 1)) bW[b] = g.block_measure(b);

    rep.Aminus = SetSpec::block_weights(n, aMinusW);
    rep.Aplus = SetSpec::block_weights(n, aPlusW);
    rep.B = SetSpec::block_weights(n, bW);

    auto dMinus = cf_density_blocks(g, aMinusW, bW);
    auto dPlus = cf_density_blocks(g, aPlusW, bW);
    if (rep.is_exact && dMinus.is_exact && dPlus.is_exact) {
        rep.discrepancy = boost::multiprecision::abs(dMinus.exact - dPlus.exact);
        rep.discrepancy_d = to_double(rep.discrepancy);
    } else {
        rep.is_exact = false;
        rep.discrepancy_d = std::abs(dMinus.approx - dPlus.approx);
    }
    return rep;
}

RefuteVerdict refute_verify(const WitnessReport& rep, int m, const PartitionSpec& P) {
    RefuteVerdict v;
    CFGraphon g(m);
    const std::uint64_t n = g.block_count();
    auto W = partition_weights(g, P);
    const std::size_t k = W.size();
    const int i0 = rep.i0 - 1;

    // structural checks
    v.structure_ok = true;
    if (rep.m != m || i0 < 0 || i0 >= m || rep.a_minus.size() != k || rep.a_plus.size() != k) {
        v.structure_ok = false;
        v.message = "report shape does not match (m, P)";
    } else if (!rep.B.is_blocks() || rep.B.grid() != n) {
        v.structure_ok = false;
        v.message = "B is not on the graphon grid";
    } else {
        for (std::uint64_t b = 0; b < n; ++b) {
            Rational expect = (b >> i0 & 1) ? Rational(0) : g.block_measure(b);
            if (rep.B.weights()[b] != expect) {
                v.structure_ok = false;
                v.message = "B differs from V_{i0}^-";
                break;
            }
        }
    }

    // intersection masses: equal per part, correctly sided, inside the part
    v.intersections_ok = v.structure_ok;
    Rational aTotal = 0;
    if (v.intersections_ok) {
        for (std::size_t t = 0; t < k && v.intersections_ok; ++t) {
            Rational sm = 0, sp = 0;
            for (const auto& [b, w] : rep.a_minus[t]) {
                if (b >= n || w < 0 || w > W[t][b] || (b >> i0 & 1)) {
                    v.intersections_ok = false;
                    v.message = "A^- mass misplaced";
                }
                sm += w;
            }
            for (const auto& [b, w] : rep.a_plus[t]) {
                if (b >= n || w < 0 || w > W[t][b] || !(b >> i0 & 1)) {
                    v.intersections_ok = false;
                    v.message = "A^+ mass misplaced";
                }
                sp += w;
            }
            if (sm != sp) {
                v.intersections_ok = false;
                v.message = "unequal |A^- ∩ U_t| and |A^+ ∩ U_t|";
            }
            aTotal += sm;
        }
        // aggregated sets must match the per-part decomposition
        if (v.intersections_ok) {
            std::vector<Rational> am(n, Rational(0)), ap(n, Rational(0));
            for (std::size_t t = 0; t < k; ++t) {
                for (const auto& [b, w] : rep.a_minus[t]) am[b] += w;
                for (const auto& [b, w] : rep.a_plus[t]) ap[b] += w;
            }
            if (!rep.Aminus.is_blocks() || !rep.Aplus.is_blocks() || rep.Aminus.weights() != am ||
                rep.Aplus.weights() != ap) {
                v.intersections_ok = false;
                v.message = "aggregated A sets do not match the per-part masses";
            }
        }
    }

    // discrepancy via the binomial row-sum closed form: for B = V_{i0}^-,
    // every block with bit 0 sees rho^- and every block with bit 1 sees
    // rho^+, so d(A^±, B) = |A^±| * rho^∓ of the respective side.
    if (g.perfect_square()) {
        long s4 = 4L * g.sqrt_m();
        Rational rhoM = 0, rhoP = 0;
        for (int h = 0; h <= m - 1; ++h) {
            Rational c(binomial(m - 1, h), BigInt(1) << m);
            rhoM += c * Rational(g.cell_numerator(h), s4);
            rhoP += c * Rational(g.cell_numerator(h + 1), s4);
        }
        v.recomputed_discrepancy = boost::multiprecision::abs(aTotal * rhoM - aTotal * rhoP);
        v.recomputed_discrepancy_d = to_double(v.recomputed_discrepancy);
        v.discrepancy_ok = rep.is_exact && v.recomputed_discrepancy == rep.discrepancy;
    } else {
        double rhoM = 0, rhoP = 0;
        for (int h = 0; h <= m - 1; ++h) {
            double c = to_double(Rational(binomial(m - 1, h), BigInt(1) << m));
            rhoM += c * g.value_at_distance(h);
            rhoP += c * g.value_at_distance(h + 1);
        }
        v.recomputed_discrepancy_d = std::abs(to_double(aTotal) * (rhoM - rhoP));
        v.discrepancy_ok = std::abs(v.recomputed_discrepancy_d - rep.discrepancy_d) < 1e-9;
    }
    v.ok = v.structure_ok && v.intersections_ok && v.discrepancy_ok;
    if (v.ok) v.message = "verified";
    return v;
}

}  // namespace graphonlab
