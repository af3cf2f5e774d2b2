#include "graphonlab/sampling.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "graphonlab/cf.hpp"
#include "graphonlab/errors.hpp"
#include "graphonlab/rng.hpp"

namespace graphonlab {

namespace {

constexpr std::uint64_t kChunk = 8192;

DensityEstimate finish(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed) {
    DensityEstimate e;
    e.samples = samples;
    e.seed = seed;
    e.value = double(hits) / double(samples);
    e.stderr_ = std::sqrt(e.value * (1.0 - e.value) / double(samples));
    return e;
}

// One sampled edge mask of order k, consuming k vertex variates then
// k(k-1)/2 pair variates from gen.
std::uint64_t sample_mask(const Graphon& g, int k, std::mt19937_64& gen, std::vector<double>& xs) {
    xs.resize(k);
    for (int i = 0; i < k; ++i) xs[i] = uniform01(gen);
    std::uint64_t mask = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (uniform01(gen) < g.value_sample(xs[i], xs[j]))
                mask |= std::uint64_t(1) << pair_slot(i, j, k);
    return mask;
}

// Lazy canonical-code memo for small orders; falls back to direct
// canonicalization when the mask space is large.
class CanonMemo {
public:
    explicit CanonMemo(int k) : k_(k), bits_(k * (k - 1) / 2) {
        if (bits_ <= 20) table_.assign(std::size_t(1) << bits_, kUnset);
    }
    std::uint64_t code(std::uint64_t mask) {
        if (table_.empty()) return canonical_code_mask(k_, mask);
        auto& slot = table_[mask];
        if (slot == kUnset) slot = canonical_code_mask(k_, mask);
        return slot;
    }

private:
    static constexpr std::uint64_t kUnset = ~std::uint64_t(0);
    int k_;
    int bits_;
    std::vector<std::uint64_t> table_;
};

}  // namespace

std::string render_estimate(const DensityEstimate& e) {
    std::ostringstream out;
    out.precision(15);
    out << "value=" << e.value << " stderr=" << e.stderr_ << " samples=" << e.samples
        << " seed=" << e.seed;
    return out.str();
}

SimpleGraph w_random_graph(const Graphon& g, int k, std::uint64_t seed) {
    if (k < 1) throw OutOfRange("order must be positive");
    if (k > 10) throw OutOfRange("graphs above 10 vertices are unsupported");
    auto gen = substream(seed, "w-random");
    std::vector<double> xs;
    return graph_from_mask(k, sample_mask(g, k, gen, xs));
}

DensityEstimate induced_density_mc(const SimpleGraph& H, const Graphon& g, std::uint64_t samples,
                                   std::uint64_t seed) {
    if (H.n < 1 || H.n > 10) throw OutOfRange("|H| must be between 1 and 10");
    if (samples == 0) throw OutOfRange("need a positive sample budget");
    const std::uint64_t target = canonical_code(H);
    CanonMemo memo(H.n);
    std::uint64_t hits = 0;
    std::vector<double> xs;
    std::uint64_t done = 0;
    for (std::uint64_t chunk = 0; done < samples; ++chunk) {
        auto gen = substream(seed, "induced-mc", chunk);
        std::uint64_t todo = std::min(kChunk, samples - done);
        for (std::uint64_t i = 0; i < todo; ++i)
            if (memo.code(sample_mask(g, H.n, gen, xs)) == target) ++hits;
        done += todo;
    }
    return finish(hits, samples, seed);
}

Rational induced_density_exact(const SimpleGraph& H, const Graphon& g, double budget) {
    if (H.n < 1 || H.n > 10) throw OutOfRange("|H| must be between 1 and 10");
    if (!g.exact() || g.block_count() == 0)
        throw PreconditionViolated("exact densities need an exact block-structured graphon");
    const std::uint64_t B = g.block_count();
    if (std::pow(double(B), double(H.n)) > budget)
        throw BudgetExceeded("block assignments exceed the exact-evaluation budget");

    const int n = H.n;
    const int pairs = n * (n - 1) / 2;
    auto copies = labeled_copies(H);

    std::vector<std::uint64_t> assign(n, 0);
    std::vector<Rational> cellbuf(pairs);
    Rational total = 0;
    while (true) {
        Rational weight = 1;
        for (int v = 0; v < n; ++v) weight *= g.block_measure(assign[v]);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) cellbuf[pair_slot(i, j, n)] = g.cell(assign[i], assign[j]);
        Rational prob = 0;
        for (std::uint64_t mask : copies) {
            Rational p = 1;
            for (int s = 0; s < pairs && p != 0; ++s)
                p *= (mask >> s & 1) ? cellbuf[s] : 1 - cellbuf[s];
            prob += p;
        }
        total += weight * prob;
        // next assignment in mixed radix
        int v = 0;
        while (v < n && ++assign[v] == B) assign[v++] = 0;
        if (v == n) break;
    }
    return total;
}

ProfileVerdict density_profile_sum_check(int k, const Graphon& g, std::uint64_t samples,
                                         std::uint64_t seed) {
    if (k != 3 && k != 4) throw OutOfRange("profile check supports k = 3 or 4");
    if (samples == 0) throw OutOfRange("need a positive sample budget");
    auto classes = isomorphism_classes(k);
    std::map<std::uint64_t, std::size_t> index;
    for (std::size_t c = 0; c < classes.size(); ++c) index[canonical_code(classes[c])] = c;

    std::vector<std::uint64_t> counts(classes.size(), 0);
    CanonMemo memo(k);
    std::vector<double> xs;
    std::uint64_t done = 0;
    for (std::uint64_t chunk = 0; done < samples; ++chunk) {
        auto gen = substream(seed, "profile", chunk);
        std::uint64_t todo = std::min(kChunk, samples - done);
        for (std::uint64_t i = 0; i < todo; ++i) ++counts[index.at(memo.code(sample_mask(g, k, gen, xs)))];
        done += todo;
    }

    ProfileVerdict v;
    std::uint64_t counted = 0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        counted += counts[c];
        v.rows.push_back({classes[c], finish(counts[c], samples, seed)});
    }
    v.sums_to_one = counted == samples;
    v.sum = double(counted) / double(samples);
    return v;
}

std::vector<ProbeRow> cf_convergence_probe(const SimpleGraph& H, const std::vector<int>& ms,
                                           std::uint64_t samples, std::uint64_t seed) {
    if (H.n < 1 || H.n > 10) throw OutOfRange("|H| must be between 1 and 10");
    if (samples == 0) throw OutOfRange("need a positive sample budget");
    std::vector<GraphonPtr> gs;
    for (int m : ms) gs.push_back(make_cf(m));  // validates 1 <= m <= 62
    gs.push_back(make_constant(Rational(1, 2)));

    const std::uint64_t target = canonical_code(H);
    CanonMemo memo(H.n);
    const int n = H.n;
    const int pairs = n * (n - 1) / 2;
    std::vector<std::uint64_t> hits(gs.size(), 0);
    std::vector<double> xs(n), us(pairs);
    std::uint64_t done = 0;
    for (std::uint64_t chunk = 0; done < samples; ++chunk) {
        auto gen = substream(seed, "cf-probe", chunk);
        std::uint64_t todo = std::min(kChunk, samples - done);
        for (std::uint64_t s = 0; s < todo; ++s) {
            // Common random numbers: one point/pair draw shared by every m.
            for (int i = 0; i < n; ++i) xs[i] = uniform01(gen);
            for (int p = 0; p < pairs; ++p) us[p] = uniform01(gen);
            for (std::size_t gi = 0; gi < gs.size(); ++gi) {
                std::uint64_t mask = 0;
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j) {
                        int slot = pair_slot(i, j, n);
                        if (us[slot] < gs[gi]->value_sample(xs[i], xs[j]))
                            mask |= std::uint64_t(1) << slot;
                    }
                if (memo.code(mask) == target) ++hits[gi];
            }
        }
        done += todo;
    }

    std::vector<ProbeRow> rows;
    for (std::size_t gi = 0; gi < ms.size(); ++gi) rows.push_back({ms[gi], finish(hits[gi], samples, seed)});
    rows.push_back({0, finish(hits.back(), samples, seed)});
    return rows;
}

}  // namespace graphonlab
