#include "graphonlab/cf.hpp"

#include <cmath>

#include "graphonlab/coords.hpp"
#include "graphonlab/errors.hpp"

namespace graphonlab {

CFGraphon::CFGraphon(int m) : m_(m) {
    if (m < 1 || m > 62) throw MTooLarge("conlon-fox graphon needs 1 <= m <= 62");
    int r = static_cast<int>(std::lround(std::sqrt(double(m))));
    square_ = r * r == m;
    sqrt_m_ = r;
    inv_4sqrt_ = 1.0 / (4.0 * std::sqrt(double(m)));
}

std::uint64_t CFGraphon::block_of(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) throw OutOfDomain("cf graphon: point outside [0,1]");
    if (x == 1.0) return block_count() - 1;
    return dyadic_floor_scale(x, m_).convert_to<std::uint64_t>();
}

double CFGraphon::value_at_distance(int h) const {
    return trunc01(0.5 + (m_ - 2.0 * h) * inv_4sqrt_);
}

long CFGraphon::cell_numerator(int h) const {
    long num = 2L * sqrt_m_ + m_ - 2L * h;  // over denominator 4 sqrt(m)
    if (num < 0) num = 0;
    long cap = 4L * sqrt_m_;
    if (num > cap) num = cap;
    return num;
}

double CFGraphon::value(double x, double y) const {
    std::uint64_t a = block_of(x), b = block_of(y);
    int h = __builtin_popcountll(a ^ b);
    return value_at_distance(h);
}

double CFGraphon::cell_value(std::uint64_t i, std::uint64_t j) const {
    return value_at_distance(__builtin_popcountll(i ^ j));
}

Rational CFGraphon::cell(std::uint64_t i, std::uint64_t j) const {
    if (!square_) throw Error("cf cells are irrational unless m is a perfect square");
    int h = __builtin_popcountll(i ^ j);
    return Rational(cell_numerator(h), 4L * sqrt_m_);
}

double CFGraphon::degree(double, double) const {
    // Row average is exactly 1/2: pairing each block with its complement uses
    // trunc(1/2+a) + trunc(1/2-a) = 1.
    return 0.5;
}

GraphonPtr make_cf(int m) { return std::make_shared<CFGraphon>(m); }

namespace {

template <class T>
void wht(std::vector<T>& a) {
    std::size_t n = a.size();
    for (std::size_t len = 1; len < n; len <<= 1) {
        for (std::size_t i = 0; i < n; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                T u = a[j], v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
        }
    }
}

}  // namespace

DensityResult cf_density_blocks(const CFGraphon& g, const std::vector<Rational>& wA,
                                const std::vector<Rational>& wB) {
    int m = g.m();
    if (m > 20) throw MTooLarge("block-weight cf density supported for m <= 20");
    std::uint64_t n = std::uint64_t(1) << m;
    if (wA.size() != n || wB.size() != n) throw GridMismatch("weight vectors must live on the 2^m grid");

    BigInt DA = 1, DB = 1;
    for (const auto& w : wA) DA = lcm(DA, denominator(w));
    for (const auto& w : wB) DB = lcm(DB, denominator(w));

    if (!g.perfect_square()) {
        std::vector<double> a(n), b(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            a[i] = to_double(wA[i]);
            b[i] = to_double(wB[i]);
        }
        wht(a);
        wht(b);
        for (std::uint64_t i = 0; i < n; ++i) a[i] *= b[i];
        wht(a);
        double total = 0.0;
        for (std::uint64_t t = 0; t < n; ++t)
            total += a[t] * g.value_at_distance(__builtin_popcountll(t));
        DensityResult r;
        r.approx = total / double(n);
        return r;
    }

    // Exact path.  All intermediates are bounded by n * DA * DB, so an
    // __int128 transform is safe whenever that product stays below 2^120.
    long cap = 4L * g.sqrt_m();
    BigInt bound = BigInt(n) * DA * DB * cap;
    BigInt total;
    if (msb(bound) < 120) {
        std::vector<__int128> a(n), b(n);
        auto da = DA.convert_to<std::int64_t>(), db = DB.convert_to<std::int64_t>();
        for (std::uint64_t i = 0; i < n; ++i) {
            a[i] = static_cast<__int128>(numerator(wA[i]).convert_to<std::int64_t>()) *
                   (da / denominator(wA[i]).convert_to<std::int64_t>());
            b[i] = static_cast<__int128>(numerator(wB[i]).convert_to<std::int64_t>()) *
                   (db / denominator(wB[i]).convert_to<std::int64_t>());
        }
        wht(a);
        wht(b);
        for (std::uint64_t i = 0; i < n; ++i) a[i] *= b[i];
        wht(a);
        std::vector<__int128> by_h(std::size_t(m) + 1, 0);
        for (std::uint64_t t = 0; t < n; ++t) by_h[std::size_t(__builtin_popcountll(t))] += a[t];
        total = 0;
        auto to_big = [](__int128 v) {
            bool neg = v < 0;
            auto uv = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
            BigInt big = (BigInt(static_cast<std::uint64_t>(uv >> 64)) << 64) + static_cast<std::uint64_t>(uv);
            return neg ? -big : big;
        };
        for (int h = 0; h <= m; ++h) total += to_big(by_h[std::size_t(h)]) * g.cell_numerator(h);
    } else {
        std::vector<BigInt> a(n), b(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            a[i] = numerator(wA[i]) * (DA / denominator(wA[i]));
            b[i] = numerator(wB[i]) * (DB / denominator(wB[i]));
        }
        wht(a);
        wht(b);
        for (std::uint64_t i = 0; i < n; ++i) a[i] *= b[i];
        wht(a);
        total = 0;
        for (std::uint64_t t = 0; t < n; ++t)
            total += a[t] * g.cell_numerator(__builtin_popcountll(t));
    }

    Rational d(total, BigInt(n) * DA * DB * cap);
    DensityResult r;
    r.is_exact = true;
    r.approx = to_double(d);
    r.exact = std::move(d);
    return r;
}

DensityResult cf_unit_density(const CFGraphon& g) {
    int m = g.m();
    DensityResult r;
    if (g.perfect_square()) {
        BigInt num = 0;
        for (int d = 0; d <= m; ++d) num += binomial(m, d) * g.cell_numerator(d);
        Rational v(num, (BigInt(1) << m) * (4L * g.sqrt_m()));
        r.is_exact = true;
        r.approx = to_double(v);
        r.exact = std::move(v);
        return r;
    }
    double total = 0.0;
    for (int d = 0; d <= m; ++d)
        total += to_double(Rational(binomial(m, d), BigInt(1) << m)) * g.value_at_distance(d);
    r.approx = total;
    return r;
}

Rational interior_measure_cf(int m) {
    if (m < 1 || m > 62) throw MTooLarge("interior_measure_cf needs 1 <= m <= 62");
    // Cell is interior iff 0 < 1/2 + (m-2d)/(4 sqrt m) < 1, i.e. (m-2d)^2 < 4m.
    BigInt good = 0;
    for (int d = 0; d <= m; ++d) {
        long inner = m - 2L * d;
        if (inner * inner < 4L * m) good += binomial(m, d);
    }
    return Rational(good, BigInt(1) << m);
}

}  // namespace graphonlab
