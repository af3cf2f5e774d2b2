#include "graphonlab/svejk.hpp"

#include <boost/math/distributions/binomial.hpp>

#include <cmath>
#include <optional>

#include "graphonlab/errors.hpp"

namespace graphonlab {

namespace {

// kTowerExp[k] = t(k-1), the base-2 exponent of t(k), for k = 1..5.
constexpr long kTowerExpAt[6] = {0, 1, 2, 4, 16, 65536};

double pow2d(long e) {
    if (e < -1100) return 0.0;
    if (e > 1023) throw OutOfRange("pow2d: exponent too large");
    return std::ldexp(1.0, static_cast<int>(e));
}

// 1/t(k) as a double; underflows to 0 from k = 5 on.
double inv_tower(int k) {
    if (k < 0) throw OutOfDomain("inv_tower: negative level");
    if (k >= 5) return 0.0;
    return pow2d(-kTowerExpAt[k]);
}

// 2^-t(k); 0 from k = 5 on.
double pow2_neg_tower(int k) {
    if (k >= 5) return 0.0;
    return pow2d(-(1L << kTowerExpAt[k]));
}

// t(k) >= v for a machine-sized v.
bool tower_ge(int k, long v) {
    if (k >= 5) return true;
    return (1L << kTowerExpAt[k]) >= v;
}

// t(k) == v for a machine-sized v >= 1 (segment indices never reach t(5)).
bool tower_equals(int k, long v) {
    if (k >= 5) return false;
    return (1L << kTowerExpAt[k]) == v;
}

// pos <= 2^e / t(k), decided exactly.
bool pos_le_pow2_over_tower(double pos, long e, int k) {
    if (pos == 0.0) return true;
    if (k >= 6) return false;
    long texp = (k == 0) ? 0 : kTowerExpAt[k];
    long s = e - texp;
    if (s >= 0) return true;  // pos < 1 <= 2^s
    return pos <= pow2d(s);   // both sides exact doubles (or 0 for deep s)
}

struct Pt {
    int seg;
    double pos;
};

Pt seg_pos(double loc) {
    Pt p;
    p.seg = segment_of(loc);
    p.pos = segment_pos(loc, p.seg);
    return p;
}

struct Idx {
    long M;  // t(seg - 1), the subsegment count exponent's base: t(seg) = 2^M
    BigInt sub, part, comb;
};

Idx indices(const Pt& p, int cap) {
    if (p.seg > cap || p.seg > 5)
        throw LevelTooLarge("segment " + std::to_string(p.seg) + " exceeds the tower cap");
    Idx ix;
    ix.M = kTowerExpAt[p.seg];
    ix.comb = dyadic_floor_scale(p.pos, 2 * ix.M);
    ix.sub = ix.comb >> static_cast<unsigned>(ix.M);
    ix.part = ix.comb - (ix.sub << static_cast<unsigned>(ix.M));
    return ix;
}

long inner_product(const Idx& ix) {
    return ix.M - 2 * static_cast<long>(big_popcount(ix.sub ^ ix.part));
}

// W_CF^M evaluated on positions within a segment (M a power of two up to 2^16).
double cf_value_at(long M, double px, double py) {
    BigInt a = dyadic_floor_scale(px, M);
    BigInt b = dyadic_floor_scale(py, M);
    long inner = M - 2 * static_cast<long>(big_popcount(a ^ b));
    return trunc01(0.5 + double(inner) / (4.0 * std::sqrt(double(M))));
}

// P[d >= ceil(thresh)] and P[d <= floor(thresh)] for d ~ Binom(M, 1/2).
double binom_ge(long M, double thresh) {
    long dmin = static_cast<long>(std::ceil(thresh));
    if (dmin <= 0) return 1.0;
    if (dmin > M) return 0.0;
    if (M <= 64) {
        BigInt s = 0;
        for (long d = dmin; d <= M; ++d) s += binomial(M, d);
        return to_double(Rational(s, BigInt(1) << M));
    }
    boost::math::binomial_distribution<double> dist(double(M), 0.5);
    return cdf(complement(dist, double(dmin - 1)));
}

double binom_le(long M, double thresh) {
    long dmax = static_cast<long>(std::floor(thresh));
    if (dmax < 0) return 0.0;
    if (dmax >= M) return 1.0;
    if (M <= 64) {
        BigInt s = 0;
        for (long d = 0; d <= dmax; ++d) s += binomial(M, d);
        return to_double(Rational(s, BigInt(1) << M));
    }
    boost::math::binomial_distribution<double> dist(double(M), 0.5);
    return cdf(dist, double(dmax));
}

using SP = SvejkPart;

bool among(SP p, std::initializer_list<SP> list) {
    for (SP q : list)
        if (p == q) return true;
    return false;
}

// Zero-one rows of the definition table plus the three closed forms, oriented
// with PX owning the row.  Returns nothing when no row matches in this
// orientation (the caller then swaps the arguments).
std::optional<double> row_value(SP PX, double lx, SP PY, double ly, int cap) {
    Pt X = seg_pos(lx), Y = seg_pos(ly);

    if (PX == SP::A && among(PY, {SP::A, SP::B, SP::C, SP::D, SP::E, SP::F, SP::G}))
        return X.seg == Y.seg ? 1.0 : 0.0;

    if (PX == SP::B && among(PY, {SP::B, SP::E, SP::F, SP::G})) {
        if (X.seg != Y.seg) return 0.0;
        return indices(X, cap).sub == indices(Y, cap).sub ? 1.0 : 0.0;
    }
    if (PX == SP::B && PY == SP::C) return tower_equals(X.seg - 1, Y.seg) ? 1.0 : 0.0;
    if (PX == SP::B && PY == SP::D) return X.seg == Y.seg ? inv_tower(X.seg) : 0.0;

    if (PX == SP::C && PY == SP::C) {
        if (X.seg != Y.seg) return 0.0;
        return X.seg - 1 >= 62 ? 0.0 : pow2d(-(1L << (X.seg - 1)));
    }

    if (PX == SP::D && PY == SP::C) return X.seg == Y.seg + 1 ? 1.0 : 0.0;
    if (PX == SP::D && PY == SP::D) return (X.seg == 1 && Y.seg == 1) ? 1.0 : 0.0;
    if (PX == SP::D && PY == SP::G) {
        if (X.seg != Y.seg) return 0.0;
        Idx ix = indices(X, cap);
        return Y.pos <= 0.5 + double(inner_product(ix)) / (4.0 * std::sqrt(double(ix.M))) ? 1.0 : 0.0;
    }

    if (PX == SP::E && PY == SP::C) return frac_bit(X.pos, Y.seg) == 1 ? 1.0 : 0.0;
    if (PX == SP::E && PY == SP::D) return ly <= 1.0 - X.pos ? 1.0 : 0.0;
    if (PX == SP::E && PY == SP::E) {
        if (X.seg != Y.seg) return 0.0;
        return cf_value_at(indices(X, cap).M, X.pos, Y.pos);
    }

    if (PX == SP::F && PY == SP::C) {
        return (tower_ge(X.seg - 1, Y.seg) && frac_bit(X.pos, Y.seg) == 1 &&
                pos_le_pow2_over_tower(Y.pos, Y.seg, X.seg))
                   ? 1.0
                   : 0.0;
    }
    if (PX == SP::F && PY == SP::E) {
        if (X.seg != Y.seg) return 0.0;
        Idx ix = indices(X, cap);
        return Y.pos <= 0.5 - double(inner_product(ix)) / (4.0 * double(ix.M)) ? 1.0 : 0.0;
    }
    if ((PX == SP::F && among(PY, {SP::D, SP::F})) || (PX == SP::G && PY == SP::G))
        return indices(X, cap).comb == indices(Y, cap).comb ? 1.0 : 0.0;
    if (PX == SP::F && PY == SP::G)
        return indices(X, cap).part == indices(Y, cap).sub ? 1.0 : 0.0;

    if (PX == SP::G && PY == SP::C)
        return (tower_ge(X.seg - 1, Y.seg) && pos_le_pow2_over_tower(Y.pos, Y.seg, X.seg)) ? 1.0 : 0.0;
    if (PX == SP::G && PY == SP::E) {
        if (X.seg != Y.seg) return 0.0;
        long M = indices(X, cap).M;
        return 1.0 - X.pos <= 0.5 + std::sqrt(double(M)) * (Y.pos - 0.5) ? 1.0 : 0.0;
    }

    if (PX == SP::P && among(PY, {SP::A, SP::B, SP::C, SP::D})) return lx <= ly ? 1.0 : 0.0;
    if (PX == SP::P && among(PY, {SP::E, SP::F, SP::G, SP::P})) return lx >= 1.0 - ly ? 1.0 : 0.0;

    return std::nullopt;
}

}  // namespace

char svejk_part_letter(SvejkPart p) {
    switch (p) {
        case SP::A: return 'A';
        case SP::B: return 'B';
        case SP::C: return 'C';
        case SP::D: return 'D';
        case SP::E: return 'E';
        case SP::F: return 'F';
        case SP::G: return 'G';
        case SP::P: return 'P';
        case SP::Q: return 'Q';
        case SP::R: return 'R';
    }
    return '?';
}

SvejkPart svejk_part_from_letter(char c) {
    switch (c) {
        case 'A': return SP::A;
        case 'B': return SP::B;
        case 'C': return SP::C;
        case 'D': return SP::D;
        case 'E': return SP::E;
        case 'F': return SP::F;
        case 'G': return SP::G;
        case 'P': return SP::P;
        case 'Q': return SP::Q;
        case 'R': return SP::R;
    }
    throw OutOfDomain(std::string("unknown part letter '") + c + "'");
}

double SvejkGraphon::part_offset(SvejkPart p) {
    switch (p) {
        case SP::A: return 0;
        case SP::B: return 1;
        case SP::C: return 2;
        case SP::D: return 3;
        case SP::E: return 4;
        case SP::F: return 5;
        case SP::G: return 6;
        case SP::P: return 7;
        case SP::Q: return 8;
        case SP::R: return 12;
    }
    return 0;
}

SvejkPart SvejkGraphon::part_of(double x13) {
    if (!(x13 >= 0.0 && x13 < 13.0)) throw OutOfDomain("W_13 coordinate outside [0,13)");
    int o = static_cast<int>(x13);
    if (o <= 6) return static_cast<SvejkPart>(o);
    if (o == 7) return SP::P;
    if (o <= 11) return SP::Q;
    return SP::R;
}

Rational SvejkGraphon::r_column(SvejkPart p) {
    switch (p) {
        case SP::B: return Rational(1, 8);
        case SP::C: return Rational(2, 8);
        case SP::D: return Rational(3, 8);
        case SP::E: return Rational(4, 8);
        case SP::F: return Rational(5, 8);
        case SP::G: return Rational(6, 8);
        case SP::P: return Rational(7, 8);
        default: return Rational(0);
    }
}

SvejkGraphon::SvejkGraphon(int tower_cap, int tail_k) : cap_(tower_cap), tailk_(tail_k) {
    if (cap_ < 1 || cap_ > 5) throw OutOfRange("tower cap must be between 1 and 5");
    if (tailk_ < 10) throw OutOfRange("tail cutoff too small to meet any useful tolerance");
    double J = 4.0;  // part P contributes exactly 4
    for (SP X : {SP::A, SP::B, SP::C, SP::D, SP::E, SP::F, SP::G}) J += mean_row_integral(X);
    q_degree_ = (12.0 - J / 4.0) / 13.0;
}

double SvejkGraphon::value13(double x13, double y13) const {
    SP px = part_of(x13), py = part_of(y13);
    if (px == SP::R || py == SP::R) {
        SP other = px == SP::R ? py : px;
        if (other == SP::R || other == SP::Q) return 0.0;
        return to_double(r_column(other));
    }
    if (px == SP::Q || py == SP::Q) {
        if (px == SP::Q && py == SP::Q) return 1.0;
        double o13 = px == SP::Q ? y13 : x13;
        return 0.25 * (4.0 - row_integral_AP(o13));
    }
    double lx = x13 - part_offset(px), ly = y13 - part_offset(py);
    auto v = row_value(px, lx, py, ly, cap_);
    if (!v) v = row_value(py, ly, px, lx, cap_);
    if (!v) throw Error("value13: uncovered part pair");
    return *v;
}

double SvejkGraphon::fold13(double x13) const {
    SP p = part_of(x13);
    if (p == SP::Q || p == SP::R) return x13;
    double loc = x13 - part_offset(p);
    int s = segment_of(loc);
    if (s <= cap_) return x13;
    double folded = (1.0 - pow2d(1 - cap_)) + segment_pos(loc, s) * pow2d(-cap_);
    return part_offset(p) + folded;
}

double SvejkGraphon::value_sample(double x, double y) const {
    double limit = std::nextafter(13.0, 0.0);
    double sx = std::min(x * 13.0, limit), sy = std::min(y * 13.0, limit);
    return value13(fold13(sx), fold13(sy));
}

double SvejkGraphon::value(double x, double y) const {
    double limit = std::nextafter(13.0, 0.0);
    double sx = std::min(x * 13.0, limit), sy = std::min(y * 13.0, limit);
    return value13(sx, sy);
}

double SvejkGraphon::part_row_integral(SvejkPart X, double xloc, SvejkPart Y, int jmax) const {
    Pt xp = seg_pos(xloc);
    int k = xp.seg;
    double p = xp.pos;
    double out = 0.0;
    auto add = [&](long j, double amt) {
        if (j <= jmax) out += amt;
    };
    // Measure of [0,c) within segment j of the unit interval.
    auto overlap_below = [&](double c, int j) {
        double lo = 1.0 - pow2d(1 - j), hi = 1.0 - pow2d(-j);
        double cc = std::min(std::max(c, lo), hi);
        return cc - lo;
    };
    auto S23 = [&](const BigInt& c23) {
        for (int j = 1; j <= 4; ++j)
            if ((BigInt(1) << (2 * kTowerExpAt[j])) > c23)
                add(j, pow2d(-j) * inv_tower(j) * inv_tower(j));
        // j >= 5 contributions underflow to zero.
    };
    auto SG2 = [&](const BigInt& s) {
        for (int j = 1; j <= 4; ++j)
            if ((BigInt(1) << kTowerExpAt[j]) > s) add(j, pow2d(-j) * inv_tower(j));
    };

    switch (X) {
        case SP::A: {
            if (among(Y, {SP::A, SP::B, SP::C, SP::D, SP::E, SP::F, SP::G})) add(k, pow2d(-k));
            if (Y == SP::P) add(1, xloc);
            return out;
        }
        case SP::B: {
            if (Y == SP::A) add(k, pow2d(-k));
            if (among(Y, {SP::B, SP::E, SP::F, SP::G})) add(k, pow2d(-k) * inv_tower(k));
            if (Y == SP::C && k <= 5) {
                long j = kTowerExpAt[k];  // t(k-1)
                add(j, pow2d(-j));
            }
            if (Y == SP::D) add(k, pow2d(-k) * inv_tower(k));
            if (Y == SP::P) add(1, xloc);
            return out;
        }
        case SP::C: {
            if (Y == SP::A) add(k, pow2d(-k));
            if (Y == SP::B)
                for (int j = 1; j <= 5; ++j)
                    if (tower_equals(j - 1, k)) add(j, pow2d(-j));
            if (Y == SP::C) add(k, pow2d(-k) * (k - 1 >= 62 ? 0.0 : pow2d(-(1L << (k - 1)))));
            if (Y == SP::D) add(k + 1, pow2d(-(k + 1)));
            if (Y == SP::E)
                for (int j = 1; j <= tailk_; ++j) add(j, pow2d(-j) * 0.5);
            if (Y == SP::F || Y == SP::G) {
                double factor = Y == SP::F ? 0.5 : 1.0;
                for (int j = 1; j <= tailk_; ++j)
                    if (tower_ge(j - 1, k) && pos_le_pow2_over_tower(p, k, j)) add(j, pow2d(-j) * factor);
            }
            if (Y == SP::P) add(1, xloc);
            return out;
        }
        case SP::D: {
            Idx ix = indices(xp, cap_);
            if (Y == SP::A) add(k, pow2d(-k));
            if (Y == SP::B) add(k, pow2d(-k) * inv_tower(k));
            if (Y == SP::C && k >= 2) add(k - 1, pow2d(-(k - 1)));
            if (Y == SP::D && k == 1) add(1, 0.5);
            if (Y == SP::E)
                for (int j = 1; j <= tailk_; ++j) add(j, pow2d(-j) * (1.0 - xloc));
            if (Y == SP::F) S23(ix.comb);
            if (Y == SP::G)
                add(k, pow2d(-k) * trunc01(0.5 + double(inner_product(ix)) / (4.0 * std::sqrt(double(ix.M)))));
            if (Y == SP::P) add(1, xloc);
            return out;
        }
        case SP::E: {
            if (k > cap_ || k > 5) throw LevelTooLarge("segment exceeds tower cap");
            long M = kTowerExpAt[k];
            if (Y == SP::A) add(k, pow2d(-k));
            if (Y == SP::B) add(k, pow2d(-k) * inv_tower(k));
            if (Y == SP::C) {
                int bend = frac_bits_end(p);
                for (int j = 1; j <= bend && j <= tailk_; ++j)
                    if (frac_bit(p, j)) add(j, pow2d(-j));
            }
            if (Y == SP::D)
                for (int j = 1; j <= tailk_; ++j) add(j, overlap_below(1.0 - p, j));
            if (Y == SP::E) add(k, pow2d(-k) * 0.5);
            if (Y == SP::F) add(k, pow2d(-k) * binom_ge(M, double(M) * (4.0 * p - 1.0) / 2.0));
            if (Y == SP::G) add(k, pow2d(-k) * trunc01(0.5 + std::sqrt(double(M)) * (p - 0.5)));
            if (Y == SP::P) add(1, xloc);
            return out;
        }
        case SP::F: {
            Idx ix = indices(xp, cap_);
            if (Y == SP::A) add(k, pow2d(-k));
            if (Y == SP::B) add(k, pow2d(-k) * inv_tower(k));
            if (Y == SP::C) {
                double unit = inv_tower(k);
                if (unit > 0.0) {
                    int bend = frac_bits_end(p);
                    for (long j = 1; j <= ix.M && j <= bend; ++j)
                        if (frac_bit(p, j)) add(j, unit);
                }
            }
            if (Y == SP::D) S23(ix.comb);
            if (Y == SP::E)
                add(k, pow2d(-k) * trunc01(0.5 - double(inner_product(ix)) / (4.0 * double(ix.M))));
            if (Y == SP::F) S23(ix.comb);
            if (Y == SP::G) SG2(ix.part);
            if (Y == SP::P) add(1, xloc);
            return out;
        }
        case SP::G: {
            Idx ix = indices(xp, cap_);
            if (Y == SP::A) add(k, pow2d(-k));
            if (Y == SP::B) add(k, pow2d(-k) * inv_tower(k));
            if (Y == SP::C) {
                double unit = inv_tower(k);
                if (unit > 0.0)
                    for (long j = 1; j <= ix.M; ++j) add(j, unit);
            }
            if (Y == SP::D)
                add(k, pow2d(-k) *
                           binom_le(ix.M, (double(ix.M) - 4.0 * std::sqrt(double(ix.M)) * (p - 0.5)) / 2.0));
            if (Y == SP::E) add(k, pow2d(-k) * trunc01(0.5 - (0.5 - p) / std::sqrt(double(ix.M))));
            if (Y == SP::F) SG2(ix.sub);
            if (Y == SP::G) S23(ix.comb);
            if (Y == SP::P) add(1, xloc);
            return out;
        }
        case SP::P: {
            if (among(Y, {SP::A, SP::B, SP::C, SP::D})) {
                // measure{z in Y : xloc <= z}, segment by segment
                for (int j = 1; j <= tailk_; ++j) add(j, pow2d(-j) - overlap_below(xloc, j));
            }
            if (among(Y, {SP::E, SP::F, SP::G})) {
                for (int j = 1; j <= tailk_; ++j) add(j, pow2d(-j) - overlap_below(1.0 - xloc, j));
            }
            if (Y == SP::P) add(1, xloc);
            return out;
        }
        default:
            throw OutOfDomain("part_row_integral: X must be a unit part");
    }
}

double SvejkGraphon::row_integral_AP(double x13) const {
    SP px = part_of(x13);
    if (px == SP::Q || px == SP::R) throw OutOfDomain("row_integral_AP: x must lie in a unit part");
    double xloc = x13 - part_offset(px);
    double total = 0.0;
    for (SP Y : kSvejkUnitParts) total += part_row_integral(px, xloc, Y, tailk_);
    return total;
}

double SvejkGraphon::mean_row_integral(SvejkPart X) const {
    if (X == SP::P) return 4.0;
    if (X == SP::Q || X == SP::R) throw OutOfDomain("mean_row_integral: X must be a unit part");
    // P[index < t(j)^p] for a uniform index in [0, t(kk)^p), i.e.
    // min(1, (t(j)/t(kk))^p), computed through exponents.
    auto tower_ratio = [](int j, int kk, int p) {
        if (kk > 5) return 0.0;
        long diff = p * (kTowerExpAt[j] - kTowerExpAt[kk]);
        return diff >= 0 ? 1.0 : pow2d(diff);
    };
    // Expected value of S23/SG2 over a uniform combined/subsegment index in
    // segment kk.
    auto ES23 = [&](int kk) {
        double s = 0.0;
        for (int j = 1; j <= 4; ++j) s += pow2d(-j) * inv_tower(j) * inv_tower(j) * tower_ratio(j, kk, 2);
        return s;
    };
    auto ESG2 = [&](int kk) {
        double s = 0.0;
        for (int j = 1; j <= 4; ++j) s += pow2d(-j) * inv_tower(j) * tower_ratio(j, kk, 1);
        return s;
    };

    double total = 0.0;
    for (int k = 1; k <= tailk_; ++k) {
        double w = pow2d(-k);
        double xbar = 1.0 - pow2d(1 - k) + pow2d(-k - 1);
        double e = 0.0;
        switch (X) {
            case SP::A:
                e = 7.0 * pow2d(-k) + xbar;
                break;
            case SP::B:
                e = pow2d(-k) + 5.0 * pow2d(-k) * inv_tower(k) + pow2_neg_tower(k - 1) + xbar;
                break;
            case SP::C: {
                e = pow2d(-k);
                for (int j = 1; j <= 5; ++j)
                    if (tower_equals(j - 1, k)) e += pow2d(-j);
                e += pow2d(-k) * (k - 1 >= 62 ? 0.0 : pow2d(-(1L << (k - 1))));
                e += pow2d(-(k + 1));
                e += 0.5;  // E column
                // mean over pos of the F-column term: sum_j 2^-(j+1) 1{t(j-1) >= k} min(1, 2^k/t(j))
                double rcf = 0.0;
                for (int j = 1; j <= 5; ++j)
                    if (tower_ge(j - 1, k))
                        rcf += pow2d(-j - 1) *
                               (k >= kTowerExpAt[j] ? 1.0 : pow2d(k - kTowerExpAt[j]));
                e += 3.0 * rcf;  // F contributes rcf, G contributes 2*rcf
                e += xbar;
                break;
            }
            case SP::D:
                e = pow2d(-k) + pow2d(-k) * inv_tower(k) + (k >= 2 ? pow2d(-(k - 1)) : 0.0) +
                    (k == 1 ? 0.5 : 0.0) + (1.0 - xbar) + ES23(k) + pow2d(-k) * 0.5 + xbar;
                break;
            case SP::E:
                e = pow2d(-k) + pow2d(-k) * inv_tower(k) + 0.5 + 0.5 + 1.5 * pow2d(-k) + xbar;
                break;
            case SP::F: {
                double rfc = k <= 4 ? double(kTowerExpAt[k]) * inv_tower(k) * 0.5 : 0.0;
                e = pow2d(-k) + pow2d(-k) * inv_tower(k) + rfc + 2.0 * ES23(k) + pow2d(-k) * 0.5 +
                    ESG2(k) + xbar;
                break;
            }
            case SP::G: {
                double rc = k <= 4 ? double(kTowerExpAt[k]) * inv_tower(k) : 0.0;
                e = pow2d(-k) + pow2d(-k) * inv_tower(k) + rc + pow2d(-k) * 0.5 + pow2d(-k) * 0.5 +
                    ESG2(k) + ES23(k) + xbar;
                break;
            }
            default:
                break;
        }
        total += w * e;
    }
    return total;
}

double SvejkGraphon::degree13(double x13) const {
    SP px = part_of(x13);
    if (px == SP::Q) return q_degree_;
    if (px == SP::R) return (28.0 / 8.0) / 13.0;
    double I = row_integral_AP(x13);
    double q_contrib = 4.0 * 0.25 * (4.0 - I);
    return (I + q_contrib + to_double(r_column(px))) / 13.0;
}

double SvejkGraphon::degree(double x, double) const {
    // The degree is constant on each part and folding preserves the part, so
    // the folded proxy is exact even inside capped slivers.
    double limit = std::nextafter(13.0, 0.0);
    return degree13(fold13(std::min(x * 13.0, limit)));
}

GraphonPtr make_svejk(int tower_cap, int tail_k) { return std::make_shared<SvejkGraphon>(tower_cap, tail_k); }

namespace {

class CFCopyGraphon : public Graphon {
public:
    CFCopyGraphon(std::shared_ptr<const SvejkGraphon> base, int n)
        : base_(std::move(base)), n_(n), lo_(1.0 - std::ldexp(1.0, -n)), width_(std::ldexp(1.0, -n - 1)) {}

    double value(double x, double y) const override {
        double cx = std::min(x, std::nextafter(1.0, 0.0));
        double cy = std::min(y, std::nextafter(1.0, 0.0));
        return base_->value13(4.0 + lo_ + cx * width_, 4.0 + lo_ + cy * width_);
    }
    GraphonKind kind() const override { return GraphonKind::Restriction; }
    int n() const { return n_; }

private:
    std::shared_ptr<const SvejkGraphon> base_;
    int n_;
    double lo_, width_;
};

}  // namespace

GraphonPtr extract_cf_copy(int n, int tower_cap, int tail_k) {
    if (n < 0) throw OutOfDomain("extract_cf_copy: n must be non-negative");
    if (n + 1 > tower_cap) throw LevelTooLarge("extract_cf_copy: n + 1 exceeds the tower cap");
    auto base = std::make_shared<SvejkGraphon>(tower_cap, tail_k);
    return std::make_shared<CFCopyGraphon>(base, n);
}

SquareIdentityVerdict square_identity_check(const StepGraphon& F, double xi, double tol) {
    std::uint64_t n = F.block_count();
    SquareIdentityVerdict v;
    v.hypothesis_holds = true;
    v.conclusion_holds = true;
    for (std::uint64_t i = 0; i < n; ++i) {
        for (std::uint64_t j = i; j < n; ++j) {
            Rational prod = 0;
            for (std::uint64_t z = 0; z < n; ++z) prod += F.cell(i, z) * F.cell(j, z) * F.block_measure(z);
            double dev = std::abs(to_double(prod) - xi);
            if (i == j) {
                v.max_conclusion_dev = std::max(v.max_conclusion_dev, dev);
                if (dev > tol) v.conclusion_holds = false;
            } else {
                v.max_hypothesis_dev = std::max(v.max_hypothesis_dev, dev);
                if (dev > tol) v.hypothesis_holds = false;
            }
        }
    }
    return v;
}

}  // namespace graphonlab
