#pragma once

#include <array>
#include <memory>

#include "graphonlab/coords.hpp"
#include "graphonlab/graphon.hpp"

namespace graphonlab {

enum class SvejkPart { A, B, C, D, E, F, G, P, Q, R };

constexpr std::array<SvejkPart, 8> kSvejkUnitParts = {SvejkPart::A, SvejkPart::B, SvejkPart::C, SvejkPart::D,
                                                      SvejkPart::E, SvejkPart::F, SvejkPart::G, SvejkPart::P};

char svejk_part_letter(SvejkPart p);
SvejkPart svejk_part_from_letter(char c);

// The ten-part graphon W_S, defined through W_13 on [0,13)^2 with
// W_S(x,y) = W_13(13x, 13y).  Parts sit at integer offsets
// A=0, ..., G=6, P=7, Q=[8,12), R=12.
class SvejkGraphon : public Graphon, public std::enable_shared_from_this<SvejkGraphon> {
public:
    explicit SvejkGraphon(int tower_cap = kDefaultTowerCap, int tail_k = kDefaultTailK);

    double value(double x, double y) const override;
    GraphonKind kind() const override { return GraphonKind::Svejk; }
    double degree(double x, double tol) const override;

    // value() raises LevelTooLarge inside the deep-segment slivers of the
    // unit parts; the sampling view folds such coordinates onto the capped
    // segment (same in-segment position) so Monte Carlo never aborts.  The
    // folded region has measure 2^(1-cap)/13 per affected part.
    double value_sample(double x, double y) const override;
    double fold13(double x13) const;

    // --- W_13 surface (coordinates in [0,13)) ---
    static SvejkPart part_of(double x13);
    static double part_offset(SvejkPart p);
    double value13(double x13, double y13) const;
    // Normalized degree (1/13) * int_0^13 W_13(x, y) dy.
    double degree13(double x13) const;

    // Row integral I(x) over A u ... u G u P (the Q-column equalizer input).
    double row_integral_AP(double x13) const;

    // Contribution of part Y to the row integral at a point of part X with
    // local coordinate xloc, restricted to Y's segments 1..jmax (P has no
    // segmentation and contributes fully whenever jmax >= 1).
    double part_row_integral(SvejkPart X, double xloc, SvejkPart Y, int jmax) const;

    // Exact mean of I over part X (analytic; used for the Q degree).
    double mean_row_integral(SvejkPart X) const;
    double q_degree() const { return q_degree_; }

    static Rational r_column(SvejkPart p);

    int tower_cap() const { return cap_; }
    int tail_k() const { return tailk_; }

private:
    int cap_;
    int tailk_;
    double q_degree_;
};

GraphonPtr make_svejk(int tower_cap = kDefaultTowerCap, int tail_k = kDefaultTailK);

// Subgraphon of W_S on the (n+1)-th segment of part E, rescaled to [0,1]^2.
// Equals W_CF^{t(n)} pointwise.
GraphonPtr extract_cf_copy(int n, int tower_cap = kDefaultTowerCap, int tail_k = kDefaultTailK);

struct SquareIdentityVerdict {
    bool hypothesis_holds = false;  // off-diagonal block products all equal xi
    bool conclusion_holds = false;  // diagonal block products all equal xi
    double max_hypothesis_dev = 0.0;
    double max_conclusion_dev = 0.0;
};

SquareIdentityVerdict square_identity_check(const StepGraphon& F, double xi, double tol);

}  // namespace graphonlab
