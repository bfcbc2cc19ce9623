#ifndef RISPACES_REARRANGE_HPP
#define RISPACES_REARRANGE_HPP

#include <vector>

#include "rispaces/piecewise.hpp"

namespace rispaces {

// Distribution function d_f(lambda) = mu{ |f| > lambda }, non-increasing and
// right-continuous. For step functions the staircase is exact; otherwise the
// curve evaluates in closed form piece by piece.
class DistributionCurve {
public:
    struct Step {
        Rat lambda;    // value on [lambda, next lambda)
        XRat measure;
    };

    Domain domain() const { return domain_; }
    bool exact() const { return exact_; }
    bool integer_valued() const { return integer_; }
    const std::vector<Step>& steps() const { return steps_; }

    double at(double lambda) const;
    XRat at_exact(const Rat& lambda) const;  // requires exact()

    // ess sup |f| (the last lambda with d > 0); +inf when unbounded
    double sup_level() const;
    // measure of {|f| > 0}
    XRat total() const;

private:
    friend DistributionCurve distribution(const PiecewiseFn&);
    friend DistributionCurve distribution(const SeqFn&);
    Domain domain_ = Domain::HalfLine;
    bool exact_ = false;
    bool integer_ = false;
    std::vector<Step> steps_;     // exact staircase (always present for exact)
    std::vector<Piece> pieces_;   // |f| pieces for the analytic evaluation
    std::vector<long> seq_head_;  // unused marker for sequences
    SeqFn seq_;
    bool is_seq_ = false;
};

DistributionCurve distribution(const PiecewiseFn& f);
DistributionCurve distribution(const SeqFn& x);

// Decreasing rearrangement result. `exact` marks the closed-form layer; the
// numeric layer carries certified step envelopes lower <= f* <= upper with
// sup gap <= the requested tolerance away from the eps cut.
struct RearrangedFn {
    PiecewiseFn fstar;
    bool exact = true;
    PiecewiseFn lower, upper;
    double sup_gap = 0;
    double eps_cut = 0;  // > 0 when f*(0+) = inf; representation starts there
};

struct RearrangedSeq {
    SeqFn xstar;
    bool exact = true;
};

RearrangedFn rearrange(const PiecewiseFn& f, double tol = 1e-9, bool require_exact = false);
RearrangedSeq rearrange(const SeqFn& x);

// (f*(inf), f*(0+)); the second may be +inf.
std::pair<double, double> tail_head(const PiecewiseFn& f);
std::pair<double, double> tail_head(const SeqFn& x);

} // namespace rispaces

#endif
