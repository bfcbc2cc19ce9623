#ifndef RISPACES_GENERATORS_HPP
#define RISPACES_GENERATORS_HPP

#include <optional>
#include <vector>

#include "rispaces/piecewise.hpp"

namespace rispaces {

// A quasi-concave generator phi: phi(0)=0, non-decreasing, phi(t)/t
// non-increasing. Stored limits are cross-validated against the pieces.
class QuasiConcaveFn {
public:
    QuasiConcaveFn(std::vector<Piece> pieces, double phi0, double phi_inf,
                   bool require_concave_increasing = false);

    static QuasiConcaveFn sqrt();                       // phi(t) = t^(1/2)
    static QuasiConcaveFn power(const Rat& theta);      // phi(t) = t^theta, 0 < theta <= 1
    static QuasiConcaveFn bounded_ratio();              // phi(t) = t/(1+t)
    static QuasiConcaveFn min_with_one();               // phi(t) = min(t, 1)

    double eval(double t) const;
    double phi0() const { return phi0_; }
    double phi_inf() const { return phi_inf_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    bool concave_increasing() const { return concave_increasing_; }

    // a.e. derivative as a piecewise function on (0, inf)
    PiecewiseFn derivative() const;
    // integral_0^t phi' (exact closed form per piece; phi(t) - phi(0+))
    double integral_to(double t) const;

private:
    std::vector<Piece> pieces_;
    double phi0_, phi_inf_;
    bool concave_increasing_;
};

// An Orlicz function F: convex, non-decreasing, F(0) = 0, finite on [0, b_F).
class OrliczFn {
public:
    OrliczFn(std::vector<Piece> pieces, XRat b_F, double value_at_bF,
             bool vanishes_only_at_zero);

    static OrliczFn power(const Rat& p);      // F(x) = x^p, p >= 1
    static OrliczFn power_capped(const Rat& p);  // F = x^p on [0,1], inf beyond
    static OrliczFn indicator_cap();          // F = 0 on [0,1], inf beyond

    // +inf beyond b_F
    double eval(double x) const;
    const XRat& b_F() const { return bF_; }
    double value_at_bF() const { return value_at_bF_; }
    bool vanishes_only_at_zero() const { return vanishes_only_at_zero_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    // largest zero of F (0 when F vanishes only at zero)
    double largest_zero() const;
    // sup{x : F(x) <= y} for y >= 0
    double inverse_upper(double y) const;

    // sup over the grid of F(2x)/F(x); a lower bound for the true supremum
    double delta2_probe(bool at_zero, const std::vector<double>& grid) const;

private:
    std::vector<Piece> pieces_;
    XRat bF_;
    double value_at_bF_;
    bool vanishes_only_at_zero_;
};

} // namespace rispaces

#endif
