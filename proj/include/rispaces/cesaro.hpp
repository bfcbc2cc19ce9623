#ifndef RISPACES_CESARO_HPP
#define RISPACES_CESARO_HPP

#include "rispaces/spaces.hpp"

namespace rispaces {

// Continuous averaging operator image C(|f|)(x) = (1/x) int_0^x |f|.
// Exact piecewise closed form: Const pieces map to Hyp, Power and Hyp
// sources to the internal CesPow/CesLog kinds.
PiecewiseFn cesaro_apply(const PiecewiseFn& f);

// Discrete averages C(|x|)_n = (1/n) sum_{k<=n} |x_k|; the tail rule is
// closed-form (Hyp tails pick up harmonic-number terms).
SeqFn cesaro_apply(const SeqFn& x);

AnyFn cesaro_apply(const AnyFn& f);

// ||f||_CX = || C(|f|) ||_X
EvalResult cx_norm(const AnyFn& f, const SpaceSpec& base, double tol = 1e-9);

// lim_{x->0+} C(|f|)(x) (first Const piece value; closed-form limit otherwise)
double c_at_zero(const PiecewiseFn& f);

// empirical lower bound for ||C||_{X->X} over a family; never a proof
EvalResult bound_probe(const SpaceSpec& base, const std::vector<AnyFn>& family,
                       double tol = 1e-9);

} // namespace rispaces

#endif
