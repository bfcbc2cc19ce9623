#ifndef RISPACES_EVAL_RESULT_HPP
#define RISPACES_EVAL_RESULT_HPP

#include <cmath>
#include <limits>

namespace rispaces {

// A computed scalar with provenance. Exact results come from the closed-form
// layer (err_bound 0); numeric ones carry a two-sided bracket half-width and
// the refinement depth that produced it.
struct EvalResult {
    double value = 0.0;
    bool exact = true;
    double err_bound = 0.0;
    long depth = 0;

    bool is_inf() const { return std::isinf(value); }

    static EvalResult make_exact(double v) { return {v, true, 0.0, 0}; }
    static EvalResult make_numeric(double v, double err, long depth = 0) {
        return {v, false, err, depth};
    }
    static EvalResult infinite() {
        return {std::numeric_limits<double>::infinity(), true, 0.0, 0};
    }

    friend EvalResult operator+(const EvalResult& a, const EvalResult& b) {
        return {a.value + b.value, a.exact && b.exact, a.err_bound + b.err_bound,
                a.depth > b.depth ? a.depth : b.depth};
    }
};

} // namespace rispaces

#endif
