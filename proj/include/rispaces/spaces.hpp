#ifndef RISPACES_SPACES_HPP
#define RISPACES_SPACES_HPP

#include <memory>
#include <string>
#include <variant>

#include "rispaces/eval_result.hpp"
#include "rispaces/generators.hpp"
#include "rispaces/rearrange.hpp"

namespace rispaces {

enum class SpaceKind {
    Lp,
    Linf,
    Lorentz,
    Marcinkiewicz,
    CalderonLozanovskii,
    SumLpLinf,
    Intersection,
    Cesaro,
};

// Tagged description of a concrete rearrangement-invariant space (plus the
// Cesaro construction over one). Immutable; cheap to copy.
class SpaceSpec {
public:
    static SpaceSpec lp(Domain d, Rat p);
    static SpaceSpec linf(Domain d);
    static SpaceSpec lorentz(Domain d, QuasiConcaveFn phi);
    static SpaceSpec marcinkiewicz(Domain d, QuasiConcaveFn phi);
    static SpaceSpec calderon_lozanovskii(SpaceSpec base, OrliczFn F);
    static SpaceSpec sum_lp_linf(Domain d, Rat p);
    static SpaceSpec intersection(SpaceSpec left, SpaceSpec right);
    static SpaceSpec cesaro(SpaceSpec base);

    SpaceKind kind() const { return kind_; }
    Domain domain() const { return domain_; }
    const Rat& p() const { return p_; }
    const QuasiConcaveFn& phi() const { return *phi_; }
    const OrliczFn& F() const { return *F_; }
    const SpaceSpec& base() const { return *base_; }
    const SpaceSpec& right() const { return *right_; }

    std::string describe() const;

private:
    SpaceSpec(SpaceKind k, Domain d) : kind_(k), domain_(d) {}
    SpaceKind kind_;
    Domain domain_;
    Rat p_;
    std::shared_ptr<const QuasiConcaveFn> phi_;
    std::shared_ptr<const OrliczFn> F_;
    std::shared_ptr<const SpaceSpec> base_, right_;
};

// A function on any of the three domains.
using AnyFn = std::variant<PiecewiseFn, SeqFn>;

Domain domain_of(const AnyFn& f);
AnyFn abs_fn(const AnyFn& f);
AnyFn window_fn(const AnyFn& f, const Rat& a, const XRat& b);
AnyFn complement_window_fn(const AnyFn& f, const Rat& a, const XRat& b);
std::pair<double, double> tail_head_fn(const AnyFn& f);

// The norm engine. Divergence (+inf) is a value, not an error.
EvalResult norm(const AnyFn& f, const SpaceSpec& X, double tol = 1e-9);
EvalResult norm(const PiecewiseFn& f, const SpaceSpec& X, double tol = 1e-9);
EvalResult norm(const SeqFn& x, const SpaceSpec& X, double tol = 1e-9);

// phi_X(t) = norm of chi_(0,t) (or of e_1 + ... + e_n on N).
EvalResult fundamental(const SpaceSpec& X, double t, double tol = 1e-9);
// Closed-form limits of the fundamental function per space kind.
double fundamental_at_zero(const SpaceSpec& X);
double fundamental_at_inf(const SpaceSpec& X);

enum class OcIdealClass { Trivial, NonTrivial, All };
const char* oc_ideal_class_name(OcIdealClass c);
// Rule-table classification of the order-continuous ideal X_a; throws
// Unclassifiable for kinds the table does not cover.
OcIdealClass oc_ideal_class(const SpaceSpec& X);

// ||id : X -> L_inf|| = 1 / phi_X(0+); NotEmbedded when phi_X(0+) = 0.
EvalResult embed_norm_to_linf(const SpaceSpec& X);

// Rule-table attribute: every restriction to a finite-measure set is order
// continuous. Never inferred numerically.
bool rule_d_infty(const SpaceSpec& X);

// The equivalent expression (integral_0^1 f*^p)^(1/p) for L_p + L_inf; the
// norm itself is the exact inf-convolution.
EvalResult sum_lp_linf_equivalent_expression(const AnyFn& f, const Rat& p);

// Luxemburg modular ||F(|f|/lambda)||_base, used by the bisection and the
// modular-domination check.
EvalResult luxemburg_modular(const AnyFn& f, const SpaceSpec& base, const OrliczFn& F,
                             double lambda, double tol = 1e-9);

} // namespace rispaces

#endif
