#include "rispaces/spaces.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace rispaces {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SpaceSpec SpaceSpec::lp(Domain d, Rat p) {
    if (p < Rat(1)) throw Error(ErrorCode::ParseError, "Lp needs p >= 1");
    SpaceSpec s(SpaceKind::Lp, d);
    s.p_ = std::move(p);
    return s;
}

SpaceSpec SpaceSpec::linf(Domain d) { return SpaceSpec(SpaceKind::Linf, d); }

SpaceSpec SpaceSpec::lorentz(Domain d, QuasiConcaveFn phi) {
    if (!phi.concave_increasing())
        throw Error(ErrorCode::InvalidGenerator, "Lorentz needs an increasing concave phi");
    SpaceSpec s(SpaceKind::Lorentz, d);
    s.phi_ = std::make_shared<QuasiConcaveFn>(std::move(phi));
    return s;
}

SpaceSpec SpaceSpec::marcinkiewicz(Domain d, QuasiConcaveFn phi) {
    SpaceSpec s(SpaceKind::Marcinkiewicz, d);
    s.phi_ = std::make_shared<QuasiConcaveFn>(std::move(phi));
    return s;
}

SpaceSpec SpaceSpec::calderon_lozanovskii(SpaceSpec base, OrliczFn F) {
    SpaceSpec s(SpaceKind::CalderonLozanovskii, base.domain());
    s.base_ = std::make_shared<SpaceSpec>(std::move(base));
    s.F_ = std::make_shared<OrliczFn>(std::move(F));
    return s;
}

SpaceSpec SpaceSpec::sum_lp_linf(Domain d, Rat p) {
    if (p < Rat(1)) throw Error(ErrorCode::ParseError, "sum space needs p >= 1");
    SpaceSpec s(SpaceKind::SumLpLinf, d);
    s.p_ = std::move(p);
    return s;
}

SpaceSpec SpaceSpec::intersection(SpaceSpec left, SpaceSpec right) {
    require_same_domain(left.domain(), right.domain());
    SpaceSpec s(SpaceKind::Intersection, left.domain());
    s.base_ = std::make_shared<SpaceSpec>(std::move(left));
    s.right_ = std::make_shared<SpaceSpec>(std::move(right));
    return s;
}

SpaceSpec SpaceSpec::cesaro(SpaceSpec base) {
    SpaceSpec s(SpaceKind::Cesaro, base.domain());
    s.base_ = std::make_shared<SpaceSpec>(std::move(base));
    return s;
}

std::string SpaceSpec::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case SpaceKind::Lp:
            os << "L_" << p_.str();
            break;
        case SpaceKind::Linf:
            os << "L_inf";
            break;
        case SpaceKind::Lorentz:
            os << "Lorentz";
            break;
        case SpaceKind::Marcinkiewicz:
            os << "Marcinkiewicz";
            break;
        case SpaceKind::CalderonLozanovskii:
            os << "CL(" << base_->describe() << ")";
            break;
        case SpaceKind::SumLpLinf:
            os << "L_" << p_.str() << "+L_inf";
            break;
        case SpaceKind::Intersection:
            os << base_->describe() << " ^ " << right_->describe();
            break;
        case SpaceKind::Cesaro:
            os << "C(" << base_->describe() << ")";
            break;
    }
    os << " on " << domain_name(domain_);
    return os.str();
}

Domain domain_of(const AnyFn& f) {
    if (std::holds_alternative<PiecewiseFn>(f)) return std::get<PiecewiseFn>(f).domain();
    return Domain::Naturals;
}

AnyFn abs_fn(const AnyFn& f) {
    if (std::holds_alternative<PiecewiseFn>(f)) return std::get<PiecewiseFn>(f).abs();
    return std::get<SeqFn>(f).abs();
}

AnyFn window_fn(const AnyFn& f, const Rat& a, const XRat& b) {
    if (std::holds_alternative<PiecewiseFn>(f)) return std::get<PiecewiseFn>(f).window(a, b);
    return std::get<SeqFn>(f).window(a, b);
}

AnyFn complement_window_fn(const AnyFn& f, const Rat& a, const XRat& b) {
    if (std::holds_alternative<PiecewiseFn>(f))
        return std::get<PiecewiseFn>(f).complement_window(a, b);
    return std::get<SeqFn>(f).complement_window(a, b);
}

std::pair<double, double> tail_head_fn(const AnyFn& f) {
    if (std::holds_alternative<PiecewiseFn>(f)) return tail_head(std::get<PiecewiseFn>(f));
    return tail_head(std::get<SeqFn>(f));
}

// ---------------------------------------------------------------------------
// fundamental-function limits (closed-form rules per kind)

double fundamental_at_zero(const SpaceSpec& X) {
    switch (X.kind()) {
        case SpaceKind::Lp:
            return 0;
        case SpaceKind::Linf:
            return 1;
        case SpaceKind::Lorentz:
        case SpaceKind::Marcinkiewicz:
            return X.phi().phi0();
        case SpaceKind::SumLpLinf:
            return 0;
        case SpaceKind::CalderonLozanovskii: {
            double pb = fundamental_at_zero(X.base());
            double y = pb == 0 ? kInf : 1.0 / pb;
            double inv = X.F().inverse_upper(y);
            return inv == 0 ? kInf : (std::isinf(inv) ? 0.0 : 1.0 / inv);
        }
        case SpaceKind::Intersection:
            return std::max(fundamental_at_zero(X.base()), fundamental_at_zero(X.right()));
        case SpaceKind::Cesaro: {
            // no closed rule; numeric limit over shrinking indicators
            double prev = kInf;
            for (double t : {1e-3, 1e-5, 1e-7}) {
                double v = fundamental(X, t, 1e-6).value;
                if (!(v <= prev * 1.0001)) break;
                prev = v;
            }
            return prev < 1e-4 ? 0.0 : prev;
        }
    }
    return 0;
}

double fundamental_at_inf(const SpaceSpec& X) {
    if (X.domain() == Domain::UnitInterval) {
        // the fundamental function lives on (0,1); report its value at 1
        return fundamental(X, 1.0, 1e-9).value;
    }
    switch (X.kind()) {
        case SpaceKind::Lp:
            return kInf;
        case SpaceKind::Linf:
            return 1;
        case SpaceKind::Lorentz:
        case SpaceKind::Marcinkiewicz:
            return X.phi().phi_inf();
        case SpaceKind::SumLpLinf:
            return 1;
        case SpaceKind::CalderonLozanovskii: {
            double pb = fundamental_at_inf(X.base());
            double y = std::isinf(pb) ? 0.0 : 1.0 / pb;
            double inv = X.F().inverse_upper(y);
            return inv == 0 ? kInf : (std::isinf(inv) ? 0.0 : 1.0 / inv);
        }
        case SpaceKind::Intersection:
            return std::max(fundamental_at_inf(X.base()), fundamental_at_inf(X.right()));
        case SpaceKind::Cesaro: {
            double prev = 0;
            for (double t : {1e3, 1e6, 1e9}) {
                double v = fundamental(X, t, 1e-6).value;
                if (std::isinf(v)) return kInf;
                prev = v;
            }
            return prev;
        }
    }
    return kInf;
}

// ---------------------------------------------------------------------------
// classification of the order-continuous ideal

const char* oc_ideal_class_name(OcIdealClass c) {
    switch (c) {
        case OcIdealClass::Trivial: return "trivial";
        case OcIdealClass::NonTrivial: return "nontrivial";
        case OcIdealClass::All: return "all";
    }
    return "?";
}

OcIdealClass oc_ideal_class(const SpaceSpec& X) {
    const bool seq = X.domain() == Domain::Naturals;
    switch (X.kind()) {
        case SpaceKind::Lp:
            return OcIdealClass::All;
        case SpaceKind::Linf:
            return seq ? OcIdealClass::NonTrivial : OcIdealClass::Trivial;
        case SpaceKind::Lorentz: {
            const auto& phi = X.phi();
            if (seq)
                return std::isinf(phi.phi_inf()) ? OcIdealClass::All : OcIdealClass::NonTrivial;
            if (phi.phi0() > 0) return OcIdealClass::Trivial;
            if (X.domain() == Domain::UnitInterval) return OcIdealClass::All;
            return std::isinf(phi.phi_inf()) ? OcIdealClass::All : OcIdealClass::NonTrivial;
        }
        case SpaceKind::Marcinkiewicz: {
            const auto& phi = X.phi();
            if (seq) {
                // slope of phi at infinity: positive slope collapses the
                // space onto l_1, which is order continuous
                double slope = phi.eval(1e9) / 1e9;
                return slope > 1e-12 ? OcIdealClass::All : OcIdealClass::NonTrivial;
            }
            if (phi.phi0() > 0) return OcIdealClass::Trivial;
            return OcIdealClass::NonTrivial;
        }
        case SpaceKind::SumLpLinf:
            return OcIdealClass::NonTrivial;
        case SpaceKind::CalderonLozanovskii: {
            const auto& F = X.F();
            bool is_power = F.b_F().is_inf() && F.pieces().size() == 1 &&
                            F.pieces().front().kind == PieceKind::Power &&
                            F.pieces().front().p2.is_zero();
            if (is_power) return oc_ideal_class(X.base());
            if (!F.b_F().is_inf()) {
                if (seq)
                    throw Error(ErrorCode::Unclassifiable,
                                "sequence Calderon-Lozanovskii with finite b_F");
                return OcIdealClass::Trivial;
            }
            throw Error(ErrorCode::Unclassifiable,
                        "Calderon-Lozanovskii ideal needs a Delta_2-type decision");
        }
        case SpaceKind::Intersection: {
            if (!seq && fundamental_at_zero(X) > 0) return OcIdealClass::Trivial;
            OcIdealClass a = oc_ideal_class(X.base());
            OcIdealClass b = oc_ideal_class(X.right());
            if (a == OcIdealClass::All && b == OcIdealClass::All) return OcIdealClass::All;
            return OcIdealClass::NonTrivial;
        }
        case SpaceKind::Cesaro: {
            OcIdealClass b = oc_ideal_class(X.base());
            return b == OcIdealClass::All ? OcIdealClass::All : OcIdealClass::NonTrivial;
        }
    }
    throw Error(ErrorCode::Unclassifiable, "unknown kind");
}

EvalResult embed_norm_to_linf(const SpaceSpec& X) {
    if (X.domain() == Domain::Naturals) {
        EvalResult e1 = fundamental(X, 1.0);
        if (e1.value <= 0) throw Error(ErrorCode::NotEmbedded, "first unit vector has norm 0");
        return {1.0 / e1.value, e1.exact, e1.err_bound / (e1.value * e1.value), e1.depth};
    }
    double p0 = fundamental_at_zero(X);
    if (!(p0 > 0))
        throw Error(ErrorCode::NotEmbedded, "phi_X(0+) = 0: no embedding into L_inf");
    if (std::isinf(p0)) return EvalResult::make_exact(0.0);
    return EvalResult::make_exact(1.0 / p0);
}

bool rule_d_infty(const SpaceSpec& X) {
    switch (X.kind()) {
        case SpaceKind::SumLpLinf:
            return true;
        case SpaceKind::Lp:
            return true;  // everything is order continuous
        case SpaceKind::Lorentz:
            return X.phi().phi0() == 0 && !std::isinf(X.phi().phi_inf());
        default:
            return false;
    }
}

} // namespace rispaces
