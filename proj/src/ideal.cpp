#include "rispaces/ideal.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace rispaces {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void CheckReport::add_clause(const std::string& desc, EvalResult computed, double target,
                             double tol) {
    bool pass = std::isfinite(computed.value) &&
                std::fabs(computed.value - target) <= tol + computed.err_bound;
    clauses.push_back({desc, computed, target, tol, pass});
    overall = overall && pass;
}

void CheckReport::add_bool_clause(const std::string& desc, bool ok) {
    clauses.push_back({desc, EvalResult::make_exact(ok ? 1 : 0), 1, 0, ok});
    overall = overall && ok;
}

const char* dist_path_name(DistPath p) {
    switch (p) {
        case DistPath::LimitFormula: return "limit-formula";
        case DistPath::DeJongeClosedForm: return "deJonge-closed-form";
        case DistPath::TrivialIdeal: return "trivial-ideal";
    }
    return "?";
}

namespace {

// rearrangement of |f| as an AnyFn (the distance depends on f only through f*)
AnyFn rearranged(const AnyFn& f, double tol, double& rearr_err) {
    rearr_err = 0;
    if (std::holds_alternative<PiecewiseFn>(f)) {
        auto r = rearrange(std::get<PiecewiseFn>(f), tol);
        if (!r.exact) rearr_err = r.sup_gap;
        return AnyFn(r.fstar);
    }
    auto r = rearrange(std::get<SeqFn>(f));
    return AnyFn(r.xstar);
}

double windowed_norm(const AnyFn& fstar, const SpaceSpec& X, long n, double tol,
                     double& err) {
    AnyFn w = window_fn(fstar, Rat(1, static_cast<int>(std::min<long>(n, 1 << 30))),
                        XRat(Rat(static_cast<int>(std::min<long>(n, 1 << 30)))));
    EvalResult r = norm(w, X, tol);
    err = r.err_bound;
    return r.value;
}

} // namespace

DistResult dist_oc(const AnyFn& f, const SpaceSpec& X, double tol) {
    require_same_domain(domain_of(f), X.domain());
    OcIdealClass cls = oc_ideal_class(X);
    DistResult out;
    if (cls == OcIdealClass::Trivial) {
        EvalResult n = norm(f, X, tol);
        out.value = n.value;
        out.err_bound = n.err_bound;
        out.path = DistPath::TrivialIdeal;
        return out;
    }

    double rearr_err = 0;
    AnyFn fstar = rearranged(f, std::min(tol, 1e-9), rearr_err);

    // de Jonge closed form where the rule table grants (D_inf) and L_inf
    // embeds (phi_X(inf) finite)
    if (X.domain() == Domain::HalfLine && rule_d_infty(X)) {
        double phi_inf = fundamental_at_inf(X);
        if (std::isfinite(phi_inf)) {
            double finf = tail_head_fn(f).first;
            out.value = finf * phi_inf;
            out.err_bound = rearr_err * phi_inf;
            out.path = DistPath::DeJongeClosedForm;
            // cross-check against three limit-formula samples
            for (long n : {4L, 64L, 1024L}) {
                double werr = 0;
                double s = windowed_norm(fstar, X, n, tol, werr);
                out.partials.push_back({n, s});
                if (s + werr + 1e-9 < out.value - out.err_bound)
                    throw Error(ErrorCode::NoConvergence,
                                "limit-formula sample fell below the closed form");
            }
            return out;
        }
    }

    // limit formula on the doubling schedule; the sequence is non-increasing
    out.path = DistPath::LimitFormula;
    double prev = kInf, prev_delta = kInf;
    int stable = 0;
    long n = 1;
    std::vector<double> s_vals;
    for (int k = 0; k <= 40; ++k, n <<= 1) {
        double werr = 0;
        double s = windowed_norm(fstar, X, n, tol, werr);
        out.partials.push_back({n, s});
        s_vals.push_back(s);
        if (std::isinf(s)) {
            // windowed norms infinite: f itself is outside the space
            out.value = kInf;
            return out;
        }
        if (k > 0) {
            double delta = prev - s;
            if (std::fabs(delta) <= tol * std::max(1.0, s) + werr) {
                if (++stable >= 2) {
                    // Aitken extrapolation when the decay looks geometric
                    double value = s, err = std::fabs(delta) + werr + rearr_err;
                    std::size_t m = s_vals.size();
                    if (m >= 3) {
                        double d1 = s_vals[m - 2] - s_vals[m - 1];
                        double d2 = s_vals[m - 3] - s_vals[m - 2];
                        double denom = d2 - d1;
                        if (std::fabs(denom) > 1e-15 && d1 >= 0 && d2 >= d1) {
                            double ait = s_vals[m - 1] - d1 * d1 / denom;
                            if (ait >= -1e-12 && ait <= s + 1e-12) {
                                err = std::max(std::fabs(s - ait), werr) + rearr_err;
                                value = ait;
                            }
                        }
                    }
                    out.value = std::max(0.0, value);
                    out.err_bound = err;
                    return out;
                }
            } else {
                stable = 0;
            }
            prev_delta = delta;
        }
        prev = s;
    }
    (void)prev_delta;
    throw Error(ErrorCode::NoConvergence, "distance schedule hit the 2^40 cap");
}

bool is_order_continuous(const AnyFn& f, const SpaceSpec& X, double tol) {
    return dist_oc(f, X, tol).value <= tol;
}

CheckReport hudzik_check(const AnyFn& f, const SpaceSpec& X, double tol) {
    CheckReport rep;
    rep.id = "hudzik";
    OcIdealClass cls = oc_ideal_class(X);
    rep.flags.push_back("assumed: supp(X_a) = supp(X) (not verified numerically)");
    if (cls == OcIdealClass::Trivial)
        rep.flags.push_back(
            "warning: X_a is trivial, the distance equals the norm and the criterion can be "
            "vacuous");
    EvalResult n = norm(f, X, tol);
    rep.add_clause("||f||_X = 1", n, 1.0, tol);
    DistResult d = dist_oc(f, X, tol);
    rep.add_clause("dist(f, X_a) = 1", EvalResult::make_numeric(d.value, d.err_bound), 1.0,
                   tol);
    rep.verdict = rep.overall
                      ? "numerically consistent with a lattice isometric copy of l_inf"
                      : "criterion not met";
    return rep;
}

BoundRule cesaro_bound_rule(const SpaceSpec& X) {
    switch (X.kind()) {
        case SpaceKind::Lp:
            return X.p() > Rat(1) ? BoundRule::Bounded : BoundRule::Unknown;
        case SpaceKind::Linf:
            return BoundRule::Bounded;
        case SpaceKind::SumLpLinf:
            return X.p() > Rat(1) ? BoundRule::Bounded : BoundRule::Unknown;
        case SpaceKind::Lorentz:
        case SpaceKind::Marcinkiewicz: {
            const auto& ps = X.phi().pieces();
            if (ps.size() == 1 && ps.front().kind == PieceKind::Power &&
                ps.front().p2.is_zero()) {
                const Rat& th = ps.front().p1;
                if (th.sign() > 0 && th < Rat(1)) return BoundRule::Bounded;
            }
            return BoundRule::Unknown;
        }
        default:
            return BoundRule::Unknown;
    }
}

CheckReport cesaro_copy_check(const AnyFn& f, const Rat& a, const XRat& b, const SpaceSpec& X,
                              double tol, bool require_bound_rule) {
    if (!(XRat(a) < b) && !(XRat(a) == b))
        throw Error(ErrorCode::InvalidFunction, "need a <= b");
    OcIdealClass cls = oc_ideal_class(X);
    if (cls != OcIdealClass::NonTrivial)
        throw Error(ErrorCode::Unclassifiable,
                    std::string("precondition: X_a must be nontrivial and proper, got ") +
                        oc_ideal_class_name(cls));
    CheckReport rep = hudzik_check(f, X, tol);
    rep.id = "cesaro-copy";

    BoundRule br = cesaro_bound_rule(X);
    if (require_bound_rule && br != BoundRule::Bounded)
        throw Error(ErrorCode::UnsupportedForm,
                    "--require-bound-rule: no boundedness rule for this space");
    try {
        std::vector<AnyFn> family;
        if (X.domain() == Domain::Naturals) {
            family.push_back(AnyFn(SeqFn::unit(1)));
        } else {
            family.push_back(AnyFn(PiecewiseFn::indicator(X.domain(), Rat(0), XRat(Rat(1)))));
        }
        EvalResult probe = bound_probe(X, family, tol);
        std::ostringstream os;
        os << "advisory: ||C||_{X->X} >= " << probe.value << " (lower bound, not a proof)";
        rep.flags.push_back(os.str());
    } catch (const Error&) {
        rep.flags.push_back("advisory: bound probe unavailable");
    }
    if (br == BoundRule::Bounded)
        rep.flags.push_back("rule table: the averaging operator is bounded on X");

    double rearr_err = 0;
    AnyFn fstar = rearranged(f, std::min(tol, 1e-9), rearr_err);
    AnyFn w = window_fn(fstar, a, b);
    EvalResult cx = cx_norm(w, X, tol);
    cx.err_bound += rearr_err;
    rep.add_clause("|| f* chi_((0,a) u (b,inf)) ||_CX = 1", cx, 1.0, tol);
    rep.verdict = rep.overall
                      ? "numerically consistent with a lattice isometric copy of l_inf in CX"
                      : "criterion not met";
    return rep;
}

CheckReport trivial_ideal_copy_check(const PiecewiseFn& f, const SpaceSpec& X, double tol) {
    OcIdealClass cls = oc_ideal_class(X);
    if (cls != OcIdealClass::Trivial)
        throw Error(ErrorCode::NotTrivialIdeal, "X_a must be trivial for this route");
    if (!f.is_nonneg())
        throw Error(ErrorCode::InvalidFunction, "witness must be positive on its support");
    CheckReport rep;
    rep.id = "trivial-ideal-copy";
    double c0 = c_at_zero(f);
    rep.add_clause("C(f)(0+) = 1", EvalResult::make_exact(c0), 1.0, tol);
    EvalResult embed = embed_norm_to_linf(X);
    EvalResult cx = cx_norm(AnyFn(f), X, tol);
    EvalResult diff = EvalResult::make_numeric(cx.value - embed.value,
                                               cx.err_bound + embed.err_bound);
    if (cx.exact && embed.exact) diff = EvalResult::make_exact(cx.value - embed.value);
    rep.add_clause("||f||_CX - ||id: X -> L_inf|| = 0", diff, 0.0, tol);
    rep.verdict = rep.overall
                      ? "numerically consistent with a lattice isometric copy of l_inf in CX"
                      : "criterion not met";
    return rep;
}

CheckReport am_property_probe(const PiecewiseFn& f, const PiecewiseFn& g, const SpaceSpec& X,
                              double tol) {
    if (!f.is_nonneg() || !g.is_nonneg())
        throw Error(ErrorCode::InvalidFunction, "probe needs nonnegative inputs");
    CheckReport rep;
    rep.id = "am-property";
    rep.flags.push_back("single-pair probe of the semi-M property, not a space-level verdict");
    PiecewiseFn sup_fg = PiecewiseFn::pointwise_max(f, g);
    DistResult lhs = dist_oc(AnyFn(sup_fg), X, tol);
    DistResult df = dist_oc(AnyFn(f), X, tol);
    DistResult dg = dist_oc(AnyFn(g), X, tol);
    double rhs = std::max(df.value, dg.value);
    double err = lhs.err_bound + df.err_bound + dg.err_bound;
    rep.add_clause("dist(sup{f,g}, X_a) - max(dist f, dist g) = 0",
                   EvalResult::make_numeric(lhs.value - rhs, err), 0.0, 2 * tol);
    rep.verdict = rep.overall ? "pair satisfies the AM identity" : "pair violates the AM identity";
    return rep;
}

CheckReport modular_domination_check(const OrliczFn& F, const SpaceSpec& baseX, const AnyFn& f,
                                     double M, double tol) {
    CheckReport rep;
    rep.id = "modular-domination";
    rep.flags.push_back("single-instance check, not a proof of the modular inequality");
    EvalResult rhs_raw = luxemburg_modular(f, baseX, F, 1.0, tol);
    if (rhs_raw.is_inf())
        throw Error(ErrorCode::InfiniteModular,
                    "F(|f|) has infinite base norm: f is outside the modular class");
    AnyFn cf = cesaro_apply(f);
    EvalResult lhs = luxemburg_modular(cf, baseX, F, 1.0, tol);
    double rhs = M * rhs_raw.value;
    if (lhs.is_inf()) {
        rep.flags.push_back("InfiniteModular: ||F(C|f|)||_X = inf");
        rep.clauses.push_back({"||F(C|f|)||_X <= M ||F(|f|)||_X", lhs, rhs, tol, false});
        rep.overall = false;
    } else {
        bool pass = lhs.value - lhs.err_bound <= rhs + M * rhs_raw.err_bound + tol;
        rep.clauses.push_back({"||F(C|f|)||_X <= M ||F(|f|)||_X", lhs, rhs, tol, pass});
        rep.overall = pass;
    }
    rep.verdict = rep.overall ? "modular domination holds on this instance"
                              : "modular domination fails on this instance";
    return rep;
}

bool discrete_oc_membership(const SeqFn& x, const SpaceSpec& baseX, double tol) {
    if (baseX.domain() != Domain::Naturals)
        throw Error(ErrorCode::DomainMismatch, "discrete membership needs a sequence base");
    SeqFn cd = cesaro_apply(x);
    OcIdealClass cls = oc_ideal_class(baseX);
    if (cls == OcIdealClass::All) {
        // X_a = X: membership in CX is just finiteness of the norm
        return !norm(AnyFn(cd), baseX, tol).is_inf();
    }
    EvalResult n = norm(AnyFn(cd), baseX, tol);
    if (n.is_inf()) return false;
    return is_order_continuous(AnyFn(cd), baseX, tol);
}

} // namespace rispaces
